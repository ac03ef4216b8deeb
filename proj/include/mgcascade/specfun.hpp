#pragma once

#include <complex>
#include <vector>

namespace mgc::specfun {

// Principal branch of ln Gamma(z), continuous on the plane cut along
// the negative real axis. Throws PoleError within 1e-14 of a
// non-positive integer.
std::complex<double> log_gamma(std::complex<double> z);

// ln Gamma(x) for x > 0.
double log_gamma_pos(double x);

// ln|Gamma(x)| with the sign of Gamma(x) in *sign; any real x away
// from non-positive integers. Returns -inf with sign 0 at poles of
// 1/Gamma (i.e. never; poles of Gamma throw nothing here -- callers
// that need 1/Gamma(nonpositive int)=0 check the sign).
double log_gamma_signed(double x, int* sign);

// Regularized lower incomplete gamma P(a,x) = gamma(a,x)/Gamma(a).
double regularized_lower_gamma(double a, double x);

// Modified Bessel function of the first kind, real order nu >= -0.5,
// x >= 0. Ascending series; asymptotic expansion for large x.
double bessel_i(double nu, double x);

// ln I_nu(x), overflow-safe for large x (nu >= -0.5, x > 0).
double log_bessel_i(double nu, double x);

// Modified Bessel function of the second kind, any real order, x > 0.
double bessel_k(double nu, double x);

// Gaussian tail probability Q(x) = 0.5 erfc(x/sqrt(2)).
double gaussian_q(double x);

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss-Laguerre rule of the given order: integrates f against
// e^{-z} on (0, inf) exactly for polynomials of degree 2*order-1.
QuadratureRule gauss_laguerre(int order);

// Gauss-Legendre rule of the given order on [-1, 1].
QuadratureRule gauss_legendre(int order);

}  // namespace mgc::specfun
