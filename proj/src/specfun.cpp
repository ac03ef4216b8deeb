#include "mgcascade/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mgcascade/errors.hpp"

namespace mgc::specfun {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kLogTwoPi = 1.837877066409345483560659472811235279;

// B_{2n} / (2n (2n-1)) for the Stirling series of ln Gamma.
constexpr double kStirling[] = {
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
};

// Stirling series, valid for Re z >= kShift.
constexpr double kShift = 12.0;

std::complex<double> stirling_log_gamma(std::complex<double> z) {
    std::complex<double> r = (z - 0.5) * std::log(z) - z + 0.5 * kLogTwoPi;
    const std::complex<double> z2 = 1.0 / (z * z);
    std::complex<double> zp = 1.0 / z;
    for (double c : kStirling) {
        r += c * zp;
        zp *= z2;
    }
    return r;
}

// log(sin(pi z)) for Im z >= 0, stable for large |Im z|.
std::complex<double> log_sin_pi_upper(std::complex<double> z) {
    const std::complex<double> i(0.0, 1.0);
    // sin(pi z) = -e^{-i pi z}(1 - e^{2 i pi z})/(2 i); |e^{2 i pi z}| <= 1 here
    std::complex<double> w = std::exp(2.0 * i * kPi * z);
    return -i * kPi * z + i * kPi / 2.0 - std::log(2.0) + std::log(1.0 - w);
}

}  // namespace

std::complex<double> log_gamma(std::complex<double> z) {
    if (z.imag() == 0.0) {
        double x = z.real();
        if (x <= 0.0 && std::abs(x - std::round(x)) < 1e-14)
            throw PoleError("log_gamma: pole at non-positive integer " + std::to_string(x));
    }
    if (z.imag() < 0.0) return std::conj(log_gamma(std::conj(z)));
    if (z.real() < 0.5) {
        // reflection: ln Gamma(z) = ln pi - ln sin(pi z) - ln Gamma(1 - z)
        return std::log(kPi) - log_sin_pi_upper(z) - log_gamma(1.0 - z);
    }
    // shift until the Stirling series applies
    std::complex<double> acc = 0.0;
    while (z.real() < kShift) {
        acc -= std::log(z);
        z += 1.0;
    }
    return stirling_log_gamma(z) + acc;
}

double log_gamma_pos(double x) {
    if (!(x > 0.0)) throw std::domain_error("log_gamma_pos: requires x > 0");
    return std::lgamma(x);
}

double log_gamma_signed(double x, int* sign) {
    if (x <= 0.0 && x == std::floor(x)) {
        // pole of Gamma: report +inf with sign 0 so exp(-r)*sign -> 0 for 1/Gamma
        *sign = 0;
        return std::numeric_limits<double>::infinity();
    }
    if (x > 0.0) {
        *sign = 1;
    } else {
        // Gamma alternates sign on (k, k+1) for negative integers k
        long long k = static_cast<long long>(std::floor(x));
        *sign = (k % 2 == 0) ? 1 : -1;
    }
    return std::lgamma(x);
}

double regularized_lower_gamma(double a, double x) {
    if (!(a > 0.0) || x < 0.0)
        throw std::domain_error("regularized_lower_gamma: requires a > 0, x >= 0");
    if (x == 0.0) return 0.0;
    const double eps = std::numeric_limits<double>::epsilon();
    const double lg = std::lgamma(a);
    if (x < a + 1.0) {
        // series for P(a,x)
        double ap = a, sum = 1.0 / a, del = sum;
        for (int n = 1; n < 10000; ++n) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::abs(del) < std::abs(sum) * eps)
                return sum * std::exp(-x + a * std::log(x) - lg);
        }
        throw ConvergenceError("regularized_lower_gamma: series did not converge");
    }
    // Lentz continued fraction for Q(a,x)
    const double fpmin = std::numeric_limits<double>::min() / eps;
    double b = x + 1.0 - a, c = 1.0 / fpmin, d = 1.0 / b, h = d;
    for (int i = 1; i < 10000; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < fpmin) d = fpmin;
        c = b + an / c;
        if (std::abs(c) < fpmin) c = fpmin;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < eps) {
            double q = std::exp(-x + a * std::log(x) - lg) * h;
            return 1.0 - q;
        }
    }
    throw ConvergenceError("regularized_lower_gamma: continued fraction did not converge");
}

namespace {

// ln of the ascending series sum for I_nu, scaled around its peak term.
double log_bessel_i_series(double nu, double x) {
    const double l = std::log(0.5 * x);
    auto log_term = [&](double k) {
        return (2.0 * k + nu) * l - std::lgamma(k + 1.0) - std::lgamma(k + nu + 1.0);
    };
    // peak of the term sequence: k(k+nu) ~ (x/2)^2
    double kpeak = std::floor(std::max(0.0, 0.5 * (-nu + std::hypot(nu, x))));
    double lt0 = log_term(kpeak);
    double sum = 0.0;
    for (int k = static_cast<int>(kpeak);; ++k) {
        double t = std::exp(log_term(k) - lt0);
        sum += t;
        if (t < 1e-18 * sum && k > kpeak + 4) break;
        if (k - kpeak > 100000)
            throw ConvergenceError("bessel_i: series did not converge");
    }
    for (int k = static_cast<int>(kpeak) - 1; k >= 0; --k)
        sum += std::exp(log_term(k) - lt0);
    return lt0 + std::log(sum);
}

// ln of e^{-x} sqrt(2 pi x) I_nu(x) via the large-x expansion.
double log_bessel_i_asymptotic(double nu, double x) {
    const double mu = 4.0 * nu * nu;
    double term = 1.0, sum = 1.0;
    for (int k = 1; k <= 30; ++k) {
        double num = mu - (2.0 * k - 1.0) * (2.0 * k - 1.0);
        double next = term * (-num) / (8.0 * k * x);
        if (std::abs(next) >= std::abs(term)) break;  // asymptotic tail turned
        term = next;
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return x - 0.5 * std::log(2.0 * kPi * x) + std::log(sum);
}

bool asymptotic_ok(double nu, double x) { return x > 50.0 && x > 2.0 * nu * nu; }

}  // namespace

double bessel_i(double nu, double x) {
    if (nu < -0.5 || x < 0.0)
        throw std::domain_error("bessel_i: requires nu >= -0.5, x >= 0");
    if (x == 0.0) {
        if (nu == 0.0) return 1.0;
        if (nu > 0.0) return 0.0;
        throw std::domain_error("bessel_i: divergent at x = 0 for nu < 0");
    }
    double lv = asymptotic_ok(nu, x) ? log_bessel_i_asymptotic(nu, x)
                                     : log_bessel_i_series(nu, x);
    if (lv > 709.0) throw std::overflow_error("bessel_i: result exceeds double range");
    return std::exp(lv);
}

double log_bessel_i(double nu, double x) {
    if (nu < -0.5 || !(x > 0.0))
        throw std::domain_error("log_bessel_i: requires nu >= -0.5, x > 0");
    return asymptotic_ok(nu, x) ? log_bessel_i_asymptotic(nu, x)
                                : log_bessel_i_series(nu, x);
}

namespace {

// Temme's coefficients: gam1 = [1/Gamma(1-mu) - 1/Gamma(1+mu)]/(2 mu),
// gam2 = [1/Gamma(1-mu) + 1/Gamma(1+mu)]/2, gampl = 1/Gamma(1+mu),
// gammi = 1/Gamma(1-mu); |mu| <= 1/2.
void temme_gammas(double mu, double& gam1, double& gam2, double& gampl, double& gammi) {
    // g(mu) = -ln Gamma(1+mu) = eulergamma*mu - sum_{k>=2} (-1)^k zeta(k) mu^k / k
    static const double zeta[] = {0.0, 0.0,
        1.6449340668482264, 1.2020569031595943, 1.0823232337111382,
        1.0369277551433699, 1.0173430619844491, 1.0083492773819228,
        1.0040773561979443, 1.0020083928260822, 1.0009945751278181,
        1.0004941886041195, 1.0002460865533080, 1.0001227133475785};
    constexpr double euler = 0.5772156649015328606065120900824024;
    if (std::abs(mu) < 0.29) {
        // odd/even parts of g: u = euler*mu + zeta3 mu^3/3 + ..., v = -zeta2 mu^2/2 - ...
        double u = euler * mu, v = 0.0, mp = mu;
        for (int k = 2; k <= 13; ++k) {
            mp *= mu;
            double c = zeta[k] * mp / k;
            if (k % 2 == 0) v -= c; else u += c;
        }
        double ev = std::exp(v);
        gampl = std::exp(u + v);
        gammi = std::exp(v - u);
        gam2 = ev * std::cosh(u);
        double sinhc = (mu == 0.0) ? euler : std::sinh(u) / mu;
        gam1 = -ev * sinhc;  // note sinh(u)/mu -> euler as mu -> 0
    } else {
        gampl = 1.0 / std::tgamma(1.0 + mu);
        gammi = 1.0 / std::tgamma(1.0 - mu);
        gam1 = (gammi - gampl) / (2.0 * mu);
        gam2 = (gammi + gampl) / 2.0;
    }
}

// K_mu(x) and K_{mu+1}(x) for |mu| <= 1/2, 0 < x <= 2 (Temme series).
void bessel_k_temme(double mu, double x, double& kmu, double& kmu1) {
    const double eps = std::numeric_limits<double>::epsilon();
    double gam1, gam2, gampl, gammi;
    temme_gammas(mu, gam1, gam2, gampl, gammi);
    const double x2 = 0.5 * x;
    const double pimu = kPi * mu;
    const double fact = (std::abs(pimu) < 1e-12) ? 1.0 : pimu / std::sin(pimu);
    const double d = -std::log(x2);
    const double e = mu * d;
    const double fact2 = (std::abs(e) < 1e-12) ? 1.0 : std::sinh(e) / e;
    double ff = fact * (gam1 * std::cosh(e) + gam2 * fact2 * d);
    double sum = ff;
    double ee = std::exp(e);
    double p = 0.5 * ee / gampl;
    double q = 0.5 / (ee * gammi);
    double c = 1.0;
    double dd = x2 * x2;
    double sum1 = p;
    for (int i = 1; i <= 1000; ++i) {
        ff = (i * ff + p + q) / (i * i - mu * mu);
        c *= dd / i;
        p /= (i - mu);
        q /= (i + mu);
        double del = c * ff;
        sum += del;
        double del1 = c * (p - i * ff);
        sum1 += del1;
        if (std::abs(del) < std::abs(sum) * eps) {
            kmu = sum;
            kmu1 = sum1 * (2.0 / x);
            return;
        }
    }
    throw ConvergenceError("bessel_k: Temme series did not converge");
}

// K_mu(x) and K_{mu+1}(x) for |mu| <= 1/2, x > 2 (Steed continued fraction).
void bessel_k_cf2(double mu, double x, double& kmu, double& kmu1) {
    const double eps = std::numeric_limits<double>::epsilon();
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d, delh = d;
    double q1 = 0.0, q2 = 1.0;
    const double a1 = 0.25 - mu * mu;
    double q = a1, c = a1, a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 2; i <= 10000; ++i) {
        a -= 2 * (i - 1);
        c = -a * c / i;
        double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        double dels = q * delh;
        s += dels;
        if (std::abs(dels / s) < eps) {
            h = a1 * h;
            kmu = std::sqrt(kPi / (2.0 * x)) * std::exp(-x) / s;
            kmu1 = kmu * (mu + x + 0.5 - h) / x;
            return;
        }
    }
    throw ConvergenceError("bessel_k: continued fraction did not converge");
}

}  // namespace

double bessel_k(double nu, double x) {
    if (!(x > 0.0)) throw std::domain_error("bessel_k: requires x > 0");
    nu = std::abs(nu);  // K_{-nu} = K_nu
    const int nl = static_cast<int>(nu + 0.5);
    const double mu = nu - nl;
    double kmu, kmu1;
    if (x <= 2.0)
        bessel_k_temme(mu, x, kmu, kmu1);
    else
        bessel_k_cf2(mu, x, kmu, kmu1);
    // upward recurrence K_{m+1} = K_{m-1} + 2 m K_m / x
    for (int i = 1; i <= nl; ++i) {
        double knext = kmu + 2.0 * (mu + i) * kmu1 / x;
        kmu = kmu1;
        kmu1 = knext;
    }
    return kmu;
}

double gaussian_q(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

QuadratureRule gauss_laguerre(int order) {
    if (order < 1) throw std::domain_error("gauss_laguerre: order must be >= 1");
    const int n = order;
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    double z = 0.0;
    for (int i = 0; i < n; ++i) {
        // Stroud-Secrest style initial guesses
        if (i == 0)
            z = 3.0 / (1.0 + 2.4 * n);
        else if (i == 1)
            z += 15.0 / (1.0 + 2.5 * n);
        else
            z += ((1.0 + 2.55 * (i - 1)) / (1.9 * (i - 1))) * (z - rule.nodes[i - 2]);
        double pp = 0.0;
        bool done = false;
        for (int it = 0; it < 100; ++it) {
            // Laguerre recurrence: (j+1) L_{j+1} = (2j+1-z) L_j - j L_{j-1}
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0 - z) * p2 - j * p3) / (j + 1.0);
            }
            pp = n * (p1 - p2) / z;  // L'_n(z)
            double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= 1e-15 * std::max(1.0, std::abs(z))) {
                done = true;
                break;
            }
        }
        if (!done)
            throw ConvergenceError("gauss_laguerre: Newton failed at node " + std::to_string(i));
        rule.nodes[i] = z;
        rule.weights[i] = 1.0 / (z * pp * pp);  // = x / ((n+1) L_{n+1})^2 form
    }
    return rule;
}

QuadratureRule gauss_legendre(int order) {
    if (order < 1) throw std::domain_error("gauss_legendre: order must be >= 1");
    const int n = order;
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        bool done = false;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = n * (z * p1 - p2) / (z * z - 1.0);
            double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15) {
                done = true;
                break;
            }
        }
        if (!done)
            throw ConvergenceError("gauss_legendre: Newton failed at node " + std::to_string(i));
        rule.nodes[i] = -z;
        rule.nodes[n - 1 - i] = z;
        rule.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        rule.weights[n - 1 - i] = rule.weights[i];
    }
    return rule;
}

}  // namespace mgc::specfun
