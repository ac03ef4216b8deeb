#pragma once

#include <functional>
#include <utility>

#include "mgcascade/mixture_gamma.hpp"

namespace mgc::channels {

// Noncentral-chi based fading model. gbar is the linear SNR scale
// parameter; lambda moves the location and height of the PDF.
struct BeaulieuXieChannel {
    double m;       // fading parameter, >= 0.5
    double lambda;  // >= 0
    double gbar;    // > 0, linear

    void validate() const;
};

// Non-linear NLoS fading composited with gamma shadowing.
struct AlemsChannel {
    double alpha;   // non-linearity, > 0
    double lambda;  // in-phase/quadrature correlation, |lambda| < 1
    double eta;     // quadrature/in-phase power ratio, > 0
    double mu;      // multipath clusters, > 0
    double m;       // shadowing severity, > 0
    double gbar;    // > 0, linear

    void validate() const;

    // Derived constants of the envelope law.
    struct Derived {
        double a, psi_half, phi, rho, vartheta;  // psi_half = psi/2 (unit mass)
    };
    Derived derived() const;
};

// Exact SNR density of the Beaulieu-Xie law.
double bx_exact_pdf(const BeaulieuXieChannel& ch, double g);

// MG parameterization with beta_l = m + l - 1, zeta_l = m/gbar and
// Poisson(lambda^2/2) component weights. lambda = 0 collapses to the
// single gamma term.
MixtureGamma bx_to_mg(const BeaulieuXieChannel& ch, int terms);

// Exact composite density (one-dimensional integral, adaptive
// quadrature, ~1e-9 accurate).
double alems_exact_pdf(const AlemsChannel& ch, double g);

// MG parameterization via the Gauss-Laguerre rule: beta_l = m,
// zeta_l = m (rho/z_l^... )^{2/alpha}.
MixtureGamma alems_to_mg(const AlemsChannel& ch, int terms);

// As alems_to_mg but with the z-exponent sign as printed in the source
// derivation (kept for the fit-quality comparison test; not used by
// shipped configurations).
MixtureGamma alems_to_mg_alt_exponent(const AlemsChannel& ch, int terms);

// Smallest L <= 64 whose fit reaches mse_target on the default grid.
std::pair<int, MixtureGamma> select_terms(
    const std::function<double(double)>& exact_pdf,
    const std::function<MixtureGamma(int)>& fitter, double mse_target, double gbar);

}  // namespace mgc::channels
