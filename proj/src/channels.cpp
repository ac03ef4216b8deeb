#include "mgcascade/channels.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "mgcascade/errors.hpp"
#include "mgcascade/quadrature.hpp"
#include "mgcascade/specfun.hpp"

namespace mgc::channels {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

}  // namespace

void BeaulieuXieChannel::validate() const {
    if (!(m >= 0.5) || !(lambda >= 0.0) || !(gbar > 0.0))
        throw std::domain_error("BeaulieuXieChannel: requires m >= 0.5, lambda >= 0, gbar > 0");
}

void AlemsChannel::validate() const {
    if (!(alpha > 0.0) || !(std::abs(lambda) < 1.0) || !(eta > 0.0) || !(mu > 0.0) ||
        !(m > 0.0) || !(gbar > 0.0))
        throw std::domain_error(
            "AlemsChannel: requires alpha > 0, |lambda| < 1, eta > 0, mu > 0, m > 0, gbar > 0");
}

AlemsChannel::Derived AlemsChannel::derived() const {
    validate();
    Derived d;
    const double oml = 1.0 - lambda * lambda;
    d.a = std::sqrt((eta - 1.0) * (eta - 1.0) + 4.0 * eta * lambda * lambda) / oml;
    d.phi = 0.5 * alpha * (mu + 0.5);
    const double gpow = std::pow(gbar, 0.5 * alpha);
    d.rho = mu * (1.0 + eta) * (1.0 + eta) / (2.0 * eta * oml * gpow);
    d.vartheta = d.a * mu * (1.0 + eta) / (2.0 * eta * gpow);
    // envelope normalizer; the raw prefactor carries total mass 2, so
    // half of it makes the density integrate to 1
    const double log_psi =
        0.5 * std::log(kPi) + std::log(alpha) + (mu + 0.5) * std::log(mu * (1.0 + 1.0 / eta)) -
        specfun::log_gamma_pos(mu) - (mu - 0.5) * std::log(d.a) -
        d.phi * std::log(gbar) + mu * std::log(eta / oml);
    d.psi_half = std::exp(log_psi - std::log(2.0));
    if (!std::isfinite(d.a) || !std::isfinite(d.psi_half) || !std::isfinite(d.rho) ||
        !std::isfinite(d.vartheta))
        throw std::domain_error("AlemsChannel: derived constants not finite");
    return d;
}

double bx_exact_pdf(const BeaulieuXieChannel& ch, double g) {
    ch.validate();
    if (!(g > 0.0)) throw std::domain_error("bx_exact_pdf: requires g > 0");
    if (ch.lambda == 0.0) {
        // gamma(m, m/gbar) limit
        return std::exp(ch.m * std::log(ch.m / ch.gbar) - specfun::log_gamma_pos(ch.m) +
                        (ch.m - 1.0) * std::log(g) - ch.m * g / ch.gbar);
    }
    const double x = ch.lambda * std::sqrt(2.0 * ch.m * g / ch.gbar);
    const double lf = 0.5 * (ch.m - 1.0) * std::log(2.0) + 0.5 * (ch.m + 1.0) * std::log(ch.m) -
                      0.5 * ch.lambda * ch.lambda - (ch.m - 1.0) * std::log(ch.lambda) -
                      0.5 * (ch.m + 1.0) * std::log(ch.gbar) + 0.5 * (ch.m - 1.0) * std::log(g) -
                      ch.m * g / ch.gbar + specfun::log_bessel_i(ch.m - 1.0, x);
    return std::exp(lf);
}

MixtureGamma bx_to_mg(const BeaulieuXieChannel& ch, int terms) {
    ch.validate();
    if (terms < 1) throw std::domain_error("bx_to_mg: terms must be >= 1");
    const double zeta = ch.m / ch.gbar;
    const double log_zeta = std::log(zeta);
    if (ch.lambda == 0.0) terms = 1;  // only the k = 0 component carries mass
    const double pois_mean = 0.5 * ch.lambda * ch.lambda;
    std::vector<LogRawTerm> raw;
    raw.reserve(terms);
    for (int l = 1; l <= terms; ++l) {
        const int k = l - 1;
        const double beta = ch.m + k;
        // theta_l = Pois(k; lambda^2/2) * zeta^beta / Gamma(beta)
        double log_pois = (k == 0 && pois_mean == 0.0)
                              ? 0.0
                              : -pois_mean + k * std::log(pois_mean) -
                                    specfun::log_gamma_pos(k + 1.0);
        raw.push_back({log_pois + beta * log_zeta - specfun::log_gamma_pos(beta), beta, zeta});
    }
    return MixtureGamma::normalize(std::span<const LogRawTerm>(raw), "beaulieu-xie");
}

namespace {

double alems_pdf_integral(const AlemsChannel& ch, const AlemsChannel::Derived& d, double g) {
    // integral over the shadowing variable r of
    //   r^{m-phi-1} exp(-rho (g/r)^{a/2} - m r) I_{mu-1/2}(vth (g/r)^{a/2})
    const double nu = ch.mu - 0.5;
    auto integrand = [&](double r) -> double {
        const double u = std::pow(g / r, 0.5 * ch.alpha);
        const double le = (ch.m - d.phi - 1.0) * std::log(r) - d.rho * u - ch.m * r +
                          specfun::log_bessel_i(nu, d.vartheta * u);
        return std::exp(le);
    };
    return quad::integrate_semi_inf(integrand, 0.0, 1e-10);
}

MixtureGamma alems_mg_impl(const AlemsChannel& ch, int terms, double exp_sign) {
    ch.validate();
    if (terms < 1) throw std::domain_error("alems_to_mg: terms must be >= 1");
    const auto d = ch.derived();
    const auto rule = specfun::gauss_laguerre(terms);
    const double zexp = exp_sign - 2.0 * (ch.m - d.phi) / ch.alpha;
    const double ratio = d.vartheta / d.rho;
    std::vector<LogRawTerm> raw;
    raw.reserve(terms);
    for (int l = 0; l < terms; ++l) {
        const double z = rule.nodes[l];
        const double log_theta = std::log(rule.weights[l]) + zexp * std::log(z) +
                                 specfun::log_bessel_i(ch.mu - 0.5, ratio * z);
        const double zeta = ch.m * std::pow(d.rho, 2.0 / ch.alpha) / std::pow(z, 2.0 / ch.alpha);
        raw.push_back({log_theta, ch.m, zeta});
    }
    return MixtureGamma::normalize(std::span<const LogRawTerm>(raw), "alems");
}

}  // namespace

double alems_exact_pdf(const AlemsChannel& ch, double g) {
    if (!(g > 0.0)) throw std::domain_error("alems_exact_pdf: requires g > 0");
    const auto d = ch.derived();
    const double pref = d.psi_half * std::exp(ch.m * std::log(ch.m) -
                                              specfun::log_gamma_pos(ch.m) +
                                              (d.phi - 1.0) * std::log(g));
    return pref * alems_pdf_integral(ch, d, g);
}

MixtureGamma alems_to_mg(const AlemsChannel& ch, int terms) {
    return alems_mg_impl(ch, terms, -1.0);
}

MixtureGamma alems_to_mg_alt_exponent(const AlemsChannel& ch, int terms) {
    return alems_mg_impl(ch, terms, +1.0);
}

std::pair<int, MixtureGamma> select_terms(
    const std::function<double(double)>& exact_pdf,
    const std::function<MixtureGamma(int)>& fitter, double mse_target, double gbar) {
    if (!(mse_target > 0.0)) throw std::domain_error("select_terms: mse_target must be > 0");
    const auto grid = default_mse_grid(gbar);
    for (int L = 1; L <= 64; ++L) {
        MixtureGamma mg = fitter(L);
        const double err =
            mse_between(exact_pdf, [&](double g) { return mg.pdf(g); }, grid);
        if (err <= mse_target) return {static_cast<int>(mg.terms().size()), std::move(mg)};
    }
    throw ConvergenceError("select_terms: target MSE unreachable at L = 64");
}

}  // namespace mgc::channels
