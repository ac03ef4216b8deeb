#include "mgcascade/mixture_gamma.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <random>
#include <sstream>

#include "mgcascade/errors.hpp"
#include "mgcascade/specfun.hpp"

namespace mgc {

namespace {

double log_component_mass(double log_sigma, double beta, double zeta) {
    return log_sigma + specfun::log_gamma_pos(beta) - beta * std::log(zeta);
}

}  // namespace

MixtureGamma::MixtureGamma(std::vector<MGTerm> terms, std::string label)
    : terms_(std::move(terms)), label_(std::move(label)) {
    if (terms_.empty()) throw std::domain_error("MixtureGamma: needs at least one term");
    masses_.reserve(terms_.size());
    double total = 0.0;
    min_beta_ = std::numeric_limits<double>::infinity();
    min_zeta_ = std::numeric_limits<double>::infinity();
    for (const auto& t : terms_) {
        if (!(t.sigma > 0.0) || !(t.beta > 0.0) || !(t.zeta > 0.0))
            throw std::domain_error("MixtureGamma: sigma, beta, zeta must be positive");
        masses_.push_back(std::exp(log_component_mass(std::log(t.sigma), t.beta, t.zeta)));
        total += masses_.back();
        min_beta_ = std::min(min_beta_, t.beta);
        min_zeta_ = std::min(min_zeta_, t.zeta);
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw std::domain_error("MixtureGamma: mixture mass " + std::to_string(total) +
                                " violates unit normalization");
    cum_masses_.resize(masses_.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < masses_.size(); ++i) {
        acc += masses_[i];
        cum_masses_[i] = acc;
    }
    cum_masses_.back() = 1.0;
}

MixtureGamma MixtureGamma::normalize(std::span<const RawTerm> raw, std::string label) {
    std::vector<LogRawTerm> lr;
    lr.reserve(raw.size());
    for (const auto& t : raw) {
        if (!(t.theta > 0.0))
            throw std::domain_error("MixtureGamma::normalize: theta must be positive");
        lr.push_back({std::log(t.theta), t.beta, t.zeta});
    }
    return normalize(std::span<const LogRawTerm>(lr), std::move(label));
}

MixtureGamma MixtureGamma::normalize(std::span<const LogRawTerm> raw, std::string label) {
    if (raw.empty()) throw std::domain_error("MixtureGamma::normalize: no terms");
    std::vector<double> log_mass(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (!(raw[i].beta > 0.0) || !(raw[i].zeta > 0.0) || !std::isfinite(raw[i].log_theta))
            throw std::domain_error("MixtureGamma::normalize: invalid raw term");
        log_mass[i] = log_component_mass(raw[i].log_theta, raw[i].beta, raw[i].zeta);
    }
    const double m = *std::max_element(log_mass.begin(), log_mass.end());
    double total = 0.0;
    for (double lm : log_mass) total += std::exp(lm - m);
    const double log_total = m + std::log(total);
    std::vector<MGTerm> terms;
    terms.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i)
        terms.push_back({std::exp(raw[i].log_theta - log_total), raw[i].beta, raw[i].zeta});
    return MixtureGamma(std::move(terms), std::move(label));
}

double MixtureGamma::pdf(double g) const {
    if (g < 0.0) throw std::domain_error("MixtureGamma::pdf: g must be >= 0");
    if (g == 0.0) {
        if (min_beta_ < 1.0)
            throw std::domain_error("MixtureGamma::pdf: divergent at g = 0 (beta < 1)");
        double v = 0.0;
        for (const auto& t : terms_)
            if (t.beta == 1.0) v += t.sigma;
        return v;
    }
    double v = 0.0;
    const double lg = std::log(g);
    for (const auto& t : terms_)
        v += std::exp(std::log(t.sigma) + (t.beta - 1.0) * lg - t.zeta * g);
    return v;
}

double MixtureGamma::cdf(double g) const {
    if (g < 0.0) throw std::domain_error("MixtureGamma::cdf: g must be >= 0");
    if (g == 0.0) return 0.0;
    double v = 0.0;
    for (std::size_t i = 0; i < terms_.size(); ++i)
        v += masses_[i] * specfun::regularized_lower_gamma(terms_[i].beta, terms_[i].zeta * g);
    return std::min(v, 1.0);
}

double MixtureGamma::mgf(double s) const {
    if (s <= -min_zeta_)
        throw std::domain_error("MixtureGamma::mgf: requires s > -min zeta");
    double v = 0.0;
    for (const auto& t : terms_)
        v += std::exp(std::log(t.sigma) + specfun::log_gamma_pos(t.beta) -
                      t.beta * std::log(s + t.zeta));
    return v;
}

double MixtureGamma::mellin(double n) const {
    if (n <= 1.0 - min_beta_)
        throw std::domain_error("MixtureGamma::mellin: requires n > 1 - min beta");
    double v = 0.0;
    for (const auto& t : terms_) {
        const double arg = t.beta - 1.0 + n;
        if (arg <= 0.0 && std::abs(arg - std::round(arg)) < 1e-14)
            throw PoleError("MixtureGamma::mellin: gamma pole at " + std::to_string(arg));
        v += std::exp(std::log(t.sigma) + (1.0 - n - t.beta) * std::log(t.zeta) +
                      specfun::log_gamma_pos(arg));
    }
    return v;
}

double MixtureGamma::mean() const { return mellin(2.0); }

namespace {

// Deterministic uniform/normal/gamma generation; std distributions are
// implementation-defined, these are not.
inline double next_uniform(std::mt19937_64& eng) {
    return ((eng() >> 11) + 0.5) * 0x1.0p-53;  // (0,1)
}

double next_normal(std::mt19937_64& eng) {
    // polar Box-Muller, one value per call (spare discarded to keep the
    // per-draw stream layout simple and deterministic)
    for (;;) {
        double u = 2.0 * next_uniform(eng) - 1.0;
        double v = 2.0 * next_uniform(eng) - 1.0;
        double s = u * u + v * v;
        if (s > 0.0 && s < 1.0)
            return u * std::sqrt(-2.0 * std::log(s) / s);
    }
}

// Marsaglia-Tsang for shape >= 1; shape boost X = X_{a+1} U^{1/a} below 1.
double next_gamma(std::mt19937_64& eng, double shape) {
    if (shape < 1.0) {
        double u = next_uniform(eng);
        return next_gamma(eng, shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x = next_normal(eng);
        double v = 1.0 + c * x;
        if (v <= 0.0) continue;
        v = v * v * v;
        double u = next_uniform(eng);
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

}  // namespace

void MixtureGamma::sample_into(std::span<double> out, std::uint64_t seed) const {
    std::mt19937_64 eng(seed);
    for (double& o : out) {
        const double u = next_uniform(eng);
        auto it = std::lower_bound(cum_masses_.begin(), cum_masses_.end(), u);
        const std::size_t idx = std::min<std::size_t>(it - cum_masses_.begin(),
                                                      terms_.size() - 1);
        o = next_gamma(eng, terms_[idx].beta) / terms_[idx].zeta;
    }
}

std::vector<double> MixtureGamma::sample(std::size_t count, std::uint64_t seed) const {
    if (count < 1) throw std::domain_error("MixtureGamma::sample: count must be >= 1");
    std::vector<double> out(count);
    sample_into(out, seed);
    return out;
}

void MixtureGamma::save(std::ostream& os) const {
    os.precision(17);
    os << "mg " << (label_.empty() ? "-" : label_) << ' ' << terms_.size() << '\n';
    for (const auto& t : terms_)
        os << t.sigma << ' ' << t.beta << ' ' << t.zeta << '\n';
}

MixtureGamma MixtureGamma::load(std::istream& is) {
    std::string tag, label;
    std::size_t n = 0;
    if (!(is >> tag >> label >> n) || tag != "mg")
        throw std::runtime_error("MixtureGamma::load: malformed header");
    std::vector<MGTerm> terms(n);
    for (auto& t : terms)
        if (!(is >> t.sigma >> t.beta >> t.zeta))
            throw std::runtime_error("MixtureGamma::load: truncated record");
    return MixtureGamma(std::move(terms), label == "-" ? "" : label);
}

double mse_between(const std::function<double(double)>& f,
                   const std::function<double(double)>& h,
                   std::span<const double> grid) {
    if (grid.empty()) throw std::domain_error("mse_between: empty grid");
    double acc = 0.0;
    for (double g : grid) {
        const double d = f(g) - h(g);
        acc += d * d;
    }
    return acc / static_cast<double>(grid.size());
}

std::vector<double> default_mse_grid(double gbar) {
    const int n = 2000;
    const double step = 5.0 * gbar / n;
    std::vector<double> grid(n);
    for (int i = 0; i < n; ++i) grid[i] = (i + 0.5) * step;
    return grid;
}

}  // namespace mgc
