#include "mgcascade/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "mgcascade/errors.hpp"
#include "mgcascade/specfun.hpp"

namespace mgc::metrics {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kSqrtPi = 1.772453850905516027298167483341145183;

bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

// (1/pi) int_lo^hi MGF(g / sin^2 theta) d theta by Gauss-Legendre.
double mgf_angle_integral(const cascade::ProductStats& stats, double g, double lo,
                          double hi, int order) {
    const auto rule = specfun::gauss_legendre(order);
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    double acc = 0.0;
    for (int i = 0; i < order; ++i) {
        const double theta = mid + half * rule.nodes[i];
        const double s2 = std::sin(theta) * std::sin(theta);
        acc += rule.weights[i] * stats.mgf(g / s2);
    }
    return half * acc / kPi;
}

// Closed form of (1/pi) int_0^{pi/2} MGF(g/sin^2) d theta:
// (Gamma(1/2)/(2 pi g)) sum Phi G^{N,2}_{2,N+1}[Xi/g | 0,-1/2; (b-1),-1].
double coherent_closed_form(const cascade::ProductStats& stats, double g) {
    const double log_pref = std::log(kSqrtPi) - std::log(2.0 * kPi * g);
    const double lg = std::log(g);
    return stats.combo_sum(
        [](const cascade::TermCombo& c) {
            meijer::MeijerGSpec s;
            const int n = static_cast<int>(c.betas.size());
            s.m = n, s.n = 2, s.p = 2, s.q = n + 1;
            s.a = {0.0, -0.5};
            for (double b : c.betas) s.b.push_back(b - 1.0);
            s.b.push_back(-1.0);
            return s;
        },
        [g](const cascade::TermCombo& c) { return c.xi / g; },
        [&](const cascade::TermCombo&) { return log_pref; });
}

double check_against_integral(double closed, double integral, const char* what) {
    const double scale = std::max({std::abs(closed), std::abs(integral), 1e-300});
    if (std::abs(closed - integral) > 1e-6 * scale)
        throw VerificationError(std::string(what) + ": closed form " + std::to_string(closed) +
                                " vs angle integral " + std::to_string(integral));
    return closed;
}

}  // namespace

double ModulationScheme::g() const {
    switch (kind) {
        case Modulation::NcBfsk: return 0.5;
        case Modulation::Dbpsk: return 1.0;
        case Modulation::CoherentBfsk: return 0.5;
        case Modulation::Bpsk: return 1.0;
        case Modulation::BfskMinCorr: return 0.715;
        case Modulation::Mpsk: return std::pow(std::sin(kPi / order), 2);
        case Modulation::Mqam: return 1.5 / (order - 1.0);
    }
    throw std::domain_error("ModulationScheme: unknown kind");
}

double ModulationScheme::qam_c() const {
    if (kind != Modulation::Mqam) throw std::domain_error("qam_c: not a QAM scheme");
    return 1.0 - 1.0 / std::sqrt(static_cast<double>(order));
}

void ModulationScheme::validate() const {
    if ((kind == Modulation::Mpsk || kind == Modulation::Mqam) &&
        (order < 4 || !is_power_of_two(order)))
        throw std::domain_error("ModulationScheme: order must be a power of two >= 4");
}

double outage(const cascade::ProductStats& stats, double gamma_th) {
    if (!(gamma_th > 0.0)) throw std::domain_error("outage: requires gamma_th > 0");
    return stats.cdf(gamma_th);
}
double outage(const cascade::CascadeChain& chain, double gamma_th) {
    return outage(cascade::ProductStats(chain), gamma_th);
}

double abep_noncoherent(const cascade::ProductStats& stats, const ModulationScheme& scheme) {
    if (scheme.kind != Modulation::NcBfsk && scheme.kind != Modulation::Dbpsk)
        throw std::domain_error("abep_noncoherent: scheme must be NC-BFSK or DBPSK");
    return 0.5 * stats.mgf(scheme.g());
}
double abep_noncoherent(const cascade::CascadeChain& chain, const ModulationScheme& scheme) {
    return abep_noncoherent(cascade::ProductStats(chain), scheme);
}

double abep_coherent(const cascade::ProductStats& stats, const ModulationScheme& scheme) {
    if (scheme.kind != Modulation::CoherentBfsk && scheme.kind != Modulation::Bpsk &&
        scheme.kind != Modulation::BfskMinCorr)
        throw std::domain_error("abep_coherent: scheme must be coherent BFSK/BPSK/BFSK-min-corr");
    const double g2 = scheme.g();
    const double closed = coherent_closed_form(stats, g2);
    const double integral = mgf_angle_integral(stats, g2, 0.0, 0.5 * kPi, 64);
    return check_against_integral(closed, integral, "abep_coherent");
}
double abep_coherent(const cascade::CascadeChain& chain, const ModulationScheme& scheme) {
    return abep_coherent(cascade::ProductStats(chain), scheme);
}

double asep_mpsk(const cascade::ProductStats& stats, int order) {
    ModulationScheme scheme{Modulation::Mpsk, order};
    scheme.validate();
    const double g = scheme.g();
    // I1 closed form; I2 on (0, pi/M] by quadrature, self-checked by
    // order doubling
    const double i1 = 2.0 * coherent_closed_form(stats, g);
    const double i2 = mgf_angle_integral(stats, g, 0.0, kPi / order, 64);
    const double i2b = mgf_angle_integral(stats, g, 0.0, kPi / order, 128);
    if (std::abs(i2 - i2b) > 1e-8 * std::max({i1 - i2, std::abs(i2), 1e-300}))
        throw VerificationError("asep_mpsk: quadrature-order doubling disagreement");
    return i1 - i2b;
}
double asep_mpsk(const cascade::CascadeChain& chain, int order) {
    return asep_mpsk(cascade::ProductStats(chain), order);
}

double asep_mqam(const cascade::ProductStats& stats, int order) {
    ModulationScheme scheme{Modulation::Mqam, order};
    scheme.validate();
    const double g = scheme.g();
    const double c = scheme.qam_c();
    const double j1 = coherent_closed_form(stats, g);
    const double j2 = mgf_angle_integral(stats, g, 0.0, 0.25 * kPi, 64);
    const double j2b = mgf_angle_integral(stats, g, 0.0, 0.25 * kPi, 128);
    const double v = 4.0 * c * (j1 - c * j2b);
    if (std::abs(j2 - j2b) * 4.0 * c * c > 1e-8 * std::max(std::abs(v), 1e-300))
        throw VerificationError("asep_mqam: quadrature-order doubling disagreement");
    return v;
}
double asep_mqam(const cascade::CascadeChain& chain, int order) {
    return asep_mqam(cascade::ProductStats(chain), order);
}

double effective_rate(const cascade::ProductStats& stats, double delay_exponent) {
    if (!(delay_exponent > 0.0))
        throw std::domain_error("effective_rate: requires delay exponent A > 0");
    const double a = delay_exponent;
    const double log_pref = -specfun::log_gamma_pos(a);
    const double expectation = stats.combo_sum(
        [a](const cascade::TermCombo& c) {
            meijer::MeijerGSpec s;
            const int n = static_cast<int>(c.betas.size());
            s.m = n + 1, s.n = 1, s.p = 1, s.q = n + 1;
            s.a = {0.0};
            for (double b : c.betas) s.b.push_back(b - 1.0);
            s.b.push_back(a - 1.0);
            return s;
        },
        [](const cascade::TermCombo& c) { return c.xi; },
        [&](const cascade::TermCombo&) { return log_pref; });
    return -std::log2(expectation) / a;
}
double effective_rate(const cascade::CascadeChain& chain, double delay_exponent) {
    return effective_rate(cascade::ProductStats(chain), delay_exponent);
}

double auc_awgn(double y, int u) {
    if (u < 1) throw std::domain_error("auc_awgn: requires u >= 1");
    if (y < 0.0) throw std::domain_error("auc_awgn: requires y >= 0");
    double acc = 0.0;
    for (int r = 0; r <= u - 1; ++r) {
        for (int n = 0; n <= r; ++n) {
            const double log_binom = specfun::log_gamma_pos(r + u) -
                                     specfun::log_gamma_pos(r - n + 1.0) -
                                     specfun::log_gamma_pos(u + n);
            const double log_term = log_binom + (n > 0 ? n * std::log(y) : 0.0) - 0.5 * y -
                                    (r + u + n) * std::log(2.0) -
                                    specfun::log_gamma_pos(n + 1.0);
            if (y == 0.0 && n > 0) continue;
            acc += std::exp(log_term);
        }
    }
    return 1.0 - acc;
}

double avg_auc(const cascade::ProductStats& stats, int u) {
    if (u < 1) throw std::domain_error("avg_auc: requires u >= 1");
    double acc = 0.0;
    for (int r = 0; r <= u - 1; ++r) {
        for (int n = 0; n <= r; ++n) {
            const double log_binom = specfun::log_gamma_pos(r + u) -
                                     specfun::log_gamma_pos(r - n + 1.0) -
                                     specfun::log_gamma_pos(u + n);
            const double log_w = log_binom - (r + u - 1.0) * std::log(2.0) -
                                 specfun::log_gamma_pos(n + 1.0);
            // E[y^n e^{-y/2}] = 2^{n+1} sum Phi G^{N,1}_{1,N}[2 Xi | -n; (b-1)]
            const double e = stats.combo_sum(
                [n](const cascade::TermCombo& c) {
                    meijer::MeijerGSpec s;
                    const int nn = static_cast<int>(c.betas.size());
                    s.m = nn, s.n = 1, s.p = 1, s.q = nn;
                    s.a = {-static_cast<double>(n)};
                    for (double b : c.betas) s.b.push_back(b - 1.0);
                    return s;
                },
                [](const cascade::TermCombo& c) { return 2.0 * c.xi; },
                [](const cascade::TermCombo&) { return 0.0; });
            acc += std::exp(log_w) * e;
        }
    }
    return 1.0 - acc;
}
double avg_auc(const cascade::CascadeChain& chain, int u) {
    return avg_auc(cascade::ProductStats(chain), u);
}

double multihop_outage(const MultihopSystem& sys, double gamma_th) {
    if (sys.hops.empty()) throw std::domain_error("multihop_outage: needs at least one hop");
    if (!(gamma_th > 0.0)) throw std::domain_error("multihop_outage: requires gamma_th > 0");
    double keep = 1.0;
    for (const auto& hop : sys.hops)
        keep *= 1.0 - cascade::RatioStats(hop).cdf(gamma_th);
    return 1.0 - keep;
}

double sop_lower(const SecrecyScenario& sc) {
    if (sc.rate_threshold < 0.0)
        throw std::domain_error("sop_lower: requires R_th >= 0");
    const double eps = std::exp2(sc.rate_threshold);
    return cascade::ratio_cdf({sc.main, sc.wiretap}, eps);
}

double pnsc(const SecrecyScenario& sc) {
    return 1.0 - cascade::ratio_cdf({sc.main, sc.wiretap}, 1.0);
}

}  // namespace mgc::metrics
