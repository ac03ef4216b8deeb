#include "mgcascade/cascade.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mgcascade/errors.hpp"

namespace mgc::cascade {

namespace {

constexpr std::size_t kComboCap = 10'000'000;

}  // namespace

std::vector<TermCombo> enumerate_combos(const CascadeChain& chain, double prune) {
    if (chain.links.empty())
        throw std::domain_error("enumerate_combos: chain needs at least one link");
    if (prune < 0.0 || prune > 1e-6)
        throw std::domain_error("enumerate_combos: prune must lie in [0, 1e-6]");
    std::size_t count = 1;
    for (const auto& link : chain.links) {
        count *= link.terms().size();
        if (count > kComboCap)
            throw std::length_error("enumerate_combos: combination count above cap");
    }
    const int n = chain.size();
    std::vector<std::size_t> idx(n, 0);
    std::vector<TermCombo> out;
    out.reserve(std::min<std::size_t>(count, 4096));
    for (;;) {
        TermCombo c;
        c.log_phi = 0.0;
        c.log_xi = 0.0;
        c.mass = 1.0;
        c.betas.resize(n);
        for (int i = 0; i < n; ++i) {
            const auto& t = chain.links[i].terms()[idx[i]];
            c.log_phi += std::log(t.sigma) - (t.beta - 1.0) * std::log(t.zeta);
            c.log_xi += std::log(t.zeta);
            c.mass *= chain.links[i].masses()[idx[i]];
            c.betas[i] = t.beta;
        }
        if (c.mass >= prune) {
            c.phi = std::exp(c.log_phi);
            c.xi = std::exp(c.log_xi);
            out.push_back(std::move(c));
        }
        int pos = n - 1;
        while (pos >= 0) {
            if (++idx[pos] < chain.links[pos].terms().size()) break;
            idx[pos] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    if (out.empty())
        throw std::domain_error("enumerate_combos: pruning removed every combo");
    return out;
}

ProductStats::ProductStats(const CascadeChain& chain, double prune,
                           meijer::EvalCache* shared_cache)
    : n_links_(chain.size()), combos_(enumerate_combos(chain, prune)) {
    if (shared_cache != nullptr) {
        cache_ = shared_cache;
    } else {
        owned_cache_ = std::make_unique<meijer::EvalCache>();
        cache_ = owned_cache_.get();
    }
}

double ProductStats::combo_sum(
    const std::function<meijer::MeijerGSpec(const TermCombo&)>& spec_of,
    const std::function<double(const TermCombo&)>& z_of,
    const std::function<double(const TermCombo&)>& log_pref_of) const {
    double acc = 0.0;
    for (const auto& c : combos_) {
        const auto& ev = cache_->get(spec_of(c));
        double log_scale = 0.0;
        const double mant = ev.eval_scaled(z_of(c), &log_scale);
        if (mant == 0.0) continue;
        acc += mant * std::exp(c.log_phi + log_pref_of(c) + log_scale);
    }
    return acc;
}

namespace {

meijer::MeijerGSpec product_pdf_spec(std::span<const double> betas) {
    meijer::MeijerGSpec s;
    const int n = static_cast<int>(betas.size());
    s.m = n, s.n = 0, s.p = 0, s.q = n;
    for (double b : betas) s.b.push_back(b - 1.0);
    return s;
}

meijer::MeijerGSpec product_cdf_spec(std::span<const double> betas) {
    meijer::MeijerGSpec s;
    const int n = static_cast<int>(betas.size());
    s.m = n, s.n = 1, s.p = 1, s.q = n + 1;
    s.a = {0.0};
    for (double b : betas) s.b.push_back(b - 1.0);
    s.b.push_back(-1.0);
    return s;
}

meijer::MeijerGSpec product_mgf_spec(std::span<const double> betas) {
    meijer::MeijerGSpec s;
    const int n = static_cast<int>(betas.size());
    s.m = n, s.n = 1, s.p = 1, s.q = n;
    s.a = {0.0};
    for (double b : betas) s.b.push_back(b - 1.0);
    return s;
}

}  // namespace

double ProductStats::pdf(double y) const {
    if (!(y > 0.0)) throw std::domain_error("product pdf: requires y > 0");
    return combo_sum([](const TermCombo& c) { return product_pdf_spec(c.betas); },
                     [y](const TermCombo& c) { return c.xi * y; },
                     [](const TermCombo&) { return 0.0; });
}

double ProductStats::cdf(double y) const {
    if (!(y > 0.0)) throw std::domain_error("product cdf: requires y > 0");
    const double ly = std::log(y);
    return combo_sum([](const TermCombo& c) { return product_cdf_spec(c.betas); },
                     [y](const TermCombo& c) { return c.xi * y; },
                     [ly](const TermCombo&) { return ly; });
}

double ProductStats::mgf(double s) const {
    if (!(s > 0.0)) throw std::domain_error("product mgf: requires s > 0");
    const double ls = std::log(s);
    return combo_sum([](const TermCombo& c) { return product_mgf_spec(c.betas); },
                     [s](const TermCombo& c) { return c.xi / s; },
                     [ls](const TermCombo&) { return -ls; });
}

RatioStats::RatioStats(const RatioOfChains& ratio, double prune,
                       meijer::EvalCache* shared_cache) {
    n_ = ratio.numerator.size();
    m_ = ratio.denominator.size();
    // prune on the joint mass product
    const auto num = enumerate_combos(ratio.numerator, 0.0);
    const auto den = enumerate_combos(ratio.denominator, 0.0);
    if (num.size() * den.size() > kComboCap)
        throw std::length_error("RatioStats: combination count above cap");
    for (const auto& cn : num)
        for (const auto& cd : den) {
            if (cn.mass * cd.mass < prune) continue;
            Pair p;
            p.log_pref = cn.log_phi + cd.log_phi - 2.0 * cd.log_xi;
            p.z_base = std::exp(cn.log_xi - cd.log_xi);
            p.betas_num = cn.betas;
            p.betas_den = cd.betas;
            pairs_.push_back(std::move(p));
        }
    if (pairs_.empty())
        throw std::domain_error("RatioStats: pruning removed every combo pair");
    if (shared_cache != nullptr) {
        cache_ = shared_cache;
    } else {
        owned_cache_ = std::make_unique<meijer::EvalCache>();
        cache_ = owned_cache_.get();
    }
}

double RatioStats::pair_sum(
    const std::function<meijer::MeijerGSpec(const Pair&)>& spec_of,
    const std::function<double(const Pair&)>& z_of) const {
    double acc = 0.0;
    for (const auto& p : pairs_) {
        meijer::MeijerGSpec spec = spec_of(p);
        double z = z_of(p);
        if (spec.p > spec.q) {
            spec = meijer::reflect(spec);
            z = 1.0 / z;
        }
        const auto& ev = cache_->get(spec);
        double log_scale = 0.0;
        const double mant = ev.eval_scaled(z, &log_scale);
        if (mant == 0.0) continue;
        acc += mant * std::exp(p.log_pref + log_scale);
    }
    return acc;
}

namespace {

// Kernel of Theorem-2 statistics: numerator gammas Gamma(beta_i - 1 + t),
// denominator-side gammas Gamma(beta_j + 1 - t), i.e. b = beta_num - 1,
// a = -beta_den; extra (a, b) entries append 0 / -1 style rows.
meijer::MeijerGSpec ratio_spec(std::span<const double> bn, std::span<const double> bd,
                               bool cdf_like, bool keep_last_b) {
    meijer::MeijerGSpec s;
    const int n = static_cast<int>(bn.size());
    const int m = static_cast<int>(bd.size());
    s.m = n;
    s.n = cdf_like ? m + 1 : m;
    s.p = cdf_like ? m + 1 : m;
    s.q = keep_last_b ? n + 1 : n;
    for (double b : bd) s.a.push_back(-b);
    if (cdf_like) s.a.push_back(0.0);
    for (double b : bn) s.b.push_back(b - 1.0);
    if (keep_last_b) s.b.push_back(-1.0);
    return s;
}

}  // namespace

double RatioStats::pdf(double x) const {
    if (!(x > 0.0)) throw std::domain_error("ratio pdf: requires x > 0");
    return pair_sum(
        [](const Pair& p) { return ratio_spec(p.betas_num, p.betas_den, false, false); },
        [x](const Pair& p) { return p.z_base * x; });
}

double RatioStats::cdf(double x) const {
    if (!(x > 0.0)) throw std::domain_error("ratio cdf: requires x > 0");
    double acc = 0.0;
    for (const auto& p : pairs_) {
        meijer::MeijerGSpec spec = ratio_spec(p.betas_num, p.betas_den, true, true);
        double z = p.z_base * x;
        if (spec.p > spec.q) {
            spec = meijer::reflect(spec);
            z = 1.0 / z;
        }
        const auto& ev = cache_->get(spec);
        double log_scale = 0.0;
        const double mant = ev.eval_scaled(z, &log_scale);
        if (mant == 0.0) continue;
        acc += mant * std::exp(p.log_pref + std::log(x) + log_scale);
    }
    return std::clamp(acc, 0.0, 1.0);
}

double RatioStats::mgf(double s) const {
    if (!(s > 0.0)) throw std::domain_error("ratio mgf: requires s > 0");
    double acc = 0.0;
    for (const auto& p : pairs_) {
        meijer::MeijerGSpec spec = ratio_spec(p.betas_num, p.betas_den, true, false);
        double z = p.z_base / s;
        if (spec.p > spec.q) {
            spec = meijer::reflect(spec);
            z = 1.0 / z;
        }
        const auto& ev = cache_->get(spec);
        double log_scale = 0.0;
        const double mant = ev.eval_scaled(z, &log_scale);
        if (mant == 0.0) continue;
        acc += mant * std::exp(p.log_pref - std::log(s) + log_scale);
    }
    return acc;
}

double product_pdf(const CascadeChain& chain, double y) { return ProductStats(chain).pdf(y); }
double product_cdf(const CascadeChain& chain, double y) { return ProductStats(chain).cdf(y); }
double product_mgf(const CascadeChain& chain, double s) { return ProductStats(chain).mgf(s); }
double ratio_pdf(const RatioOfChains& r, double x) { return RatioStats(r).pdf(x); }
double ratio_cdf(const RatioOfChains& r, double x) { return RatioStats(r).cdf(x); }
double ratio_mgf(const RatioOfChains& r, double s) { return RatioStats(r).mgf(s); }

}  // namespace mgc::cascade
