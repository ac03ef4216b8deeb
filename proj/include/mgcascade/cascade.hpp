#pragma once

#include <functional>
#include <span>
#include <vector>

#include "mgcascade/meijer.hpp"
#include "mgcascade/mixture_gamma.hpp"

namespace mgc::cascade {

// Product of independent MG variates, one per link.
struct CascadeChain {
    std::vector<MixtureGamma> links;
    int size() const { return static_cast<int>(links.size()); }
};

// X = product(numerator links) / product(denominator links).
struct RatioOfChains {
    CascadeChain numerator;
    CascadeChain denominator;
};

// One selection of a term from every link: Phi = prod sigma/zeta^(beta-1),
// Xi = prod zeta, mass = prod component masses (for pruning).
struct TermCombo {
    double phi;
    double xi;
    double log_phi;
    double log_xi;
    double mass;
    std::vector<double> betas;
};

inline constexpr double kDefaultPrune = 1e-12;

// All term selections in lexicographic link-index order, dropping
// combos whose mass product falls below prune (total mass is 1).
std::vector<TermCombo> enumerate_combos(const CascadeChain& chain, double prune);

// Closed-form statistics of the product variate. Holds the combo list
// and a contour-evaluator cache so one instance serves a whole sweep.
class ProductStats {
public:
    explicit ProductStats(const CascadeChain& chain, double prune = kDefaultPrune,
                          meijer::EvalCache* shared_cache = nullptr);

    double pdf(double y) const;
    double cdf(double y) const;
    double mgf(double s) const;

    int links() const { return n_links_; }
    const std::vector<TermCombo>& combos() const { return combos_; }

    // sum over combos of exp(log_phi + log_pref(combo)) * G[spec_of(combo), z_of(combo)];
    // the generic kernel behind pdf/cdf/mgf and the metric closed forms.
    double combo_sum(
        const std::function<meijer::MeijerGSpec(const TermCombo&)>& spec_of,
        const std::function<double(const TermCombo&)>& z_of,
        const std::function<double(const TermCombo&)>& log_pref_of) const;

private:
    int n_links_;
    std::vector<TermCombo> combos_;
    std::unique_ptr<meijer::EvalCache> owned_cache_;
    meijer::EvalCache* cache_;
};

// Closed-form statistics of the ratio variate.
class RatioStats {
public:
    explicit RatioStats(const RatioOfChains& ratio, double prune = kDefaultPrune,
                        meijer::EvalCache* shared_cache = nullptr);

    double pdf(double x) const;
    double cdf(double x) const;
    double mgf(double s) const;

private:
    struct Pair {
        double log_pref;   // log(Phi_N Phi_M / Xi_M^2)
        double z_base;     // Xi_N / Xi_M
        std::vector<double> betas_num;
        std::vector<double> betas_den;
    };
    double pair_sum(
        const std::function<meijer::MeijerGSpec(const Pair&)>& spec_of,
        const std::function<double(const Pair&)>& z_of) const;

    int n_ = 0, m_ = 0;
    std::vector<Pair> pairs_;
    std::unique_ptr<meijer::EvalCache> owned_cache_;
    meijer::EvalCache* cache_;
};

// One-shot forms of the above.
double product_pdf(const CascadeChain& chain, double y);
double product_cdf(const CascadeChain& chain, double y);
double product_mgf(const CascadeChain& chain, double s);
double ratio_pdf(const RatioOfChains& ratio, double x);
double ratio_cdf(const RatioOfChains& ratio, double x);
double ratio_mgf(const RatioOfChains& ratio, double s);

}  // namespace mgc::cascade
