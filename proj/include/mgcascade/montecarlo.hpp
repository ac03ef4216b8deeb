#pragma once

#include <cstdint>
#include <vector>

#include "mgcascade/cascade.hpp"
#include "mgcascade/metrics.hpp"

namespace mgc::mc {

struct McReport {
    double estimate = 0.0;
    double std_error = 0.0;
    std::size_t draws = 0;
    std::uint64_t seed = 0;
};

// Stream seed for link i of a chain; identity for i = 0 so a one-link
// product reproduces MixtureGamma::sample exactly.
std::uint64_t link_seed(std::uint64_t seed, std::size_t index);

// Element-wise product of independent per-link draws.
std::vector<double> sample_product(const cascade::CascadeChain& chain, std::size_t count,
                                   std::uint64_t seed);

// Independent numerator/denominator substreams.
std::vector<double> sample_ratio(const cascade::RatioOfChains& ratio, std::size_t count,
                                 std::uint64_t seed);

enum class Kernel {
    Outage,           // 1{y < gamma_th}
    AbepNoncoherent,  // 0.5 exp(-g1 y)
    AbepCoherent,     // Q(sqrt(2 g2 y))
    AsepMpsk,         // (1/pi) int_0^{pi-pi/M} exp(-g y / sin^2) (memoized)
    AsepMqam,         // 4cQ(sqrt(2gy)) - 4c^2 Q^2(sqrt(2gy))
    EffectiveRate,    // (1+y)^-A, reported as -(1/A) log2(mean)
    Auc,              // AUC(y, u)
};

struct KernelParams {
    double gamma_th = 1.0;
    double g1 = 1.0;
    double g2 = 1.0;
    int order = 4;  // M
    double delay_exponent = 1.0;
    int u = 1;
};

// Sample mean of the conditional kernel over product draws, with
// std_error = sample std / sqrt(count). Deterministic per (config,
// seed) and independent of worker count (fixed 64k-draw blocks).
McReport mc_metric(Kernel kernel, const cascade::CascadeChain& chain,
                   const KernelParams& params, std::size_t count, std::uint64_t seed);

// Outage kernel over ratio draws.
McReport mc_ratio_outage(const cascade::RatioOfChains& ratio, double gamma_th,
                         std::size_t count, std::uint64_t seed);

McReport mc_multihop_outage(const metrics::MultihopSystem& sys, double gamma_th,
                            std::size_t count, std::uint64_t seed);

McReport mc_sop_lower(const metrics::SecrecyScenario& sc, std::size_t count,
                      std::uint64_t seed);

McReport mc_pnsc(const metrics::SecrecyScenario& sc, std::size_t count, std::uint64_t seed);

// Largest |empirical - reference| CDF gap over the sorted draws.
double ecdf_sup_distance(std::vector<double> draws,
                         const std::function<double(double)>& reference_cdf);

}  // namespace mgc::mc
