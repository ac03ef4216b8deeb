#pragma once

#include <vector>

#include "mgcascade/cascade.hpp"

namespace mgc::metrics {

enum class Modulation {
    NcBfsk,        // g1 = 0.5
    Dbpsk,         // g1 = 1
    CoherentBfsk,  // g2 = 0.5
    Bpsk,          // g2 = 1
    BfskMinCorr,   // g2 = 0.715
    Mpsk,          // g = sin^2(pi/M)
    Mqam,          // g = 3/(2(M-1)), c = 1 - 1/sqrt(M)
};

struct ModulationScheme {
    Modulation kind;
    int order = 0;  // M for Mpsk/Mqam

    double g() const;
    double qam_c() const;
    void validate() const;
};

struct SecrecyScenario {
    cascade::CascadeChain main;     // destination
    cascade::CascadeChain wiretap;  // eavesdropper
    double rate_threshold = 0.0;    // R_th >= 0; epsilon = 2^R_th
};

// Per-hop signal-to-interference ratios X_r = (fading * shadowing) / interference.
struct MultihopSystem {
    std::vector<cascade::RatioOfChains> hops;
};

double outage(const cascade::ProductStats& stats, double gamma_th);
double outage(const cascade::CascadeChain& chain, double gamma_th);

double abep_noncoherent(const cascade::ProductStats& stats, const ModulationScheme& scheme);
double abep_noncoherent(const cascade::CascadeChain& chain, const ModulationScheme& scheme);

// Closed form with a built-in cross-check against the finite-angle MGF
// integral (64-point Gauss-Legendre); disagreement beyond 1e-6 throws.
double abep_coherent(const cascade::ProductStats& stats, const ModulationScheme& scheme);
double abep_coherent(const cascade::CascadeChain& chain, const ModulationScheme& scheme);

double asep_mpsk(const cascade::ProductStats& stats, int order);
double asep_mpsk(const cascade::CascadeChain& chain, int order);

double asep_mqam(const cascade::ProductStats& stats, int order);
double asep_mqam(const cascade::CascadeChain& chain, int order);

// Effective rate -(1/A) log2 E[(1+Y)^-A].
double effective_rate(const cascade::ProductStats& stats, double delay_exponent);
double effective_rate(const cascade::CascadeChain& chain, double delay_exponent);

// Energy-detector AUC under AWGN at instantaneous SNR y with
// time-bandwidth product u.
double auc_awgn(double y, int u);

double avg_auc(const cascade::ProductStats& stats, int u);
double avg_auc(const cascade::CascadeChain& chain, int u);

double multihop_outage(const MultihopSystem& sys, double gamma_th);

double sop_lower(const SecrecyScenario& sc);
double pnsc(const SecrecyScenario& sc);

}  // namespace mgc::metrics
