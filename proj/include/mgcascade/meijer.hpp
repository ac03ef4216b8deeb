#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <unordered_map>
#include <vector>

namespace mgc::meijer {

// Order indices and parameters of one univariate G^{m,n}_{p,q} instance
// in the convention whose Mellin-Barnes kernel is
//   prod_{j<=m} Gamma(b_j + s) prod_{j<=n} Gamma(1 - a_j - s)
//   / [ prod_{j>n} Gamma(a_j + s) prod_{j>m} Gamma(1 - b_j - s) ] * z^{-s}.
struct MeijerGSpec {
    int m = 0, n = 0, p = 0, q = 0;
    std::vector<double> a;
    std::vector<double> b;

    void validate() const;
    // True when some pair b_i, b_j (i, j <= m) differs by an exact
    // integer, which collides residue-series poles.
    bool degenerate() const;
    bool operator==(const MeijerGSpec&) const = default;
};

// Reflection identity: G^{m,n}_{p,q}[z | a; b] = G^{n,m}_{q,p}[1/z | 1-b; 1-a].
// The caller pairs the returned spec with argument 1/z.
MeijerGSpec reflect(const MeijerGSpec& spec);

// Mellin-Barnes integral along the vertical line separating the pole
// sets, by trapezoidal summation with self-validating truncation.
double eval_contour(const MeijerGSpec& spec, double z);

// Residue series over the left poles; requires q > p and simple poles
// (non-degenerate b). Converges for all z > 0.
double eval_residues(const MeijerGSpec& spec, double z);

// Dispatch: reflects when p > q, then uses the residue series when its
// preconditions hold, the contour otherwise. With cross-checking
// enabled, evaluates both legal paths and verifies 1e-8 agreement.
double eval(const MeijerGSpec& spec, double z);

// Enables redundant two-path evaluation inside eval(). Off by default;
// the test suites and the selftest verb switch it on.
void set_cross_check(bool enabled);
bool cross_check_enabled();

// Precomputed contour samples for one spec, reusable across many
// arguments z with |ln z| <= log_z_budget. The gamma-function part of
// the integrand does not depend on z, so each eval() costs only one
// complex exponential per sample.
class ContourEvaluator {
public:
    explicit ContourEvaluator(MeijerGSpec spec, double log_z_budget = 40.0);
    double eval(double z) const;
    // Mantissa/exponent form: G = mantissa * exp(log_scale).
    double eval_scaled(double z, double* log_scale) const;
    const MeijerGSpec& spec() const { return spec_; }
    std::size_t sample_count() const { return gammas_.size(); }
    // Integrand samples along the contour (for diagnostics).
    std::vector<std::pair<double, std::complex<double>>> integrand_samples(double z) const;

private:
    MeijerGSpec spec_;
    double c_ = 0.0;        // contour abscissa
    double h_ = 0.0;        // step in Im s
    double log_budget_;
    double log_scale_ = 0.0;  // peak log-magnitude of the gamma part
    std::size_t first_check_ = 0;  // index corresponding to T (samples extend to 2T)
    std::vector<std::complex<double>> gammas_;  // scaled gamma-part samples
};

// Shared cache of ContourEvaluators keyed by canonicalized spec.
// Not thread-safe; intended for use within a single evaluation pass.
class EvalCache {
public:
    explicit EvalCache(double log_z_budget = 40.0) : budget_(log_z_budget) {}
    const ContourEvaluator& get(const MeijerGSpec& spec);

private:
    struct Hash {
        std::size_t operator()(const MeijerGSpec& s) const;
    };
    double budget_;
    std::unordered_map<MeijerGSpec, std::unique_ptr<ContourEvaluator>, Hash> cache_;
};

}  // namespace mgc::meijer
