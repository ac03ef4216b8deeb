#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace mgc {

// One Gamma component of a mixture: sigma * g^(beta-1) * exp(-zeta*g).
struct MGTerm {
    double sigma;
    double beta;
    double zeta;
};

struct RawTerm {
    double theta;  // unnormalized weight
    double beta;
    double zeta;
};

struct LogRawTerm {
    double log_theta;
    double beta;
    double zeta;
};

// Finite mixture of Gamma densities over SNR, normalized to unit mass:
// sum_l sigma_l Gamma(beta_l) zeta_l^{-beta_l} = 1.
class MixtureGamma {
public:
    MixtureGamma(std::vector<MGTerm> terms, std::string label = "");

    // Normalizes raw weights so the mixture has unit mass (computed in
    // log space).
    static MixtureGamma normalize(std::span<const RawTerm> raw, std::string label = "");
    static MixtureGamma normalize(std::span<const LogRawTerm> raw, std::string label = "");

    double pdf(double g) const;
    double cdf(double g) const;
    double mgf(double s) const;
    double mellin(double n) const;

    // i.i.d. draws, deterministic for a given seed.
    std::vector<double> sample(std::size_t count, std::uint64_t seed) const;
    // Draws using a caller-provided engine-state position; used by the
    // simulation module to run fixed-size blocks.
    void sample_into(std::span<double> out, std::uint64_t seed) const;

    const std::vector<MGTerm>& terms() const { return terms_; }
    const std::string& label() const { return label_; }
    // Component masses sigma_l Gamma(beta_l) zeta_l^{-beta_l}; sum to 1.
    const std::vector<double>& masses() const { return masses_; }
    double min_beta() const { return min_beta_; }
    double min_zeta() const { return min_zeta_; }
    double mean() const;

    // Plain-text record: "mg <label> <L>" then L lines "sigma beta zeta".
    void save(std::ostream& os) const;
    static MixtureGamma load(std::istream& is);

private:
    std::vector<MGTerm> terms_;
    std::vector<double> masses_;
    std::vector<double> cum_masses_;
    std::string label_;
    double min_beta_ = 0.0;
    double min_zeta_ = 0.0;
};

// Mean over the grid of (f(g) - h(g))^2.
double mse_between(const std::function<double(double)>& f,
                   const std::function<double(double)>& h,
                   std::span<const double> grid);

// 2000 uniform points on [0, 5*gbar], offset half a step from 0.
std::vector<double> default_mse_grid(double gbar);

}  // namespace mgc
