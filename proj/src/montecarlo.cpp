#include "mgcascade/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "mgcascade/specfun.hpp"

namespace mgc::mc {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr std::size_t kBlock = 1 << 16;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// MPSK conditional kernel with 64-point Gauss-Legendre per node,
// memoized on a log grid of y; direct evaluation off-grid ends of the
// table.
class MpskKernel {
public:
    MpskKernel(double g, int order) : g_(g), m_(order), rule_(specfun::gauss_legendre(64)) {}

    double direct(double y) const {
        const double hi = kPi - kPi / m_;
        double acc = 0.0;
        for (std::size_t i = 0; i < rule_.nodes.size(); ++i) {
            const double theta = 0.5 * hi * (1.0 + rule_.nodes[i]);
            const double s2 = std::sin(theta) * std::sin(theta);
            acc += rule_.weights[i] * std::exp(-g_ * y / s2);
        }
        return 0.5 * hi * acc / kPi;
    }

    void build_table(double ymin, double ymax) {
        lo_ = std::log(std::max(ymin, 1e-12));
        hi_ = std::log(std::max(ymax, 2e-12));
        table_.resize(kTable);
        for (int i = 0; i < kTable; ++i)
            table_[i] = direct(std::exp(lo_ + (hi_ - lo_) * i / (kTable - 1.0)));
    }

    double operator()(double y) const {
        const double ly = std::log(std::max(y, 1e-300));
        if (table_.empty() || ly <= lo_ || ly >= hi_) return direct(y);
        const double pos = (ly - lo_) / (hi_ - lo_) * (kTable - 1.0);
        const int i = std::min(static_cast<int>(pos), kTable - 2);
        const double f = pos - i;
        return table_[i] * (1.0 - f) + table_[i + 1] * f;
    }

private:
    static constexpr int kTable = 4096;
    double g_;
    int m_;
    specfun::QuadratureRule rule_;
    double lo_ = 0.0, hi_ = 0.0;
    std::vector<double> table_;
};

struct Moments {
    double sum = 0.0;
    double sum_sq = 0.0;
};

// Fixed partition into kBlock-draw blocks with per-block seeds; blocks
// are distributed over threads but reduced in block order, so reports
// do not depend on the worker count.
template <typename BlockFn>
Moments run_blocks(std::size_t count, std::uint64_t seed, BlockFn&& block_fn) {
    const std::size_t n_blocks = (count + kBlock - 1) / kBlock;
    std::vector<Moments> partial(n_blocks);
    const unsigned workers =
        std::max(1u, std::min<unsigned>(std::thread::hardware_concurrency(),
                                        static_cast<unsigned>(n_blocks)));
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t b = next.fetch_add(1);
            if (b >= n_blocks) return;
            const std::size_t lo = b * kBlock;
            const std::size_t len = std::min(kBlock, count - lo);
            partial[b] = block_fn(splitmix64(seed ^ (0xb10c0000u + b)), len);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    Moments total;
    for (const auto& m : partial) {
        total.sum += m.sum;
        total.sum_sq += m.sum_sq;
    }
    return total;
}

McReport report_from(const Moments& m, std::size_t count, std::uint64_t seed) {
    McReport r;
    r.draws = count;
    r.seed = seed;
    r.estimate = m.sum / count;
    const double var = std::max(0.0, m.sum_sq / count - r.estimate * r.estimate);
    r.std_error = std::sqrt(var / count);
    return r;
}

void product_block(const cascade::CascadeChain& chain, std::uint64_t block_seed,
                   std::span<double> out) {
    std::vector<double> tmp(out.size());
    for (std::size_t i = 0; i < chain.links.size(); ++i) {
        chain.links[i].sample_into(tmp, link_seed(block_seed, i));
        if (i == 0)
            std::copy(tmp.begin(), tmp.end(), out.begin());
        else
            for (std::size_t k = 0; k < out.size(); ++k) out[k] *= tmp[k];
    }
}

}  // namespace

std::uint64_t link_seed(std::uint64_t seed, std::size_t index) {
    return index == 0 ? seed : splitmix64(seed + 0x9e3779b97f4a7c15ull * index);
}

std::vector<double> sample_product(const cascade::CascadeChain& chain, std::size_t count,
                                   std::uint64_t seed) {
    if (count < 1) throw std::domain_error("sample_product: count must be >= 1");
    if (chain.links.empty()) throw std::domain_error("sample_product: empty chain");
    std::vector<double> out(count);
    product_block(chain, seed, out);
    return out;
}

std::vector<double> sample_ratio(const cascade::RatioOfChains& ratio, std::size_t count,
                                 std::uint64_t seed) {
    if (count < 1) throw std::domain_error("sample_ratio: count must be >= 1");
    auto num = sample_product(ratio.numerator, count, splitmix64(seed ^ 0x5eed0001ull));
    const auto den = sample_product(ratio.denominator, count, splitmix64(seed ^ 0x5eed0002ull));
    for (std::size_t i = 0; i < count; ++i) num[i] /= den[i];
    return num;
}

McReport mc_metric(Kernel kernel, const cascade::CascadeChain& chain,
                   const KernelParams& params, std::size_t count, std::uint64_t seed) {
    if (count < 1) throw std::domain_error("mc_metric: count must be >= 1");
    const int order = std::max(params.order, 2);
    MpskKernel mpsk(std::pow(std::sin(kPi / order), 2), order);
    if (kernel == Kernel::AsepMpsk) {
        // table over the plausible draw range: rough scale from link means
        double mean = 1.0;
        for (const auto& l : chain.links) mean *= l.mean();
        mpsk.build_table(mean * 1e-9, mean * 1e4);
    }
    const double qam_g = 1.5 / (params.order - 1.0);
    const double qam_c = 1.0 - 1.0 / std::sqrt(static_cast<double>(params.order));
    auto kernel_of = [&](double y) -> double {
        switch (kernel) {
            case Kernel::Outage: return y < params.gamma_th ? 1.0 : 0.0;
            case Kernel::AbepNoncoherent: return 0.5 * std::exp(-params.g1 * y);
            case Kernel::AbepCoherent:
                return specfun::gaussian_q(std::sqrt(2.0 * params.g2 * y));
            case Kernel::AsepMpsk: return mpsk(y);
            case Kernel::AsepMqam: {
                const double q = specfun::gaussian_q(std::sqrt(2.0 * qam_g * y));
                return 4.0 * qam_c * q - 4.0 * qam_c * qam_c * q * q;
            }
            case Kernel::EffectiveRate:
                return std::pow(1.0 + y, -params.delay_exponent);
            case Kernel::Auc: return metrics::auc_awgn(y, params.u);
        }
        throw std::domain_error("mc_metric: unknown kernel");
    };
    const Moments m = run_blocks(count, seed, [&](std::uint64_t bseed, std::size_t len) {
        std::vector<double> ys(len);
        product_block(chain, bseed, ys);
        Moments mm;
        for (double y : ys) {
            const double v = kernel_of(y);
            mm.sum += v;
            mm.sum_sq += v * v;
        }
        return mm;
    });
    McReport r = report_from(m, count, seed);
    if (kernel == Kernel::EffectiveRate) {
        // delta method through R = -(1/A) log2(mean)
        const double a = params.delay_exponent;
        r.std_error = r.std_error / (a * r.estimate * std::log(2.0));
        r.estimate = -std::log2(r.estimate) / a;
    }
    return r;
}

McReport mc_ratio_outage(const cascade::RatioOfChains& ratio, double gamma_th,
                         std::size_t count, std::uint64_t seed) {
    const Moments m = run_blocks(count, seed, [&](std::uint64_t bseed, std::size_t len) {
        std::vector<double> num(len), den(len);
        product_block(ratio.numerator, splitmix64(bseed ^ 0x5eed0001ull), num);
        product_block(ratio.denominator, splitmix64(bseed ^ 0x5eed0002ull), den);
        Moments mm;
        for (std::size_t i = 0; i < len; ++i) {
            const double v = num[i] < gamma_th * den[i] ? 1.0 : 0.0;
            mm.sum += v;
            mm.sum_sq += v * v;
        }
        return mm;
    });
    return report_from(m, count, seed);
}

McReport mc_multihop_outage(const metrics::MultihopSystem& sys, double gamma_th,
                            std::size_t count, std::uint64_t seed) {
    if (sys.hops.empty()) throw std::domain_error("mc_multihop_outage: no hops");
    const Moments m = run_blocks(count, seed, [&](std::uint64_t bseed, std::size_t len) {
        std::vector<char> out_flag(len, 0);
        std::vector<double> num(len), den(len);
        for (std::size_t h = 0; h < sys.hops.size(); ++h) {
            const std::uint64_t hs = splitmix64(bseed + 0x40f00000ull * (h + 1));
            product_block(sys.hops[h].numerator, splitmix64(hs ^ 0x5eed0001ull), num);
            product_block(sys.hops[h].denominator, splitmix64(hs ^ 0x5eed0002ull), den);
            for (std::size_t i = 0; i < len; ++i)
                if (num[i] < gamma_th * den[i]) out_flag[i] = 1;
        }
        Moments mm;
        for (char f : out_flag) {
            mm.sum += f;
            mm.sum_sq += f;
        }
        return mm;
    });
    return report_from(m, count, seed);
}

McReport mc_sop_lower(const metrics::SecrecyScenario& sc, std::size_t count,
                      std::uint64_t seed) {
    return mc_ratio_outage({sc.main, sc.wiretap}, std::exp2(sc.rate_threshold), count, seed);
}

McReport mc_pnsc(const metrics::SecrecyScenario& sc, std::size_t count, std::uint64_t seed) {
    McReport r = mc_ratio_outage({sc.main, sc.wiretap}, 1.0, count, seed);
    r.estimate = 1.0 - r.estimate;
    return r;
}

double ecdf_sup_distance(std::vector<double> draws,
                         const std::function<double(double)>& reference_cdf) {
    std::sort(draws.begin(), draws.end());
    const double n = static_cast<double>(draws.size());
    double sup = 0.0;
    for (std::size_t i = 0; i < draws.size(); ++i) {
        const double f = reference_cdf(draws[i]);
        sup = std::max(sup, std::abs((i + 1) / n - f));
        sup = std::max(sup, std::abs(i / n - f));
    }
    return sup;
}

}  // namespace mgc::mc
