#include "mgcascade/meijer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <string>

#include "mgcascade/errors.hpp"
#include "mgcascade/specfun.hpp"

namespace mgc::meijer {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

std::atomic<bool> g_cross_check{false};

// Pole-separation bounds: left poles at -b_j - k (j <= m), right poles
// at 1 - a_j + k (j <= n).
struct Strip {
    double left;   // sup of left pole positions (-inf if m = 0)
    double right;  // inf of right pole positions (+inf if n = 0)
};

Strip pole_strip(const MeijerGSpec& s) {
    Strip st{-std::numeric_limits<double>::infinity(),
             std::numeric_limits<double>::infinity()};
    for (int j = 0; j < s.m; ++j) st.left = std::max(st.left, -s.b[j]);
    for (int j = 0; j < s.n; ++j) st.right = std::min(st.right, 1.0 - s.a[j]);
    return st;
}

// log Gamma part of the Mellin-Barnes integrand at s.
std::complex<double> log_kernel(const MeijerGSpec& sp, std::complex<double> s) {
    std::complex<double> acc = 0.0;
    for (int j = 0; j < sp.q; ++j) {
        if (j < sp.m)
            acc += specfun::log_gamma(sp.b[j] + s);
        else
            acc -= specfun::log_gamma(1.0 - sp.b[j] - s);
    }
    for (int j = 0; j < sp.p; ++j) {
        if (j < sp.n)
            acc += specfun::log_gamma(1.0 - sp.a[j] - s);
        else
            acc -= specfun::log_gamma(sp.a[j] + s);
    }
    return acc;
}

}  // namespace

void MeijerGSpec::validate() const {
    if (m < 0 || n < 0 || p < 0 || q < 0 || m > q || n > p)
        throw std::domain_error("MeijerGSpec: requires 0 <= m <= q, 0 <= n <= p");
    if (static_cast<int>(a.size()) != p || static_cast<int>(b.size()) != q)
        throw std::domain_error("MeijerGSpec: parameter list lengths must equal p, q");
}

bool MeijerGSpec::degenerate() const {
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            const double d = b[i] - b[j];
            if (std::abs(d - std::round(d)) < 1e-9) return true;
        }
    return false;
}

MeijerGSpec reflect(const MeijerGSpec& s) {
    s.validate();
    MeijerGSpec r;
    r.m = s.n;
    r.n = s.m;
    r.p = s.q;
    r.q = s.p;
    r.a.reserve(s.q);
    for (double b : s.b) r.a.push_back(1.0 - b);
    r.b.reserve(s.p);
    for (double a : s.a) r.b.push_back(1.0 - a);
    return r;
}

ContourEvaluator::ContourEvaluator(MeijerGSpec spec, double log_z_budget)
    : spec_(std::move(spec)), log_budget_(std::max(log_z_budget, 5.0)) {
    spec_.validate();
    const Strip st = pole_strip(spec_);
    double d;  // distance from the contour to the nearest pole
    if (spec_.m == 0 && spec_.n == 0)
        throw NoSeparatingContourError("ContourEvaluator: m = n = 0 has no pole structure");
    if (spec_.n == 0) {
        c_ = st.left + 0.5;
        d = 0.5;
    } else if (spec_.m == 0) {
        c_ = st.right - 0.5;
        d = 0.5;
    } else {
        const double width = st.right - st.left;
        if (width <= 1e-3)
            throw NoSeparatingContourError(
                "ContourEvaluator: no separating line, strip width " + std::to_string(width));
        c_ = 0.5 * (st.left + st.right);
        d = 0.5 * width;
    }
    // decay exponent of the gamma part: exp(-kappa*pi*|t|/2)
    const int kappa = 2 * (spec_.m + spec_.n) - spec_.p - spec_.q;
    if (kappa <= 0)
        throw ConvergenceError("ContourEvaluator: integrand does not decay (kappa <= 0)");
    // trapezoid step: strip half-width d, perturbed by |ln z| <= budget
    h_ = std::min(2.0 * kPi * d / (55.0 + d * log_budget_), 0.35);

    // scan for the truncation point T: log-magnitude 46 below the peak,
    // then keep samples out to 2T for the self-check
    std::vector<std::complex<double>> logs;
    double peak = -std::numeric_limits<double>::infinity();
    std::size_t k = 0, k_trunc = 0;
    const double decay_guard = 46.0;
    for (;;) {
        const std::complex<double> s(c_, k * h_);
        logs.push_back(log_kernel(spec_, s));
        peak = std::max(peak, logs.back().real());
        if (logs.back().real() < peak - decay_guard && k * h_ > 5.0 * d) {
            k_trunc = k;
            break;
        }
        if (++k > 2000000)
            throw ConvergenceError("ContourEvaluator: truncation scan exceeded cap");
    }
    first_check_ = k_trunc;
    for (std::size_t j = k_trunc + 1; j <= 2 * k_trunc; ++j)
        logs.push_back(log_kernel(spec_, {c_, j * h_}));
    log_scale_ = peak;
    gammas_.resize(logs.size());
    for (std::size_t j = 0; j < logs.size(); ++j)
        gammas_[j] = std::exp(logs[j] - log_scale_);
}

double ContourEvaluator::eval_scaled(double z, double* log_scale) const {
    if (!(z > 0.0)) throw std::domain_error("ContourEvaluator: requires z > 0");
    const double w = std::log(z);
    if (std::abs(w) > log_budget_) {
        // outside the precomputed budget: build a throwaway evaluator
        ContourEvaluator wide(spec_, std::abs(w) + 10.0);
        return wide.eval_scaled(z, log_scale);
    }
    // integral = z^{-c}/pi * Re[ h * (g_0/2 + sum_k g_k e^{-i t_k w}) ]
    const std::complex<double> rot = std::polar(1.0, -h_ * w);
    std::complex<double> phase = rot;
    std::complex<double> acc = 0.5 * gammas_[0];
    std::complex<double> acc_t = acc;
    double tail_mag = 0.0;
    for (std::size_t k = 1; k < gammas_.size(); ++k) {
        acc += gammas_[k] * phase;
        phase *= rot;
        if (k == first_check_) acc_t = acc;
        if (k + 3 >= gammas_.size()) tail_mag += std::abs(gammas_[k]);
    }
    double scale_mag = 0.0;
    for (const auto& g : gammas_) scale_mag += std::abs(g);
    const double v_full = acc.real() * h_ / kPi;
    const double v_trunc = acc_t.real() * h_ / kPi;
    const double tol = 1e-10 * std::max(scale_mag * h_ / kPi, 1e-280);
    if (std::abs(v_full - v_trunc) > tol || tail_mag * h_ / kPi > tol)
        throw ConvergenceError("ContourEvaluator: truncated tail above tolerance");
    *log_scale = log_scale_ - c_ * w;
    return v_full;
}

double ContourEvaluator::eval(double z) const {
    double ls = 0.0;
    const double v = eval_scaled(z, &ls);
    if (v == 0.0) return 0.0;
    const double lv = ls + std::log(std::abs(v));
    if (lv > 709.0) throw std::overflow_error("ContourEvaluator: result exceeds double range");
    return std::copysign(std::exp(lv), v);
}

std::vector<std::pair<double, std::complex<double>>> ContourEvaluator::integrand_samples(
    double z) const {
    const double w = std::log(z);
    std::vector<std::pair<double, std::complex<double>>> out;
    out.reserve(gammas_.size());
    for (std::size_t k = 0; k < gammas_.size(); ++k) {
        const double t = k * h_;
        out.emplace_back(t, gammas_[k] * std::exp(log_scale_ - c_ * w) *
                                std::polar(1.0, -t * w));
    }
    return out;
}

double eval_contour(const MeijerGSpec& spec, double z) {
    if (!(z > 0.0)) throw std::domain_error("eval_contour: requires z > 0");
    ContourEvaluator ev(spec, std::abs(std::log(z)) + 5.0);
    return ev.eval(z);
}

double eval_residues(const MeijerGSpec& spec, double z) {
    spec.validate();
    if (!(z > 0.0)) throw std::domain_error("eval_residues: requires z > 0");
    if (spec.q <= spec.p)
        throw std::domain_error("eval_residues: requires q > p");
    if (spec.degenerate())
        throw PoleError("eval_residues: degenerate (integer-spaced) b parameters");
    const Strip st = pole_strip(spec);
    if (spec.n > 0 && st.left >= st.right)
        throw NoSeparatingContourError("eval_residues: colliding pole sets");

    const double lz = std::log(z);
    double sum = 0.0;
    int consecutive_small = 0;
    for (int k = 0; k < 10000; ++k) {
        double term_k = 0.0;
        for (int j = 0; j < spec.m; ++j) {
            // residue of the kernel at s = -b_j - k
            double lnum = 0.0;
            int sign = (k % 2 == 0) ? 1 : -1;
            lnum -= specfun::log_gamma_pos(k + 1.0);
            bool zero = false;
            for (int i = 0; i < spec.m; ++i) {
                if (i == j) continue;
                int sg;
                lnum += specfun::log_gamma_signed(spec.b[i] - spec.b[j] - k, &sg);
                sign *= sg;
            }
            for (int i = 0; i < spec.n; ++i) {
                int sg;
                lnum += specfun::log_gamma_signed(1.0 - spec.a[i] + spec.b[j] + k, &sg);
                sign *= sg;
            }
            for (int i = spec.n; i < spec.p; ++i) {
                int sg;
                const double lg = specfun::log_gamma_signed(spec.a[i] - spec.b[j] - k, &sg);
                if (sg == 0) { zero = true; break; }  // 1/Gamma(pole) = 0
                lnum -= lg;
                sign *= sg;
            }
            if (zero) continue;
            for (int i = spec.m; i < spec.q; ++i) {
                int sg;
                const double lg = specfun::log_gamma_signed(1.0 - spec.b[i] + spec.b[j] + k, &sg);
                if (sg == 0) { zero = true; break; }
                lnum -= lg;
                sign *= sg;
            }
            if (zero) continue;
            term_k += sign * std::exp(lnum + (spec.b[j] + k) * lz);
        }
        sum += term_k;
        if (std::abs(term_k) < 1e-15 * std::abs(sum)) {
            if (++consecutive_small >= 3) return sum;
        } else {
            consecutive_small = 0;
        }
    }
    throw ConvergenceError("eval_residues: series cap reached before convergence");
}

void set_cross_check(bool enabled) { g_cross_check.store(enabled); }
bool cross_check_enabled() { return g_cross_check.load(); }

double eval(const MeijerGSpec& spec, double z) {
    spec.validate();
    if (!(z > 0.0)) throw std::domain_error("meijer::eval: requires z > 0");
    if (spec.p > spec.q) return eval(reflect(spec), 1.0 / z);
    const bool residues_legal = spec.q > spec.p && !spec.degenerate();
    if (!residues_legal) return eval_contour(spec, z);
    const double vr = eval_residues(spec, z);
    if (g_cross_check.load()) {
        const double vc = eval_contour(spec, z);
        const double scale = std::max({std::abs(vr), std::abs(vc), 1e-280});
        if (std::abs(vr - vc) > 1e-8 * scale)
            throw VerificationError("meijer::eval: contour/residue paths disagree: " +
                                    std::to_string(vr) + " vs " + std::to_string(vc));
    }
    return vr;
}

std::size_t EvalCache::Hash::operator()(const MeijerGSpec& s) const {
    std::size_t h = std::hash<int>()(s.m * 64 + s.n + 4096 * (s.p * 64 + s.q));
    for (double v : s.a) h ^= std::hash<double>()(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    for (double v : s.b) h ^= std::hash<double>()(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
}

const ContourEvaluator& EvalCache::get(const MeijerGSpec& spec) {
    // canonical order: G is symmetric within each of the four parameter groups
    MeijerGSpec c = spec;
    c.validate();
    std::sort(c.b.begin(), c.b.begin() + c.m);
    std::sort(c.b.begin() + c.m, c.b.end());
    std::sort(c.a.begin(), c.a.begin() + c.n);
    std::sort(c.a.begin() + c.n, c.a.end());
    auto it = cache_.find(c);
    if (it == cache_.end())
        it = cache_.emplace(c, std::make_unique<ContourEvaluator>(c, budget_)).first;
    return *it->second;
}

}  // namespace mgc::meijer
