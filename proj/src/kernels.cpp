#include "trigsum/kernels.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace trigsum {

void KernelSpec::validate() const {
    if (k < 0) throw std::invalid_argument("kernel: k must be >= 0");
    if (r == 0) throw std::invalid_argument("kernel: r must be nonzero");
    if (kind == KernelKind::conjugate && r < 1) throw std::invalid_argument("kernel: conjugate kind needs r >= 1");
}

double kernel_eval(const KernelSpec& spec, double t) {
    spec.validate();
    const double half = 0.5 * spec.r * t;
    const double den = std::sin(half);
    if (std::abs(den) < kKernelSingularityGuard) {
        std::ostringstream os;
        os << "kernel: singular argument t=" << t << " for r=" << spec.r;
        throw SingularKernelArgument(os.str());
    }
    const double k = static_cast<double>(spec.k);
    switch (spec.kind) {
    case KernelKind::dirichlet: return std::sin((2.0 * k + spec.r) * t / 2.0) / (2.0 * den);
    case KernelKind::conjugate_circ: return std::cos((2.0 * k + spec.r) * t / 2.0) / (2.0 * den);
    case KernelKind::conjugate:
        // cos(rt/2) - cos((2k+r)t/2) = 2 sin((k+r)t/2) sin(kt/2), free of cancellation near 0.
        return std::sin((k + spec.r) * t / 2.0) * std::sin(k * t / 2.0) / den;
    }
    throw std::logic_error("kernel: unknown kind");
}

double kernel_limit_at_zero(const KernelSpec& spec) {
    spec.validate();
    switch (spec.kind) {
    case KernelKind::dirichlet: return (2.0 * spec.k + spec.r) / (2.0 * spec.r);
    case KernelKind::conjugate: return 0.0;
    case KernelKind::conjugate_circ: break;
    }
    throw std::domain_error("kernel: conjugate_circ has no finite limit at t = 0");
}

double kernel_eval_or_limit(const KernelSpec& spec, double t) {
    // At t = 2 pi j both numerator and denominator vanish and the kernels are
    // 2pi-periodic, so the value at zero applies.
    const double near = std::remainder(t, 2.0 * std::numbers::pi);
    if (spec.kind != KernelKind::conjugate_circ && std::abs(near) < kKernelSingularityGuard)
        return kernel_limit_at_zero(spec);
    return kernel_eval(spec, t);
}

// Bounds ---------------------------------------------------------------------

const std::vector<const char*>& kernel_bound_names() {
    static const std::vector<const char*> names = {
        "|D°k,1| <= pi/(2|t|)", "|D~°k,1| <= pi/(2|t|)", "|D~k,1| <= pi/|t|",
        "|D°k,1| <= k+1/2",      "|D~k,1| <= k(k+1)|t|/2", "|D~k,1| <= k+1"};
    return names;
}

KernelBoundReport check_kernel_bounds(long k, std::span<const double> t_samples) {
    KernelBoundReport report;
    report.k = k;
    const KernelSpec dir{k, 1, KernelKind::dirichlet};
    const KernelSpec circ{k, 1, KernelKind::conjugate_circ};
    const KernelSpec conj{k, 1, KernelKind::conjugate};
    const double kd = static_cast<double>(k);
    auto check = [&](int which, double t, double value, double limit) {
        ++report.checks;
        if (std::abs(value) > limit * (1.0 + 1e-12) + 1e-14)
            report.violations.push_back({k, t, which, value, limit});
    };
    for (double t : t_samples) {
        const double at = std::abs(t);
        const double d = kernel_eval_or_limit(dir, t);
        const double c = kernel_eval_or_limit(conj, t);
        if (at > 0.0 && at <= std::numbers::pi) {
            check(0, t, d, std::numbers::pi / (2.0 * at));
            check(1, t, kernel_eval(circ, t), std::numbers::pi / (2.0 * at));
            check(2, t, c, std::numbers::pi / at);
        }
        check(3, t, d, kd + 0.5);
        check(4, t, c, 0.5 * kd * (kd + 1.0) * at);
        check(5, t, c, kd + 1.0);
    }
    return report;
}

// Summation by parts ---------------------------------------------------------

namespace {

void check_abel_args(std::span<const double> a, long n, long m, int r) {
    if (n < 0 || m < n) throw std::invalid_argument("abel transform: need m >= n >= 0");
    if (r < 1) throw std::invalid_argument("abel transform: r must be >= 1");
    if (static_cast<long>(a.size()) != m + r - n + 1) {
        std::ostringstream os;
        os << "abel transform: sequence must hold indices " << n << ".." << m + r << " (" << m + r - n + 1
           << " values), got " << a.size();
        throw std::invalid_argument(os.str());
    }
}

} // namespace

IdentitySides abel_transform_sin(std::span<const double> a, long n, long m, int r, double t, const KernelFn& kernel) {
    check_abel_args(a, n, m, r);
    auto at = [&](long k) { return a[static_cast<std::size_t>(k - n)]; };
    IdentitySides out;
    for (long k = n; k <= m; ++k) out.lhs += at(k) * std::sin(static_cast<double>(k) * t);
    for (long k = n; k <= m; ++k) out.rhs -= (at(k) - at(k + r)) * kernel({k, r, KernelKind::conjugate_circ}, t);
    for (long k = m + 1; k <= m + r; ++k) out.rhs += at(k) * kernel({k, -r, KernelKind::conjugate_circ}, t);
    for (long k = n; k <= n + r - 1; ++k) out.rhs -= at(k) * kernel({k, -r, KernelKind::conjugate_circ}, t);
    return out;
}

IdentitySides abel_transform_cos(std::span<const double> a, long n, long m, int r, double t, const KernelFn& kernel) {
    check_abel_args(a, n, m, r);
    auto at = [&](long k) { return a[static_cast<std::size_t>(k - n)]; };
    IdentitySides out;
    for (long k = n; k <= m; ++k) out.lhs += at(k) * std::cos(static_cast<double>(k) * t);
    for (long k = n; k <= m; ++k) out.rhs += (at(k) - at(k + r)) * kernel({k, r, KernelKind::dirichlet}, t);
    for (long k = m + 1; k <= m + r; ++k) out.rhs -= at(k) * kernel({k, -r, KernelKind::dirichlet}, t);
    for (long k = n; k <= n + r - 1; ++k) out.rhs += at(k) * kernel({k, -r, KernelKind::dirichlet}, t);
    return out;
}

// Weighted sums ----------------------------------------------------------------

double weighted_dirichlet_sum(const SummabilityMatrix& A, long n, double t, double tail_cut) {
    const double den = std::sin(0.5 * t);
    if (std::abs(den) < kKernelSingularityGuard) {
        std::ostringstream os;
        os << "weighted_dirichlet_sum: singular argument t=" << t;
        throw SingularKernelArgument(os.str());
    }
    // |D°_{k,1}| <= k + 1/2 bounds the remainder by the first tail moment.
    const long K = A.truncation_index(n, 1, tail_cut);
    const auto a = A.entries(n, K + 1);
    double s = 0.0;
    for (long k = 0; k <= K; ++k) {
        const double w = a[static_cast<std::size_t>(k)];
        if (w != 0.0) s += w * std::sin((static_cast<double>(k) + 0.5) * t);
    }
    return s / (2.0 * den);
}

double weighted_conjugate_sum(const SummabilityMatrix& A, long n, double t, double tail_cut, KernelKind kind) {
    if (kind == KernelKind::dirichlet) throw std::invalid_argument("weighted_conjugate_sum: conjugate kinds only");
    const double den = std::sin(0.5 * t);
    if (std::abs(den) < kKernelSingularityGuard) {
        std::ostringstream os;
        os << "weighted_conjugate_sum: singular argument t=" << t;
        throw SingularKernelArgument(os.str());
    }
    double s = 0.0;
    if (kind == KernelKind::conjugate_circ) {
        // |D~°_{k,1}| <= 1 / (2|sin(t/2)|).
        const long K = A.truncation_index(n, 0, tail_cut * 2.0 * std::abs(den));
        const auto a = A.entries(n, K + 1);
        for (long k = 0; k <= K; ++k) {
            const double w = a[static_cast<std::size_t>(k)];
            if (w != 0.0) s += w * std::cos((static_cast<double>(k) + 0.5) * t);
        }
        return s / (2.0 * den);
    }
    // |D~_{k,1}| <= k + 1.
    const long K = A.truncation_index(n, 1, tail_cut);
    const auto a = A.entries(n, K + 1);
    for (long k = 0; k <= K; ++k) {
        const double w = a[static_cast<std::size_t>(k)];
        if (w != 0.0) s += w * std::sin((static_cast<double>(k) + 1.0) * t / 2.0) * std::sin(static_cast<double>(k) * t / 2.0);
    }
    return s / den;
}

WeightedSumBound weighted_sum_bound(const SummabilityMatrix& A, long n, int r, double t, double tail_cut) {
    const double anr = r_difference_norm(A, n, r, tail_cut);
    const auto head = A.entries(n, r);
    double lead = 0.0;
    for (double v : head) lead += v;
    const double den = std::abs(std::sin(0.5 * t) * std::sin(0.5 * r * t));
    return {(anr + lead) / (2.0 * den), anr / den};
}

} // namespace trigsum
