#pragma once

// Generalized Dirichlet and conjugate kernels with step parameter r:
//
//   D°_{k,r}(t)  = sin((2k+r)t/2) / (2 sin(rt/2))
//   D~°_{k,r}(t) = cos((2k+r)t/2) / (2 sin(rt/2))
//   D~_{k,r}(t)  = (cos(rt/2) - cos((2k+r)t/2)) / (2 sin(rt/2))
//
// together with the r-step summation-by-parts identities and the weighted
// kernel sums that appear in integral representations of matrix means.

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "trigsum/matrices.hpp"

namespace trigsum {

enum class KernelKind { dirichlet, conjugate_circ, conjugate };

struct KernelSpec {
    long k = 0;
    int r = 1;
    KernelKind kind = KernelKind::dirichlet;

    /// Throws std::invalid_argument: k < 0, r = 0, or kind = conjugate with r < 1.
    void validate() const;
};

class SingularKernelArgument : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

inline constexpr double kKernelSingularityGuard = 1e-14;

/// Exact formula value. Throws SingularKernelArgument when |sin(rt/2)| < 1e-14.
double kernel_eval(const KernelSpec& spec, double t);

/// The removable limit at t = 0: (2k+r)/(2r) for dirichlet, 0 for conjugate.
/// Throws std::domain_error for conjugate_circ, which is unbounded at 0.
double kernel_limit_at_zero(const KernelSpec& spec);

/// kernel_eval, falling back to the limit at zero when t is a multiple of 2 pi.
double kernel_eval_or_limit(const KernelSpec& spec, double t);

// Pointwise bounds for r = 1 --------------------------------------------------

struct KernelBoundViolation {
    long k = 0;
    double t = 0.0;
    int bound = 0; ///< Index into kernel_bound_names().
    double value = 0.0;
    double limit = 0.0;
};

struct KernelBoundReport {
    long k = 0;
    long checks = 0;
    std::vector<KernelBoundViolation> violations;
    bool passed() const { return violations.empty(); }
};

/// Names of the six checked bounds, in report order.
const std::vector<const char*>& kernel_bound_names();

/// Checks |D°_{k,1}| <= pi/(2|t|), |D~°_{k,1}| <= pi/(2|t|), |D~_{k,1}| <= pi/|t| for
/// 0 < |t| <= pi, and |D°_{k,1}| <= k+1/2, |D~_{k,1}| <= k(k+1)|t|/2, |D~_{k,1}| <= k+1
/// for every sampled t.
KernelBoundReport check_kernel_bounds(long k, std::span<const double> t_samples);

// Summation by parts ---------------------------------------------------------

struct IdentitySides {
    double lhs = 0.0;
    double rhs = 0.0;
};

/// Kernel evaluator hook; defaults to kernel_eval. Swappable for fault injection.
using KernelFn = std::function<double(const KernelSpec&, double)>;

/// a holds a_n, ..., a_{m+r} (a[0] = a_n). lhs = sum_{k=n}^{m} a_k sin kt and rhs is
///   -sum_{k=n}^{m} (a_k - a_{k+r}) D~°_{k,r} + sum_{k=m+1}^{m+r} a_k D~°_{k,-r} - sum_{k=n}^{n+r-1} a_k D~°_{k,-r}.
IdentitySides abel_transform_sin(std::span<const double> a, long n, long m, int r, double t,
                                 const KernelFn& kernel = kernel_eval);

/// Cosine form: lhs = sum a_k cos kt, rhs is
///   sum (a_k - a_{k+r}) D°_{k,r} - sum_{k=m+1}^{m+r} a_k D°_{k,-r} + sum_{k=n}^{n+r-1} a_k D°_{k,-r}.
IdentitySides abel_transform_cos(std::span<const double> a, long n, long m, int r, double t,
                                 const KernelFn& kernel = kernel_eval);

// Weighted kernel sums over a matrix row -------------------------------------

/// sum_k a_{n,k} D°_{k,1}(t), truncated where the certified remainder is below tail_cut.
double weighted_dirichlet_sum(const SummabilityMatrix& A, long n, double t, double tail_cut = kDefaultTailCut);

/// sum_k a_{n,k} K_{k,1}(t) for K = D~°_{k,1} (default) or D~_{k,1}.
double weighted_conjugate_sum(const SummabilityMatrix& A, long n, double t, double tail_cut = kDefaultTailCut,
                              KernelKind kind = KernelKind::conjugate_circ);

/// The sharper weighted-sum bound (A_{n,r} + sum_{k<r} a_{n,k}) / (2 |sin(t/2) sin(rt/2)|) and the
/// coarser A_{n,r} / |sin(t/2) sin(rt/2)|.
struct WeightedSumBound {
    double sharp = 0.0;
    double coarse = 0.0;
};
WeightedSumBound weighted_sum_bound(const SummabilityMatrix& A, long n, int r, double t,
                                    double tail_cut = kDefaultTailCut);

} // namespace trigsum
