#pragma once

// Partial sums of the Fourier series and its conjugate series, their matrix
// means
//
//   T_{n,A} f(x) = sum_k a_{n,k} S_k f(x),   T~_{n,A} f(x) = sum_k a_{n,k} S~_k f(x),
//
// the truncated conjugate function
//
//   f~(x, eps) = -(1/pi) int_eps^pi psi_x(t) (1/2) cot(t/2) dt
//
// with its eps -> 0 limit, and the pointwise deviations the rate bounds measure.

#include <stdexcept>
#include <string>
#include <vector>

#include "trigsum/matrices.hpp"
#include "trigsum/periodic.hpp"

namespace trigsum {

/// a_0(f)/2 + sum_{nu=1}^{k} (a_nu cos nu x + b_nu sin nu x).
double partial_sum(const PeriodicFunction& f, long k, double x, const QuadratureConfig& cfg = {});

/// sum_{nu=1}^{k} (a_nu sin nu x - b_nu cos nu x).
double conjugate_partial_sum(const PeriodicFunction& f, long k, double x, const QuadratureConfig& cfg = {});

/// T_{n,A} f(x). Infinite rows are cut where sum_{k>K} a_{n,k} sup|S_k f| < tail_cut.
double matrix_transform(const PeriodicFunction& f, const SummabilityMatrix& A, long n, double x,
                        double tail_cut = kDefaultTailCut, const QuadratureConfig& cfg = {});

/// T~_{n,A} f(x), truncated like matrix_transform.
double conjugate_matrix_transform(const PeriodicFunction& f, const SummabilityMatrix& A, long n, double x,
                                  double tail_cut = kDefaultTailCut, const QuadratureConfig& cfg = {});

/// Cross-check route: (1/pi) int_Q f(x+t) sum_k a_{n,k} D°_{k,1}(t) dt.
double matrix_transform_via_kernel(const PeriodicFunction& f, const SummabilityMatrix& A, long n, double x,
                                   const QuadratureConfig& cfg = {}, double tail_cut = kDefaultTailCut);

/// Cross-check route: -(1/pi) int_Q f(x+t) sum_k a_{n,k} D~_{k,1}(t) dt.
double conjugate_matrix_transform_via_kernel(const PeriodicFunction& f, const SummabilityMatrix& A, long n,
                                             double x, const QuadratureConfig& cfg = {},
                                             double tail_cut = kDefaultTailCut);

/// f~(x, eps) for eps in (0, pi).
double conjugate_truncated(const PeriodicFunction& f, double x, double eps, const QuadratureConfig& cfg = {});

class ConjugateLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ConjugateLimit {
    double value = 0.0;
    int levels = 0;          ///< Number of eps-halvings taken.
    double smallest_eps = 0.0;
    double spread = 0.0;     ///< Max gap among the three accepted extrapolants.
};

/// f~(x) as the Richardson-extrapolated limit of f~(x, 2^-m). Throws
/// ConjugateLimitError when the extrapolants never settle, which happens when
/// psi_x(t)/t is not integrable at 0 (e.g. x at a jump).
ConjugateLimit conjugate_limit(const PeriodicFunction& f, double x, const QuadratureConfig& cfg = {});

enum class TruncationRule { pi_over_n1, pi_over_rn1 };

struct DeviationKind {
    enum class Kind { ordinary, conjugate_vs_limit, conjugate_vs_truncated };
    Kind kind = Kind::ordinary;
    TruncationRule truncation = TruncationRule::pi_over_n1; ///< Used by conjugate_vs_truncated only.

    static DeviationKind ordinary() { return {Kind::ordinary, TruncationRule::pi_over_n1}; }
    static DeviationKind conjugate_vs_limit() { return {Kind::conjugate_vs_limit, TruncationRule::pi_over_n1}; }
    static DeviationKind conjugate_vs_truncated(TruncationRule rule) { return {Kind::conjugate_vs_truncated, rule}; }
};

std::string to_string(const DeviationKind& kind);
std::string to_string(TruncationRule rule);
DeviationKind parse_deviation_kind(const std::string& kind, const std::string& truncation_rule = "pi_over_n1");
TruncationRule parse_truncation_rule(const std::string& rule);

/// Truncation point pi/(n+1) or pi/(r(n+1)).
double truncation_point(TruncationRule rule, long n, int r);

/// |T f(x) - f(x)|, |T~ f(x) - f~(x)| or |T~ f(x) - f~(x, eps_n)|.
double deviation(const PeriodicFunction& f, const SummabilityMatrix& A, long n, double x, const DeviationKind& kind,
                 int r, const QuadratureConfig& cfg = {}, double tail_cut = kDefaultTailCut);

} // namespace trigsum
