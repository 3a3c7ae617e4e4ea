#pragma once

// Summability matrices A = (a_{n,k}) with nonnegative, row-stochastic entries,
// the r-difference functionals
//
//   A_{n,r} = sum_{k>=0} |a_{n,k} - a_{n,k+r}|
//
// and the structural moment conditions used by the rate theorems.
//
// Rows are either finite (a_{n,k} = 0 past a known index) or infinite with an
// analytic tail descriptor that yields certified bounds on
// sum_{k>K} (k+1)^j a_{n,k}. Every truncated sum in this library is cut
// through those bounds.

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace trigsum {

/// a_{n,k} = 0 for k > last.
struct FiniteSupport {
    long last = 0;
};

/// a_{n,k+1} <= ratio * a_{n,k} for all k >= start, with 0 <= ratio < 1.
struct GeometricTail {
    long start = 0;
    double ratio = 0.0;
};

/// a_{n,k} <= coefficient * (k+1)^(-exponent) for all k >= start.
struct PowerTail {
    long start = 0;
    double coefficient = 1.0;
    double exponent = 2.0;
};

using RowSupport = std::variant<FiniteSupport, GeometricTail, PowerTail>;

/// Raised when a row's declared tail decays too slowly for the requested moment.
class NonTruncatableRow : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SummabilityMatrix {
public:
    using EntryFn = std::function<double(long n, long k)>;
    using RowFn = std::function<std::vector<double>(long n)>;
    using SupportFn = std::function<RowSupport(long n)>;
    using Params = std::map<std::string, std::string>;

    /// Matrix given entrywise; support(n) must describe every row.
    SummabilityMatrix(std::string family, Params params, EntryFn entry, SupportFn support);

    /// Lower-triangular-style matrix given rowwise: row(n) returns a_{n,0..m(n)}.
    SummabilityMatrix(std::string family, Params params, RowFn row);

    const std::string& family() const noexcept { return family_; }
    const Params& params() const noexcept { return params_; }
    /// Canonical identifier, e.g. "norlund:p=k+1".
    std::string id() const;

    double entry(long n, long k) const;
    RowSupport support(long n) const;
    bool finite_row(long n) const;

    /// a_{n,0}, ..., a_{n,count-1}.
    std::vector<double> entries(long n, long count) const;

    /// Upper bound on sum_{k>K} (k+1)^j a_{n,k}; exact zero past a finite support.
    double tail_bound(long n, long K, int j) const;

    /// Smallest K found with tail_bound(n, K, j) < tol; last index for finite rows.
    long truncation_index(long n, int j, double tol) const;

private:
    std::string family_;
    Params params_;
    EntryFn entry_;
    RowFn row_;
    SupportFn support_;
};

inline constexpr double kDefaultTailCut = 1e-13;

// Families -----------------------------------------------------------------

SummabilityMatrix identity_matrix();
/// C1: a_{n,k} = 1/(n+1) for k <= n.
SummabilityMatrix cesaro_matrix();
/// a_{n,k} = p_{n-k} / P_n, P_n = p_0 + ... + p_n.
SummabilityMatrix norlund_matrix(std::string weight_id, std::function<double(long)> weight);
/// a_{n,k} = p_k / P_n.
SummabilityMatrix riesz_matrix(std::string weight_id, std::function<double(long)> weight);
/// a_{n,k} = (1 - q_n) q_n^k with q_n = n/(n+1): infinite rows.
SummabilityMatrix geometric_matrix();
/// Rows a_{n,k} = w(n,k) / sum_{j<=n} w(n,j) for k <= n. w must be >= 0 with positive row sums.
SummabilityMatrix lower_triangular_matrix(std::string name, std::function<double(long, long)> weight);

/// Parses "identity", "cesaro", "geometric", "norlund:p=<w>", "riesz:p=<w>" where
/// <w> is "<c>" (constant), "k+<c>", "pow:<a>" ((k+1)^a) or "harmonic" (1/(k+1)).
/// Throws std::invalid_argument on unknown families or invalid weights.
SummabilityMatrix builtin_matrix(const std::string& spec);

/// Families accepted by builtin_matrix in their default parameterisation.
std::vector<std::string> builtin_matrix_ids();

// Functionals ----------------------------------------------------------------

/// A_{n,r}; the truncation remainder is below tail_cut.
double r_difference_norm(const SummabilityMatrix& A, long n, int r, double tail_cut = kDefaultTailCut);

/// A°_{n,r} = sum_{k=0}^{n} |a_{n,k} - a_{n,k+r}|.
double r_difference_norm_lower(const SummabilityMatrix& A, long n, int r);

struct RowSum {
    double sum = 0.0;
    double remainder_bound = 0.0;
};
RowSum row_sum(const SummabilityMatrix& A, long n, double tail_cut = kDefaultTailCut);

/// sum_{l=0}^{n} sum_{k=l}^{r+l-1} a_{n,k}; its reciprocal must stay bounded.
double check_condition_113(const SummabilityMatrix& A, long n, int r);

/// sum_k (k+1) a_{n,k} / (n+1).
double check_condition_114(const SummabilityMatrix& A, long n, double tail_cut = kDefaultTailCut);

/// sum_k (k+1)^2 a_{n,k} / (n+1)^2.
double check_condition_115(const SummabilityMatrix& A, long n, double tail_cut = kDefaultTailCut);

struct DifferenceComparison {
    double A_nr = 0.0;
    double A_n1 = 0.0;
    bool unit_step_dominates() const { return A_nr <= A_n1; }
    /// The triangle-inequality bound A_{n,r} <= r A_{n,1}.
    bool triangle_bound_holds(int r, double tol = 1e-13) const { return A_nr <= r * A_n1 + tol; }
};
DifferenceComparison compare_51(const SummabilityMatrix& A, long n, int r, double tail_cut = kDefaultTailCut);

} // namespace trigsum
