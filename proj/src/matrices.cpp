#include "trigsum/matrices.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace trigsum {

namespace {

constexpr long kMaxRowLength = 100'000'000;

// sum_{i>=0} (c+i)^j rho^i
double geometric_moment(double c, double rho, int j) {
    const double s = 1.0 - rho;
    switch (j) {
    case 0: return 1.0 / s;
    case 1: return c / s + rho / (s * s);
    case 2: return c * c / s + 2.0 * c * rho / (s * s) + rho * (1.0 + rho) / (s * s * s);
    default: throw std::invalid_argument("tail moment order must be 0, 1 or 2");
    }
}

double moment_weight(long k, int j) {
    const double w = static_cast<double>(k + 1);
    return j == 0 ? 1.0 : (j == 1 ? w : w * w);
}

} // namespace

SummabilityMatrix::SummabilityMatrix(std::string family, Params params, EntryFn entry, SupportFn support)
    : family_(std::move(family)), params_(std::move(params)), entry_(std::move(entry)),
      support_(std::move(support)) {
    if (!entry_ || !support_) throw std::invalid_argument("SummabilityMatrix: empty entry or support function");
}

SummabilityMatrix::SummabilityMatrix(std::string family, Params params, RowFn row)
    : family_(std::move(family)), params_(std::move(params)), row_(std::move(row)) {
    if (!row_) throw std::invalid_argument("SummabilityMatrix: empty row function");
}

std::string SummabilityMatrix::id() const {
    std::string out = family_;
    char sep = ':';
    for (const auto& [key, value] : params_) {
        out += sep + key + "=" + value;
        sep = ',';
    }
    return out;
}

double SummabilityMatrix::entry(long n, long k) const {
    if (n < 0) throw std::invalid_argument("matrix row index must be >= 0");
    if (k < 0) return 0.0;
    if (row_) {
        const auto row = row_(n);
        return k < static_cast<long>(row.size()) ? row[static_cast<std::size_t>(k)] : 0.0;
    }
    const RowSupport sup = support_(n);
    if (const auto* fin = std::get_if<FiniteSupport>(&sup); fin && k > fin->last) return 0.0;
    return entry_(n, k);
}

RowSupport SummabilityMatrix::support(long n) const {
    if (row_) return FiniteSupport{static_cast<long>(row_(n).size()) - 1};
    return support_(n);
}

bool SummabilityMatrix::finite_row(long n) const { return std::holds_alternative<FiniteSupport>(support(n)); }

std::vector<double> SummabilityMatrix::entries(long n, long count) const {
    if (n < 0) throw std::invalid_argument("matrix row index must be >= 0");
    std::vector<double> out(static_cast<std::size_t>(std::max(count, 0L)), 0.0);
    if (row_) {
        const auto row = row_(n);
        std::copy_n(row.begin(), std::min(row.size(), out.size()), out.begin());
        return out;
    }
    const RowSupport sup = support_(n);
    long stop = count;
    if (const auto* fin = std::get_if<FiniteSupport>(&sup)) stop = std::min(count, fin->last + 1);
    for (long k = 0; k < stop; ++k) out[static_cast<std::size_t>(k)] = entry_(n, k);
    return out;
}

double SummabilityMatrix::tail_bound(long n, long K, int j) const {
    if (j < 0 || j > 2) throw std::invalid_argument("tail moment order must be 0, 1 or 2");
    const RowSupport sup = support(n);
    if (const auto* fin = std::get_if<FiniteSupport>(&sup)) {
        double s = 0.0;
        if (K >= fin->last) return 0.0;
        const auto row = entries(n, fin->last + 1);
        for (long k = std::max(K + 1, 0L); k <= fin->last; ++k) s += moment_weight(k, j) * row[static_cast<std::size_t>(k)];
        return s;
    }
    auto explicit_head = [&](long from, long to) {
        double s = 0.0;
        for (long k = from; k < to; ++k) s += moment_weight(k, j) * entry_(n, k);
        return s;
    };
    if (const auto* geo = std::get_if<GeometricTail>(&sup)) {
        if (!(geo->ratio >= 0.0 && geo->ratio < 1.0))
            throw NonTruncatableRow("geometric tail ratio must lie in [0, 1)");
        const long first = std::max(K + 1, geo->start);
        return explicit_head(K + 1, first) +
               entry_(n, first) * geometric_moment(static_cast<double>(first + 1), geo->ratio, j);
    }
    const auto& pw = std::get<PowerTail>(sup);
    if (!(pw.exponent > j + 1.0)) {
        std::ostringstream os;
        os << "row " << n << " of '" << id() << "' decays like (k+1)^-" << pw.exponent
           << ", too slow for a certified moment of order " << j;
        throw NonTruncatableRow(os.str());
    }
    const long first = std::max(K + 1, pw.start);
    const double e = j - pw.exponent + 1.0;
    return explicit_head(K + 1, first) + pw.coefficient * std::pow(static_cast<double>(first), e) / (-e);
}

long SummabilityMatrix::truncation_index(long n, int j, double tol) const {
    if (!(tol > 0.0)) throw std::invalid_argument("tail cut must be > 0");
    const RowSupport sup = support(n);
    if (const auto* fin = std::get_if<FiniteSupport>(&sup)) return fin->last;
    long start = 0;
    if (const auto* geo = std::get_if<GeometricTail>(&sup)) start = geo->start;
    if (const auto* pw = std::get_if<PowerTail>(&sup)) start = pw->start;
    long hi = std::max(start, 8L);
    long lo = -1;
    while (tail_bound(n, hi, j) >= tol) {
        lo = hi;
        hi *= 2;
        if (hi > kMaxRowLength) {
            std::ostringstream os;
            os << "row " << n << " of '" << id() << "' cannot be truncated below " << tol << " within "
               << kMaxRowLength << " terms";
            throw NonTruncatableRow(os.str());
        }
    }
    while (hi - lo > 1) {
        const long mid = lo + (hi - lo) / 2;
        if (tail_bound(n, mid, j) < tol)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

// Families -----------------------------------------------------------------

SummabilityMatrix identity_matrix() {
    return SummabilityMatrix("identity", {}, [](long n) {
        std::vector<double> row(static_cast<std::size_t>(n + 1), 0.0);
        row.back() = 1.0;
        return row;
    });
}

SummabilityMatrix cesaro_matrix() {
    return SummabilityMatrix("cesaro", {}, [](long n) {
        return std::vector<double>(static_cast<std::size_t>(n + 1), 1.0 / static_cast<double>(n + 1));
    });
}

namespace {

std::vector<double> checked_weights(const std::function<double(long)>& weight, long n, const std::string& id) {
    std::vector<double> p(static_cast<std::size_t>(n + 1));
    for (long k = 0; k <= n; ++k) {
        p[static_cast<std::size_t>(k)] = weight(k);
        if (!(p[static_cast<std::size_t>(k)] >= 0.0) || !std::isfinite(p[static_cast<std::size_t>(k)]))
            throw std::invalid_argument(id + ": weights must be finite and nonnegative");
    }
    if (!(p[0] > 0.0)) throw std::invalid_argument(id + ": weight p_0 must be positive");
    return p;
}

} // namespace

SummabilityMatrix norlund_matrix(std::string weight_id, std::function<double(long)> weight) {
    // Probe the head of the sequence so malformed weights fail at construction.
    checked_weights(weight, 64, "norlund:p=" + weight_id);
    return SummabilityMatrix("norlund", {{"p", weight_id}}, [weight, weight_id](long n) {
        auto p = checked_weights(weight, n, "norlund:p=" + weight_id);
        double total = 0.0;
        for (double v : p) total += v;
        std::vector<double> row(p.size());
        for (long k = 0; k <= n; ++k)
            row[static_cast<std::size_t>(k)] = p[static_cast<std::size_t>(n - k)] / total;
        return row;
    });
}

SummabilityMatrix riesz_matrix(std::string weight_id, std::function<double(long)> weight) {
    checked_weights(weight, 64, "riesz:p=" + weight_id);
    return SummabilityMatrix("riesz", {{"p", weight_id}}, [weight, weight_id](long n) {
        auto p = checked_weights(weight, n, "riesz:p=" + weight_id);
        double total = 0.0;
        for (double v : p) total += v;
        for (double& v : p) v /= total;
        return p;
    });
}

SummabilityMatrix geometric_matrix() {
    auto ratio = [](long n) { return static_cast<double>(n) / static_cast<double>(n + 1); };
    return SummabilityMatrix(
        "geometric", {},
        [ratio](long n, long k) {
            const double q = ratio(n);
            if (n == 0) return k == 0 ? 1.0 : 0.0;
            return (1.0 - q) * std::pow(q, static_cast<double>(k));
        },
        [ratio](long n) -> RowSupport {
            if (n == 0) return FiniteSupport{0};
            return GeometricTail{0, ratio(n)};
        });
}

SummabilityMatrix lower_triangular_matrix(std::string name, std::function<double(long, long)> weight) {
    return SummabilityMatrix("lower", {{"name", name}}, [weight, name](long n) {
        std::vector<double> row(static_cast<std::size_t>(n + 1));
        double total = 0.0;
        for (long k = 0; k <= n; ++k) {
            const double w = weight(n, k);
            if (!(w >= 0.0) || !std::isfinite(w)) throw std::invalid_argument(name + ": weights must be nonnegative");
            row[static_cast<std::size_t>(k)] = w;
            total += w;
        }
        if (!(total > 0.0)) throw std::invalid_argument(name + ": row weights sum to zero");
        for (double& v : row) v /= total;
        return row;
    });
}

namespace {

double parse_number(const std::string& s, const std::string& context) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad number '" + s + "' in " + context);
    }
    if (pos != s.size()) throw std::invalid_argument("bad number '" + s + "' in " + context);
    return v;
}

std::function<double(long)> parse_weight(const std::string& w, const std::string& context) {
    if (w == "harmonic") return [](long k) { return 1.0 / static_cast<double>(k + 1); };
    if (w.rfind("pow:", 0) == 0) {
        const double a = parse_number(w.substr(4), context);
        return [a](long k) { return std::pow(static_cast<double>(k + 1), a); };
    }
    if (w.rfind("k", 0) == 0) {
        const std::string rest = w.substr(1);
        double c = 0.0;
        if (!rest.empty()) {
            if (rest[0] != '+' && rest[0] != '-') throw std::invalid_argument("bad weight '" + w + "' in " + context);
            c = parse_number(rest, context);
        }
        return [c](long k) { return static_cast<double>(k) + c; };
    }
    const double c = parse_number(w, context);
    return [c](long) { return c; };
}

} // namespace

SummabilityMatrix builtin_matrix(const std::string& spec) {
    const auto colon = spec.find(':');
    const std::string family = spec.substr(0, colon);
    SummabilityMatrix::Params params;
    if (colon != std::string::npos) {
        std::stringstream ss(spec.substr(colon + 1));
        std::string item;
        while (std::getline(ss, item, ',')) {
            const auto eq = item.find('=');
            if (eq == std::string::npos || eq == 0)
                throw std::invalid_argument("matrix parameter '" + item + "' is not key=value in '" + spec + "'");
            params[item.substr(0, eq)] = item.substr(eq + 1);
        }
    }
    auto no_params = [&] {
        if (!params.empty()) throw std::invalid_argument("matrix family '" + family + "' takes no parameters");
    };
    if (family == "identity") return no_params(), identity_matrix();
    if (family == "cesaro") return no_params(), cesaro_matrix();
    if (family == "geometric") return no_params(), geometric_matrix();
    if (family == "norlund" || family == "riesz") {
        const auto it = params.find("p");
        if (it == params.end() || params.size() != 1)
            throw std::invalid_argument("matrix family '" + family + "' needs exactly the parameter p");
        auto w = parse_weight(it->second, spec);
        return family == "norlund" ? norlund_matrix(it->second, std::move(w)) : riesz_matrix(it->second, std::move(w));
    }
    throw std::invalid_argument("unknown matrix family '" + family + "'");
}

std::vector<std::string> builtin_matrix_ids() {
    return {"identity", "cesaro", "geometric", "norlund:p=k+1", "riesz:p=k+1", "norlund:p=harmonic"};
}

// Functionals ----------------------------------------------------------------

double r_difference_norm(const SummabilityMatrix& A, long n, int r, double tail_cut) {
    if (r < 1) throw std::invalid_argument("r_difference_norm: r must be >= 1");
    long K = 0;
    if (A.finite_row(n)) {
        K = A.truncation_index(n, 0, tail_cut);
    } else {
        // Remainder <= sum_{k>K} a_k + sum_{k>K+r} a_k <= 2 tail(K).
        K = A.truncation_index(n, 0, 0.5 * tail_cut);
    }
    const auto a = A.entries(n, K + r + 1);
    double s = 0.0;
    for (long k = 0; k <= K; ++k)
        s += std::abs(a[static_cast<std::size_t>(k)] - a[static_cast<std::size_t>(k + r)]);
    return s;
}

double r_difference_norm_lower(const SummabilityMatrix& A, long n, int r) {
    if (r < 1) throw std::invalid_argument("r_difference_norm_lower: r must be >= 1");
    const auto a = A.entries(n, n + r + 1);
    double s = 0.0;
    for (long k = 0; k <= n; ++k) s += std::abs(a[static_cast<std::size_t>(k)] - a[static_cast<std::size_t>(k + r)]);
    return s;
}

RowSum row_sum(const SummabilityMatrix& A, long n, double tail_cut) {
    const long K = A.truncation_index(n, 0, tail_cut);
    const auto a = A.entries(n, K + 1);
    RowSum out;
    for (double v : a) out.sum += v;
    out.remainder_bound = A.tail_bound(n, K, 0);
    return out;
}

double check_condition_113(const SummabilityMatrix& A, long n, int r) {
    if (r < 1) throw std::invalid_argument("condition (113): r must be >= 1");
    const auto a = A.entries(n, n + r);
    // Sliding window sum of length r starting at l = 0..n.
    double window = 0.0;
    for (long k = 0; k < r; ++k) window += a[static_cast<std::size_t>(k)];
    double total = window;
    for (long l = 1; l <= n; ++l) {
        window += a[static_cast<std::size_t>(l + r - 1)] - a[static_cast<std::size_t>(l - 1)];
        total += window;
    }
    return total;
}

namespace {

double moment_ratio(const SummabilityMatrix& A, long n, int j, double tail_cut) {
    const long K = A.truncation_index(n, j, tail_cut);
    const auto a = A.entries(n, K + 1);
    double s = 0.0;
    for (long k = 0; k <= K; ++k) s += moment_weight(k, j) * a[static_cast<std::size_t>(k)];
    return s / std::pow(static_cast<double>(n + 1), j);
}

} // namespace

double check_condition_114(const SummabilityMatrix& A, long n, double tail_cut) {
    return moment_ratio(A, n, 1, tail_cut);
}

double check_condition_115(const SummabilityMatrix& A, long n, double tail_cut) {
    return moment_ratio(A, n, 2, tail_cut);
}

DifferenceComparison compare_51(const SummabilityMatrix& A, long n, int r, double tail_cut) {
    return {r_difference_norm(A, n, r, tail_cut), r_difference_norm(A, n, 1, tail_cut)};
}

} // namespace trigsum
