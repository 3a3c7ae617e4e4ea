#include "trigsum/transforms.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "trigsum/kernels.hpp"

namespace trigsum {

namespace {

std::vector<Coefficients> coefficient_table(const PeriodicFunction& f, long K, const QuadratureConfig& cfg) {
    std::vector<Coefficients> c(static_cast<std::size_t>(K + 1));
    for (long nu = 0; nu <= K; ++nu) c[static_cast<std::size_t>(nu)] = coefficient(f, static_cast<int>(nu), cfg);
    return c;
}

// C with |S_k f(x)|, |S~_k f(x)| <= C (k+1) for every k.
double partial_sum_growth(const PeriodicFunction& f, const QuadratureConfig& cfg) {
    double B = 0.0;
    if (f.coefficient_bound()) {
        B = *f.coefficient_bound();
    } else {
        // |a_nu| + |b_nu| <= (2/pi) ||f||_1.
        B = 2.0 / kPi * integral([&](double t) { return std::abs(f(t)); }, -kPi, kPi, cfg, f.breakpoints());
    }
    const double a0 = std::abs(coefficient(f, 0, cfg).a) / 2.0;
    return std::max({a0, B, 1e-300});
}

long transform_cut(const PeriodicFunction& f, const SummabilityMatrix& A, long n, double tail_cut,
                   const QuadratureConfig& cfg) {
    if (A.finite_row(n)) return A.truncation_index(n, 1, tail_cut);
    return A.truncation_index(n, 1, tail_cut / partial_sum_growth(f, cfg));
}

} // namespace

double partial_sum(const PeriodicFunction& f, long k, double x, const QuadratureConfig& cfg) {
    if (k < 0) throw std::invalid_argument("partial_sum: k must be >= 0");
    double s = coefficient(f, 0, cfg).a / 2.0;
    for (long nu = 1; nu <= k; ++nu) {
        const Coefficients c = coefficient(f, static_cast<int>(nu), cfg);
        s += c.a * std::cos(nu * x) + c.b * std::sin(nu * x);
    }
    return s;
}

double conjugate_partial_sum(const PeriodicFunction& f, long k, double x, const QuadratureConfig& cfg) {
    if (k < 0) throw std::invalid_argument("conjugate_partial_sum: k must be >= 0");
    double s = 0.0;
    for (long nu = 1; nu <= k; ++nu) {
        const Coefficients c = coefficient(f, static_cast<int>(nu), cfg);
        s += c.a * std::sin(nu * x) - c.b * std::cos(nu * x);
    }
    return s;
}

double matrix_transform(const PeriodicFunction& f, const SummabilityMatrix& A, long n, double x, double tail_cut,
                        const QuadratureConfig& cfg) {
    const long K = transform_cut(f, A, n, tail_cut, cfg);
    const auto a = A.entries(n, K + 1);
    const auto c = coefficient_table(f, K, cfg);
    double s = c[0].a / 2.0;
    double t = a[0] * s;
    for (long k = 1; k <= K; ++k) {
        const auto& ck = c[static_cast<std::size_t>(k)];
        s += ck.a * std::cos(k * x) + ck.b * std::sin(k * x);
        t += a[static_cast<std::size_t>(k)] * s;
    }
    return t;
}

double conjugate_matrix_transform(const PeriodicFunction& f, const SummabilityMatrix& A, long n, double x,
                                  double tail_cut, const QuadratureConfig& cfg) {
    const long K = transform_cut(f, A, n, tail_cut, cfg);
    const auto a = A.entries(n, K + 1);
    const auto c = coefficient_table(f, K, cfg);
    double s = 0.0;
    double t = 0.0;
    for (long k = 1; k <= K; ++k) {
        const auto& ck = c[static_cast<std::size_t>(k)];
        s += ck.a * std::sin(k * x) - ck.b * std::cos(k * x);
        t += a[static_cast<std::size_t>(k)] * s;
    }
    return t;
}

namespace {

std::vector<double> shift_breakpoints(const PeriodicFunction& f, double x) {
    std::vector<double> bps{0.0};
    for (double b : f.breakpoints()) bps.push_back(wrap_to_q(b - x));
    return bps;
}

} // namespace

double matrix_transform_via_kernel(const PeriodicFunction& f, const SummabilityMatrix& A, long n, double x,
                                   const QuadratureConfig& cfg, double tail_cut) {
    QuadratureConfig gk = cfg;
    gk.base_rule = QuadratureRule::composite_gauss;
    const auto bps = shift_breakpoints(f, x);
    return integral([&](double t) { return f(x + t) * weighted_dirichlet_sum(A, n, t, tail_cut); }, -kPi, kPi, gk,
                    bps) /
           kPi;
}

double conjugate_matrix_transform_via_kernel(const PeriodicFunction& f, const SummabilityMatrix& A, long n,
                                             double x, const QuadratureConfig& cfg, double tail_cut) {
    QuadratureConfig gk = cfg;
    gk.base_rule = QuadratureRule::composite_gauss;
    const auto bps = shift_breakpoints(f, x);
    return -integral(
               [&](double t) {
                   return f(x + t) * weighted_conjugate_sum(A, n, t, tail_cut, KernelKind::conjugate);
               },
               -kPi, kPi, gk, bps) /
           kPi;
}

namespace {

double conjugate_piece(const PeriodicFunction& f, double x, double lo, double hi, const QuadratureConfig& cfg) {
    const auto bps = difference_breakpoints(f, x, lo, hi);
    return -integral([&](double t) { return psi(f, x, t) * 0.5 / std::tan(0.5 * t); }, lo, hi, cfg, bps) / kPi;
}

} // namespace

double conjugate_truncated(const PeriodicFunction& f, double x, double eps, const QuadratureConfig& cfg) {
    if (!(eps > 0.0 && eps < kPi)) throw std::invalid_argument("conjugate_truncated: eps must lie in (0, pi)");
    return conjugate_piece(f, x, eps, kPi, cfg);
}

ConjugateLimit conjugate_limit(const PeriodicFunction& f, double x, const QuadratureConfig& cfg) {
    constexpr int kMaxLevels = 48;
    constexpr int kMaxColumns = 6;
    const double accept = 10.0 * cfg.abs_tol;

    double eps = 0.5;
    double value = conjugate_piece(f, x, eps, kPi, cfg);
    std::vector<std::array<double, kMaxColumns>> table;
    std::vector<double> diagonal;
    for (int level = 0; level <= kMaxLevels; ++level) {
        if (level > 0) {
            value += conjugate_piece(f, x, 0.5 * eps, eps, cfg);
            eps *= 0.5;
        }
        std::array<double, kMaxColumns> row{};
        row[0] = value;
        const int cols = std::min(level + 1, kMaxColumns);
        for (int i = 1; i < cols; ++i) {
            const double scale = std::ldexp(1.0, i) - 1.0;
            row[i] = row[i - 1] + (row[i - 1] - table.back()[i - 1]) / scale;
        }
        table.push_back(row);
        diagonal.push_back(row[cols - 1]);
        const std::size_t m = diagonal.size();
        if (m >= 3) {
            const double d1 = std::abs(diagonal[m - 1] - diagonal[m - 2]);
            const double d2 = std::abs(diagonal[m - 2] - diagonal[m - 3]);
            const double d3 = std::abs(diagonal[m - 1] - diagonal[m - 3]);
            if (d1 <= accept && d2 <= accept) return {diagonal[m - 1], level, eps, std::max({d1, d2, d3})};
        }
    }
    std::ostringstream os;
    os << "conjugate_limit: truncated conjugate values do not settle at x=" << x << " for '" << f.name()
       << "' down to eps=" << eps << " (psi_x(t)/t may not be integrable at 0)";
    throw ConjugateLimitError(os.str());
}

std::string to_string(TruncationRule rule) {
    return rule == TruncationRule::pi_over_n1 ? "pi_over_n1" : "pi_over_rn1";
}

std::string to_string(const DeviationKind& kind) {
    switch (kind.kind) {
    case DeviationKind::Kind::ordinary: return "ordinary";
    case DeviationKind::Kind::conjugate_vs_limit: return "conjugate_vs_limit";
    case DeviationKind::Kind::conjugate_vs_truncated: return "conjugate_vs_truncated";
    }
    return "unknown";
}

TruncationRule parse_truncation_rule(const std::string& rule) {
    if (rule == "pi_over_n1") return TruncationRule::pi_over_n1;
    if (rule == "pi_over_rn1") return TruncationRule::pi_over_rn1;
    throw std::invalid_argument("unknown truncation rule '" + rule + "'");
}

DeviationKind parse_deviation_kind(const std::string& kind, const std::string& truncation_rule) {
    if (kind == "ordinary") return DeviationKind::ordinary();
    if (kind == "conjugate_vs_limit") return DeviationKind::conjugate_vs_limit();
    if (kind == "conjugate_vs_truncated")
        return DeviationKind::conjugate_vs_truncated(parse_truncation_rule(truncation_rule));
    throw std::invalid_argument("unknown deviation kind '" + kind + "'");
}

double truncation_point(TruncationRule rule, long n, int r) {
    const double n1 = static_cast<double>(n + 1);
    return rule == TruncationRule::pi_over_n1 ? kPi / n1 : kPi / (r * n1);
}

double deviation(const PeriodicFunction& f, const SummabilityMatrix& A, long n, double x, const DeviationKind& kind,
                 int r, const QuadratureConfig& cfg, double tail_cut) {
    if (r < 1) throw std::invalid_argument("deviation: r must be >= 1");
    switch (kind.kind) {
    case DeviationKind::Kind::ordinary: return std::abs(matrix_transform(f, A, n, x, tail_cut, cfg) - f(x));
    case DeviationKind::Kind::conjugate_vs_limit:
        return std::abs(conjugate_matrix_transform(f, A, n, x, tail_cut, cfg) - conjugate_limit(f, x, cfg).value);
    case DeviationKind::Kind::conjugate_vs_truncated:
        return std::abs(conjugate_matrix_transform(f, A, n, x, tail_cut, cfg) -
                        conjugate_truncated(f, x, truncation_point(kind.truncation, n, r), cfg));
    }
    throw std::logic_error("deviation: unknown kind");
}

} // namespace trigsum
