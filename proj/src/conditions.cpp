#include "trigsum/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace trigsum {

namespace {

enum class Anchor { origin, shift, mirror };
enum class Shape { modulus_q, plain, gamma, t_weighted };

struct Info {
    ConditionId id;
    const char* name;
    Shape shape;
    Anchor anchor;
    bool uses_r; ///< Interval pi/(r(n+1)) and weight sin(ru/2) rather than pi/(n+1) and sin(u/2).
    DifferenceSide side;
};

constexpr DifferenceSide kPhi = DifferenceSide::phi;
constexpr DifferenceSide kPsi = DifferenceSide::psi;

const std::vector<Info>& table() {
    static const std::vector<Info> t = {
        {ConditionId::c2_6, "2.6", Shape::gamma, Anchor::origin, false, kPhi},
        {ConditionId::c2_7, "2.7", Shape::plain, Anchor::origin, false, kPhi},
        {ConditionId::c2_8, "2.8", Shape::modulus_q, Anchor::origin, false, kPhi},
        {ConditionId::c111, "111", Shape::t_weighted, Anchor::origin, false, kPsi},
        {ConditionId::c112, "112", Shape::gamma, Anchor::origin, false, kPsi},
        {ConditionId::c2_3, "2.3", Shape::plain, Anchor::origin, false, kPsi},
        {ConditionId::c2_4, "2.4", Shape::modulus_q, Anchor::origin, false, kPsi},
        {ConditionId::c2_81, "2.81", Shape::modulus_q, Anchor::origin, true, kPhi},
        {ConditionId::c2_71, "2.71", Shape::plain, Anchor::shift, true, kPhi},
        {ConditionId::c2_611, "2.611", Shape::gamma, Anchor::shift, true, kPhi},
        {ConditionId::c2_63, "2.63", Shape::plain, Anchor::mirror, true, kPhi},
        {ConditionId::c2_61, "2.61", Shape::gamma, Anchor::mirror, true, kPhi},
        {ConditionId::c1115, "1115", Shape::t_weighted, Anchor::origin, true, kPsi},
        {ConditionId::c2_6111, "2.6111", Shape::gamma, Anchor::shift, true, kPsi},
        {ConditionId::c2_811, "2.811", Shape::modulus_q, Anchor::origin, true, kPsi},
        {ConditionId::c2_711, "2.711", Shape::plain, Anchor::shift, true, kPsi},
        {ConditionId::c2_6311, "2.6311", Shape::plain, Anchor::mirror, true, kPhi},
        {ConditionId::c2_61111, "2.61111", Shape::gamma, Anchor::mirror, true, kPsi},
        {ConditionId::remark1_2611, "remark1_2.611", Shape::gamma, Anchor::shift, true, kPhi},
        {ConditionId::remark1_261, "remark1_2.61", Shape::gamma, Anchor::mirror, true, kPhi},
        {ConditionId::remark3_weak, "remark3_weak", Shape::t_weighted, Anchor::origin, false, kPhi},
    };
    return t;
}

const Info& info(ConditionId id) {
    for (const auto& e : table())
        if (e.id == id) return e;
    throw std::logic_error("condition: unknown id");
}

bool is_remark1(ConditionId id) { return id == ConditionId::remark1_2611 || id == ConditionId::remark1_261; }

double checked_modulus(const Modulus& omega, double t) {
    const double w = omega(t);
    if (!(w > 0.0)) {
        std::ostringstream os;
        os << "condition: modulus '" << omega.id() << "' vanishes at t=" << t;
        throw std::domain_error(os.str());
    }
    return w;
}

// ||v||_{L^s(lo, hi)}, scaled by a sampled magnitude so that large s neither
// overflows nor underflows. s = infinity is a sup over an interior grid.
double local_norm(const std::function<double(double)>& v, double lo, double hi, double s,
                  const QuadratureConfig& gk, const std::vector<double>& bps) {
    if (!(hi > lo)) return 0.0;
    constexpr int kSamples = 17;
    double M = 0.0;
    for (int i = 0; i < kSamples; ++i) M = std::max(M, std::abs(v(lo + (hi - lo) * (i + 0.5) / kSamples)));
    if (std::isinf(s)) {
        constexpr int kGrid = 1024;
        for (int i = 0; i < kGrid; ++i) M = std::max(M, std::abs(v(lo + (hi - lo) * (i + 0.5) / kGrid)));
        return M;
    }
    if (M == 0.0) M = 1.0;
    const double I = integral([&](double u) { return std::pow(std::abs(v(u)) / M, s); }, lo, hi, gk, bps);
    return M * std::pow(I, 1.0 / s);
}

std::vector<double> local_breakpoints(const PeriodicFunction& f, double x, double anchor, double dir, double lo,
                                      double hi) {
    const double t0 = anchor + dir * lo;
    const double t1 = anchor + dir * hi;
    std::vector<double> out;
    for (double t : difference_breakpoints(f, x, std::min(t0, t1), std::max(t0, t1))) out.push_back((t - anchor) * dir);
    std::sort(out.begin(), out.end());
    return out;
}

QuadratureConfig gauss_config(const QuadratureConfig& cfg) {
    QuadratureConfig gk = cfg;
    gk.base_rule = QuadratureRule::composite_gauss;
    return gk;
}

} // namespace

std::string to_string(ConditionId id) { return info(id).name; }

ConditionId parse_condition_id(const std::string& s) {
    for (const auto& e : table())
        if (s == e.name) return e.id;
    throw std::invalid_argument("unknown condition '" + s + "'");
}

const std::vector<ConditionId>& all_condition_ids() {
    static const std::vector<ConditionId> ids = [] {
        std::vector<ConditionId> v;
        for (const auto& e : table()) v.push_back(e.id);
        return v;
    }();
    return ids;
}

bool uses_difference(ConditionId id) { return info(id).shape != Shape::modulus_q; }
bool uses_conjugate_exponent(ConditionId id) { return info(id).shape == Shape::modulus_q; }
bool uses_gamma(ConditionId id) { return info(id).shape == Shape::gamma; }
DifferenceSide natural_side(ConditionId id) { return info(id).side; }

int max_shift_index(int r) {
    if (r < 1) throw std::invalid_argument("r must be >= 1");
    return r % 2 == 1 ? r / 2 : r / 2 - 1;
}

int max_mirror_index(int r) {
    if (r < 2) throw std::invalid_argument("mirrored conditions need r >= 2");
    return r / 2 - 1;
}

ConditionSpec ConditionSpec::make(ConditionId id, double p, double beta, int r, int m, double gamma) {
    ConditionSpec s;
    s.id = id;
    s.p = p;
    s.beta = beta;
    s.r = r;
    s.m = m;
    s.gamma = gamma;
    s.side = natural_side(id);
    return s;
}

double ConditionSpec::q() const { return p == 1.0 ? std::numeric_limits<double>::infinity() : p / (p - 1.0); }

double ConditionSpec::resolved_gamma() const {
    if (!std::isnan(gamma)) return gamma;
    return is_remark1(id) ? 1.0 / p + beta / 2.0 : (beta + 1.0 / p) / 2.0;
}

void ConditionSpec::validate() const {
    const std::string where = "condition " + to_string(id) + ": ";
    if (!(p >= 1.0 && p <= 8.0)) throw std::invalid_argument(where + "p must lie in [1, 8]");
    if (!(beta >= 0.0) || !std::isfinite(beta)) throw std::invalid_argument(where + "beta must be >= 0");
    if (r < 1) throw std::invalid_argument(where + "r must be >= 1");
    if (uses_gamma(id)) {
        const double g = resolved_gamma();
        if (is_remark1(id)) {
            if (!(beta > 0.0)) throw std::invalid_argument(where + "needs beta > 0");
            if (!(g > 1.0 / p && g < 1.0 / p + beta))
                throw std::invalid_argument(where + "gamma must lie in (1/p, 1/p + beta)");
        } else if (!(g > 0.0 && g < beta + 1.0 / p)) {
            throw std::invalid_argument(where + "gamma must lie in (0, beta + 1/p)");
        }
    }
    switch (info(id).anchor) {
    case Anchor::origin:
        if (m != 0) throw std::invalid_argument(where + "m must be 0");
        break;
    case Anchor::shift:
        if (m < 0 || m > max_shift_index(r)) throw std::invalid_argument(where + "m out of range for r");
        break;
    case Anchor::mirror:
        if (r < 2) throw std::invalid_argument(where + "needs r >= 2");
        if (m < 0 || m > max_mirror_index(r)) throw std::invalid_argument(where + "m out of range for r");
        break;
    }
}

std::string ConditionSpec::label() const {
    std::ostringstream os;
    os << to_string(id);
    const bool indexed = info(id).anchor != Anchor::origin;
    const bool sided = id == ConditionId::c2_6311 || (uses_difference(id) && side != natural_side(id));
    if (indexed || sided) {
        os << '[';
        if (indexed) os << "m=" << m;
        if (indexed && sided) os << ',';
        if (sided) os << to_string(side);
        os << ']';
    }
    return os.str();
}

namespace {

// Size of |f| on a fixed grid, used to tell rounding noise from a genuine difference.
double magnitude(const PeriodicFunction& f, double x) {
    constexpr int kGrid = 64;
    double m = std::abs(f(x));
    for (int i = 0; i < kGrid; ++i) m = std::max(m, std::abs(f(-kPi + kTwoPi * (i + 0.5) / kGrid)));
    return m;
}

// |phi_x(t)| or |psi_x(t)|, with differences at the rounding level of f set to
// zero. Dividing that noise by omega(t)^p near t = 0 would leave a
// non-integrable residue where the exact difference vanishes identically.
double rounded_difference(const PeriodicFunction& f, double x, double t, DifferenceSide side, double size) {
    if (t == 0.0) return 0.0;
    const double a = f(x + t);
    const double b = f(x - t);
    const double d = side == DifferenceSide::phi ? a + b - 2.0 * f(x) : a - b;
    return std::abs(d) <= 64.0 * std::numeric_limits<double>::epsilon() * size ? 0.0 : std::abs(d);
}

} // namespace

ConditionValue eval_condition(const PeriodicFunction& f, double x, long n, const ConditionSpec& spec,
                              const Modulus& omega, const QuadratureConfig& cfg) {
    spec.validate();
    if (n < 0) throw std::invalid_argument("eval_condition: n must be >= 0");
    const Info& inf = info(spec.id);
    const double n1 = static_cast<double>(n + 1);
    const double p = spec.p;
    const double beta = spec.beta;
    const double rw = inf.uses_r ? spec.r : 1.0;
    const double h = kPi / (rw * n1);
    const double gamma = spec.resolved_gamma();
    const QuadratureConfig gk = gauss_config(cfg);

    double anchor = 0.0;
    double dir = 1.0;
    if (inf.anchor == Anchor::shift) anchor = 2.0 * spec.m * kPi / spec.r;
    if (inf.anchor == Anchor::mirror) {
        anchor = 2.0 * (spec.m + 1) * kPi / spec.r;
        dir = -1.0;
    }
    auto weight = [&](double u) { return beta == 0.0 ? 1.0 : std::pow(std::abs(std::sin(0.5 * rw * u)), beta); };
    const double size = inf.shape == Shape::modulus_q ? 0.0 : magnitude(f, x);
    auto diff = [&](double u) { return rounded_difference(f, x, anchor + dir * u, spec.side, size); };
    auto om = [&](double u) { return checked_modulus(omega, anchor + dir * u); };

    ConditionValue out;
    std::function<double(double)> v;
    double lo = 0.0;
    double hi = h;
    double s = p;
    switch (inf.shape) {
    case Shape::modulus_q:
        v = [&](double u) { return om(u) / (u * weight(u)); };
        s = spec.q();
        out.rhs_scale = std::pow(n1, beta + 1.0 / p) * omega(kPi / n1);
        break;
    case Shape::plain:
        v = [&](double u) { return diff(u) / om(u) * weight(u); };
        out.rhs_scale = std::pow(n1, -1.0 / p);
        break;
    case Shape::gamma:
        lo = h;
        hi = inf.uses_r ? kPi / spec.r : kPi;
        v = [&](double u) { return diff(u) * weight(u) / (om(u) * std::pow(u, gamma)); };
        out.rhs_scale = std::pow(n1, is_remark1(spec.id) ? gamma - 1.0 / p : gamma);
        break;
    case Shape::t_weighted:
        v = [&](double u) { return u * diff(u) / om(u) * weight(u); };
        out.rhs_scale = spec.id == ConditionId::remark3_weak ? std::pow(n1, -1.0 - 1.0 / p) : 1.0 / n1;
        break;
    }
    const auto bps = inf.shape == Shape::modulus_q ? std::vector<double>{}
                                                   : local_breakpoints(f, x, anchor, dir, lo, hi);
    out.lhs = local_norm(v, lo, hi, s, gk, bps);
    return out;
}

std::vector<ConditionSpec> theorem_conditions(const DeviationKind& kind, int r, double beta, double p, double gamma) {
    if (r < 1) throw std::invalid_argument("theorem_conditions: r must be >= 1");
    std::vector<ConditionSpec> out;
    auto add = [&](ConditionId id, int m = 0) {
        out.push_back(ConditionSpec::make(id, p, beta, r, m, is_remark1(id) ? std::nan("") : gamma));
    };
    auto shifted = [&](ConditionId id) {
        for (int m = 0; m <= max_shift_index(r); ++m) add(id, m);
    };
    auto mirrored = [&](ConditionId id) {
        if (r < 2) return;
        for (int m = 0; m <= max_mirror_index(r); ++m) add(id, m);
    };
    if (kind.kind == DeviationKind::Kind::ordinary) {
        add(ConditionId::c2_81);
        shifted(ConditionId::c2_71);
        shifted(ConditionId::c2_611);
        mirrored(ConditionId::c2_63);
        mirrored(ConditionId::c2_61);
        if (beta > 0.0) {
            shifted(ConditionId::remark1_2611);
            mirrored(ConditionId::remark1_261);
        }
        if (r == 1) add(ConditionId::remark3_weak);
    } else {
        if (kind.kind == DeviationKind::Kind::conjugate_vs_truncated) add(ConditionId::c1115);
        shifted(ConditionId::c2_6111);
        add(ConditionId::c2_811);
        shifted(ConditionId::c2_711);
        if (r >= 2) {
            for (int m = 0; m <= max_mirror_index(r); ++m) {
                add(ConditionId::c2_6311, m);
                out.back().side = DifferenceSide::phi;
                add(ConditionId::c2_6311, m);
                out.back().side = DifferenceSide::psi;
            }
        }
        mirrored(ConditionId::c2_61111);
        if (beta > 0.0) {
            const std::size_t first = out.size();
            shifted(ConditionId::remark1_2611);
            mirrored(ConditionId::remark1_261);
            for (std::size_t i = first; i < out.size(); ++i) out[i].side = DifferenceSide::psi;
        }
    }
    return out;
}

SubstitutionIntegrals substitution_integrals(const Modulus& omega, double beta, int r, int m, long n, double q,
                                             const QuadratureConfig& cfg) {
    if (r < 1) throw std::invalid_argument("substitution_integrals: r must be >= 1");
    if (!(beta >= 0.0)) throw std::invalid_argument("substitution_integrals: beta must be >= 0");
    if (!(q >= 1.0)) throw std::invalid_argument("substitution_integrals: q must be >= 1");
    if (n < 0) throw std::invalid_argument("substitution_integrals: n must be >= 0");
    if (m < 0 || m > max_shift_index(r)) throw std::invalid_argument("substitution_integrals: m out of range");
    const double h = kPi / (r * static_cast<double>(n + 1));
    const QuadratureConfig gk = gauss_config(cfg);
    auto norm_from = [&](double anchor, double dir) {
        auto v = [&](double u) {
            const double t = anchor + dir * u;
            const double w = beta == 0.0 ? 1.0 : std::pow(std::abs(std::sin(0.5 * r * u)), beta);
            return checked_modulus(omega, t) / (t * w);
        };
        return local_norm(v, 0.0, h, q, gk, {});
    };
    SubstitutionIntegrals out;
    out.base = norm_from(0.0, 1.0);
    out.shifted = norm_from(2.0 * m * kPi / r, 1.0);
    out.mirrored = (r >= 2 && m <= max_mirror_index(r)) ? norm_from(2.0 * (m + 1) * kPi / r, -1.0)
                                                        : std::numeric_limits<double>::quiet_NaN();
    return out;
}

} // namespace trigsum
