#pragma once

// Integral conditions on the modulus and the differences phi_x, psi_x under
// which the rate bounds hold, and the substitution estimates used to move the
// modulus integrals off the singular points 2 m pi / r.
//
// Every condition is evaluated in local coordinates u >= 0 measured from its
// anchor (0, 2 m pi / r or 2 (m+1) pi / r), so |sin(rt/2)| = |sin(ru/2)| holds
// exactly and the quadrature never samples the endpoint singularity.

#include <limits>
#include <string>
#include <vector>

#include "trigsum/moduli.hpp"
#include "trigsum/periodic.hpp"
#include "trigsum/transforms.hpp"

namespace trigsum {

enum class ConditionId {
    // r = 1 conditions of the classical results.
    c2_6, c2_7, c2_8, c111, c112, c2_3, c2_4,
    // General r.
    c2_81, c2_71, c2_611, c2_63, c2_61,
    c1115, c2_6111, c2_811, c2_711, c2_6311, c2_61111,
    // Alternatives with the improved exponent, and the weaker r = 1 condition
    // that goes with the first-moment matrix condition.
    remark1_2611, remark1_261, remark3_weak,
};

/// "2.81", "1115", "remark1_2.611", ...
std::string to_string(ConditionId id);
ConditionId parse_condition_id(const std::string& s);
const std::vector<ConditionId>& all_condition_ids();

/// True for conditions whose integrand involves phi_x or psi_x.
bool uses_difference(ConditionId id);
/// True for conditions normed with q = p/(p-1) rather than p.
bool uses_conjugate_exponent(ConditionId id);
/// True for conditions carrying the free exponent gamma.
bool uses_gamma(ConditionId id);
/// phi for the ordinary conditions, psi for the conjugate ones; (2.6311) is phi as printed.
DifferenceSide natural_side(ConditionId id);

struct ConditionSpec {
    ConditionId id = ConditionId::c2_81;
    double p = 2.0;
    double beta = 0.0;
    double gamma = std::numeric_limits<double>::quiet_NaN(); ///< NaN selects the default.
    int r = 1;
    int m = 0;
    DifferenceSide side = DifferenceSide::phi;

    static ConditionSpec make(ConditionId id, double p, double beta, int r = 1, int m = 0,
                              double gamma = std::numeric_limits<double>::quiet_NaN());

    /// p/(p-1); infinity for p = 1.
    double q() const;
    /// gamma, or the default (beta + 1/p)/2 (1/p + beta/2 for the remark1_* ids).
    double resolved_gamma() const;
    /// Throws std::invalid_argument on p outside [1, 8], beta < 0, gamma outside its
    /// interval or m outside the range of the condition.
    void validate() const;
    /// e.g. "2.71[m=1]" or "2.6311[m=0,psi]".
    std::string label() const;
};

/// Largest admissible m: [r/2] for odd r, [r/2] - 1 for even r.
int max_shift_index(int r);
/// Largest m for the mirrored conditions, [r/2] - 1 (requires r >= 2).
int max_mirror_index(int r);

struct ConditionValue {
    double lhs = 0.0;
    double rhs_scale = 0.0;
    double ratio() const { return lhs / rhs_scale; }
};

/// Evaluates the condition at n. The quadrature runs with Gauss-Kronrod panels.
/// Throws std::domain_error if omega vanishes at some t > 0 on the interval.
/// A non-integrable singularity surfaces as QuadratureError.
ConditionValue eval_condition(const PeriodicFunction& f, double x, long n, const ConditionSpec& spec,
                              const Modulus& omega, const QuadratureConfig& cfg = {});

/// The conditions that accompany a deviation kind at the given parameters, one
/// entry per admissible m. The remark1_* ids are added when beta > 0, the weak
/// condition when r = 1 and the kind is ordinary. (2.6311) appears with both sides.
std::vector<ConditionSpec> theorem_conditions(const DeviationKind& kind, int r, double beta, double p,
                                              double gamma = std::numeric_limits<double>::quiet_NaN());

/// The three integrals {int (omega(t) / (t |sin(rt/2)|^beta))^q dt}^{1/q} over
/// [0, h], [2 m pi / r, 2 m pi / r + h] and [2(m+1) pi / r - h, 2(m+1) pi / r],
/// with h = pi / (r (n+1)). mirrored is NaN when m exceeds max_mirror_index(r).
struct SubstitutionIntegrals {
    double base = 0.0;
    double shifted = 0.0;
    double mirrored = 0.0;
};

SubstitutionIntegrals substitution_integrals(const Modulus& omega, double beta, int r, int m, long n, double q,
                                             const QuadratureConfig& cfg = {});

} // namespace trigsum
