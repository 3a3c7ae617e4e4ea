#pragma once

// Functions of modulus-of-continuity type and the weighted integral moduli
//
//   omega_beta f(delta)_{L^p}  = sup_{0<=|t|<=delta} |sin(rt/2)|^beta ||phi_.(t)||_{L^p}
//   omega~_beta f(delta)_{L^p} = sup_{0<=|t|<=delta} |sin(rt/2)|^beta ||psi_.(t)||_{L^p}

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "trigsum/periodic.hpp"

namespace trigsum {

class Modulus {
public:
    using Eval = std::function<double(double)>;

    Modulus(std::string name, std::map<std::string, double> params, Eval eval);

    double operator()(double delta) const { return eval_(delta); }
    const std::string& name() const noexcept { return name_; }
    const std::map<std::string, double>& params() const noexcept { return params_; }
    /// e.g. "power:0.5".
    std::string id() const;

    /// delta^alpha. A modulus-type function for alpha in (0, 1]; larger alpha is
    /// still accepted so it can serve as a comparator in class tests.
    static Modulus power(double alpha);
    /// delta (1 + log(2 pi / delta)), the log-Lipschitz modulus.
    static Modulus log_lipschitz();

private:
    std::string name_;
    std::map<std::string, double> params_;
    Eval eval_;
};

/// "power:<alpha>" or "log". Throws std::invalid_argument otherwise.
Modulus parse_modulus(const std::string& id);

struct ModulusAxiomReport {
    bool zero_at_origin = true;
    long monotonicity_violations = 0;
    long continuity_violations = 0;
    long subadditivity_violations = 0;
    long quasi_monotonicity_violations = 0; ///< delta2^-1 w(delta2) <= 2 delta1^-1 w(delta1)
    long pairs_checked = 0;
    bool passed() const {
        return zero_at_origin && monotonicity_violations == 0 && continuity_violations == 0 &&
               subadditivity_violations == 0 && quasi_monotonicity_violations == 0;
    }
};

/// Samples the axioms on [0, 2 pi]: a 4096-point grid for monotonicity and
/// continuity, and `pairs` random pairs (fixed seed) for the two-point properties.
ModulusAxiomReport check_modulus_axioms(const Modulus& omega, long pairs = 1000, std::uint64_t seed = 20240601);

enum class DifferenceSide { phi, psi };

std::string to_string(DifferenceSide side);
DifferenceSide parse_side(const std::string& s);

struct ModulusEstimate {
    double lower_bound = 0.0; ///< Max over the sampled grid.
    double estimate = 0.0;    ///< After golden-section refinement around the grid argmax.
    double argmax = 0.0;
    double resolution = 0.0;  ///< Grid spacing.
};

/// ||phi_.(t)||_{L^p} or ||psi_.(t)||_{L^p}, integrating over x in Q.
double difference_norm(const PeriodicFunction& f, double t, double p, DifferenceSide side,
                       const QuadratureConfig& cfg = {});

/// Weighted modulus on a grid of `grid_points` >= 512 points of [0, delta].
ModulusEstimate weighted_modulus(const PeriodicFunction& f, double delta, double beta, int r, double p,
                                 DifferenceSide side, const QuadratureConfig& cfg = {}, int grid_points = 512);

/// Sequence judgement used for every O(.) claim: ratios are bounded when all are
/// finite and the least-squares slope of log(ratio) against log(scale) is at most
/// slope_threshold. Ratios at or below noise_floor count as exact zeros and are not
/// used for the slope.
struct SweepJudgement {
    double max_ratio = 0.0;
    double min_ratio = 0.0;
    double slope = 0.0;
    bool bounded = true;
};

inline constexpr double kSlopeThreshold = 0.05;
inline constexpr double kRatioNoiseFloor = 1e-12;

SweepJudgement judge_sweep(const std::vector<double>& scale, const std::vector<double>& ratio,
                           double slope_threshold = kSlopeThreshold, double noise_floor = kRatioNoiseFloor);

struct MembershipReport {
    std::vector<double> deltas;
    std::vector<double> moduli;  ///< weighted modulus estimates
    std::vector<double> ratios;  ///< modulus / omega(delta)
    SweepJudgement judgement;    ///< against log(1/delta): growth as delta -> 0 is a positive slope
    bool member() const { return judgement.bounded; }
};

/// Estimates whether f lies in L^p(omega)_beta. Throws std::domain_error if omega
/// vanishes at some grid delta > 0.
MembershipReport class_membership(const PeriodicFunction& f, const Modulus& omega, double beta, int r, double p,
                                  DifferenceSide side, const std::vector<double>& delta_grid,
                                  const QuadratureConfig& cfg = {});

} // namespace trigsum
