#pragma once

// 2pi-periodic real functions, their Fourier coefficients, L^p norms and the
// symmetric/antisymmetric differences
//
//   phi_x(t) = f(x+t) + f(x-t) - 2 f(x)
//   psi_x(t) = f(x+t) - f(x-t)

#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "trigsum/quadrature.hpp"

namespace trigsum {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reduces x to [-pi, pi).
double wrap_to_q(double x);

struct Smoothness {
    enum class Kind { analytic, lipschitz, piecewise_smooth, bounded_variation };
    Kind kind = Kind::piecewise_smooth;
    double alpha = 0.0; ///< Lipschitz exponent, meaningful for Kind::lipschitz.

    static Smoothness analytic() { return {Kind::analytic, 1.0}; }
    static Smoothness lipschitz(double a) { return {Kind::lipschitz, a}; }
    static Smoothness piecewise_smooth() { return {Kind::piecewise_smooth, 0.0}; }
    static Smoothness bounded_variation() { return {Kind::bounded_variation, 0.0}; }

    /// True when psi_x(t)/t stays integrable near t = 0 at every continuity point.
    bool holder() const { return kind == Kind::analytic || kind == Kind::lipschitz; }
};

struct Coefficients {
    double a = 0.0;
    double b = 0.0;
};

/// An immutable 2pi-periodic function. Copies share the underlying callables.
class PeriodicFunction {
public:
    using Eval = std::function<double(double)>;
    using CoeffFn = std::function<Coefficients(int)>;

    PeriodicFunction(std::string name, Eval eval, Smoothness smoothness,
                     std::vector<double> breakpoints = {}, CoeffFn analytic_coeffs = {},
                     std::optional<double> coefficient_bound = std::nullopt);

    double operator()(double x) const { return eval_(x); }

    const std::string& name() const noexcept { return name_; }
    const Smoothness& smoothness() const noexcept { return smoothness_; }
    /// Jump/kink locations in [-pi, pi), sorted.
    const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
    bool has_analytic_coeffs() const noexcept { return static_cast<bool>(coeffs_); }
    /// Throws std::logic_error when no analytic coefficients are attached.
    Coefficients analytic_coeffs(int nu) const;
    /// A bound B with |a_nu| + |b_nu| <= B for every nu >= 1, if known.
    const std::optional<double>& coefficient_bound() const noexcept { return coeff_bound_; }

    /// alpha*f + beta*g. Analytic coefficients survive when both operands carry them.
    static PeriodicFunction linear_combination(double alpha, const PeriodicFunction& f, double beta,
                                               const PeriodicFunction& g);

private:
    std::string name_;
    Eval eval_;
    Smoothness smoothness_;
    std::vector<double> breakpoints_;
    CoeffFn coeffs_;
    std::optional<double> coeff_bound_;
};

/// (1/pi) int_Q f(t) cos(nu t) dt, (1/pi) int_Q f(t) sin(nu t) dt by quadrature.
Coefficients fourier_coefficient(const PeriodicFunction& f, int nu, const QuadratureConfig& cfg = {});

/// Analytic coefficients when attached, quadrature otherwise.
Coefficients coefficient(const PeriodicFunction& f, int nu, const QuadratureConfig& cfg = {});

/// (int_Q |g|^p)^(1/p). p is restricted to [1, 8].
double lp_norm(const std::function<double(double)>& g, double p, const QuadratureConfig& cfg = {},
               const std::vector<double>& breakpoints = {});

double phi(const PeriodicFunction& f, double x, double t);
double psi(const PeriodicFunction& f, double x, double t);

/// Points t in [lo, hi] where phi_x or psi_x may be non-smooth: t = +-(b - x) + 2 pi j.
std::vector<double> difference_breakpoints(const PeriodicFunction& f, double x, double lo, double hi);

/// Points s in [-pi, pi] where s -> phi_s(t) may be non-smooth: s = b, b - t, b + t (mod 2 pi).
std::vector<double> shifted_breakpoints(const PeriodicFunction& f, double t);

// Corpus ------------------------------------------------------------------

PeriodicFunction constant_function(double c);
PeriodicFunction cos_harmonic(int k);
PeriodicFunction sin_harmonic(int k);
/// (pi - x)/2 on (0, 2pi), 0 at the jump; b_k = 1/k.
PeriodicFunction sawtooth();
/// sum cos((2k+1)x)/(2k+1)^2 = pi^2/8 - pi|x|/4 on [-pi, pi].
PeriodicFunction triangle_wave();
/// |sin x|; a_0 = 4/pi, a_{2k} = -4/(pi (4k^2 - 1)).
PeriodicFunction abs_sin();

std::vector<PeriodicFunction> builtin_corpus();

/// Resolves "const1", "const:<c>", "coskx:<k>", "sinkx:<k>", "sawtooth", "triangle", "abssin".
/// Throws std::invalid_argument for unknown names.
PeriodicFunction corpus_function(const std::string& name);

} // namespace trigsum
