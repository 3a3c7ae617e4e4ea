#pragma once

// Adaptive quadrature on finite intervals.
//
// Both rules run the same globally adaptive loop: keep a heap of
// subintervals keyed by their local error estimate and bisect the worst one
// until the summed estimate drops below max(abs_tol, rel_tol * |I|) or the
// subdivision budget is exhausted. Breakpoints passed by the caller are
// honoured as initial interval boundaries, so jump discontinuities and kinks
// never sit inside a panel.

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace trigsum {

enum class QuadratureRule {
    composite_gauss,  ///< Gauss-Kronrod 7/15 panels; never samples panel endpoints.
    adaptive_simpson, ///< Simpson pairs with a Richardson-corrected panel value.
};

struct QuadratureConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    long max_subdivisions = 1L << 20;
    QuadratureRule base_rule = QuadratureRule::adaptive_simpson;

    /// Throws std::invalid_argument when a field is out of range.
    void validate() const;
};

class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double error_estimate, long subdivisions)
        : std::runtime_error(what), error_estimate_(error_estimate), subdivisions_(subdivisions) {}

    double error_estimate() const noexcept { return error_estimate_; }
    long subdivisions() const noexcept { return subdivisions_; }

private:
    double error_estimate_;
    long subdivisions_;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long subdivisions = 0;
};

using Integrand = std::function<double(double)>;

/// Integrates g over [a, b]. Breakpoints outside (a, b) are ignored.
/// Throws QuadratureError if the tolerance is not met within the budget or
/// the integrand produces a non-finite value.
QuadratureResult integrate(const Integrand& g, double a, double b, const QuadratureConfig& cfg,
                           std::span<const double> breakpoints = {});

/// Convenience wrapper returning only the value.
double integral(const Integrand& g, double a, double b, const QuadratureConfig& cfg,
                std::span<const double> breakpoints = {});

} // namespace trigsum
