#pragma once

// Config-driven rate experiments: sweep n geometrically, measure the deviation
// at each x, compare it with the theoretical bound and evaluate the conditions
// that accompany the chosen deviation kind.

#include <iosfwd>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "trigsum/conditions.hpp"
#include "trigsum/matrices.hpp"
#include "trigsum/moduli.hpp"
#include "trigsum/quadrature.hpp"
#include "trigsum/transforms.hpp"

namespace trigsum {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A module error raised inside the sweep, with the point it came from.
class ExperimentError : public std::runtime_error {
public:
    ExperimentError(const std::string& what, double x, long n, std::string condition_id);
    double x() const noexcept { return x_; }
    long n() const noexcept { return n_; }
    const std::string& condition_id() const noexcept { return condition_id_; }

private:
    double x_;
    long n_;
    std::string condition_id_;
};

struct ExperimentConfig {
    std::string function = "sawtooth";
    std::string matrix = "cesaro"; ///< builtin_matrix spec, e.g. "norlund:p=k+1".
    int r = 1;
    double beta = 0.0;
    double p = 2.0;
    double gamma = std::numeric_limits<double>::quiet_NaN(); ///< NaN means auto.
    std::string modulus = "power:1";
    std::vector<double> x_points{kPi / 2.0};
    long n_min = 4;
    long n_max = 512;
    double n_step = 2.0;
    DeviationKind kind = DeviationKind::ordinary();
    QuadratureConfig quadrature{};
    double tail_cut = kDefaultTailCut;

    /// Parses `key = value` lines; `#` starts a comment. Throws ConfigError.
    static ExperimentConfig parse(const std::string& text);
    static ExperimentConfig load(const std::string& path);

    /// n_min, round(n_min * step), ... up to n_max, strictly increasing.
    std::vector<long> n_values() const;
    /// Resolves every identifier and checks ranges. Throws ConfigError.
    void validate() const;
};

/// Parses a real or an expression in pi such as "pi/2", "-3*pi/4", "2pi".
double parse_real_expression(const std::string& s);

struct RateRow {
    double x = 0.0;
    long n = 0;
    double deviation = 0.0;
    double bound = 0.0;
    double ratio = 0.0;
    double remark1_bound = 0.0;
    double A_nr = 0.0;
    double A_n1 = 0.0;
    std::map<std::string, double> condition_ratios;
};

struct SweepSummary {
    double x = 0.0;
    SweepJudgement rate;
    SweepJudgement remark1_rate;
    std::map<std::string, SweepJudgement> conditions;
};

struct RateReport {
    ExperimentConfig config;
    std::vector<RateRow> rows;        ///< Ordered by x (config order), then n.
    std::vector<SweepSummary> summary; ///< One per x.
    /// True when every per-x deviation/bound sequence is judged bounded.
    bool rates_bounded() const;
};

/// bound = (n+1)^{beta+1/p+1} A_nr omega(pi/(n+1)).
double theorem_bound(long n, double beta, double p, double A_nr, const Modulus& omega);
/// remark1_bound = (n+1)^{beta+1} A_nr omega(pi/(n+1)).
double remark1_bound(long n, double beta, double A_nr, const Modulus& omega);

/// Runs the sweep. Config problems raise ConfigError, failures during the
/// sweep raise ExperimentError. Work over (x, n) runs in parallel; the result
/// does not depend on the thread count.
RateReport run_experiment(const ExperimentConfig& cfg, unsigned max_threads = 0);

enum class ReportFormat { csv, json };

ReportFormat parse_report_format(const std::string& s);

inline constexpr const char* kCsvHeader = "x,n,deviation,bound,ratio,remark1_bound,A_nr,A_n1";

void write_csv(const RateReport& report, std::ostream& os);
void write_json(const RateReport& report, std::ostream& os);
/// Writes the report to `path`. Throws std::runtime_error naming the path on I/O failure.
void emit_report(const RateReport& report, ReportFormat format, const std::string& path);

} // namespace trigsum
