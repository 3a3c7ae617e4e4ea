#include "trigsum/harness.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "trigsum/parallel.hpp"

namespace trigsum {

ExperimentError::ExperimentError(const std::string& what, double x, long n, std::string condition_id)
    : std::runtime_error([&] {
          std::ostringstream os;
          os.precision(17);
          os << "x=" << x << ", n=" << n;
          if (!condition_id.empty()) os << ", condition=" << condition_id;
          os << ": " << what;
          return os.str();
      }()),
      x_(x), n_(n), condition_id_(std::move(condition_id)) {}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& s, const std::string& key) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos == 0 || pos != s.size()) throw ConfigError("config: '" + key + "' expects a number, got '" + s + "'");
    return v;
}

long parse_integer(const std::string& s, const std::string& key) {
    const double v = parse_number(s, key);
    if (v != std::floor(v) || std::abs(v) > 1e15)
        throw ConfigError("config: '" + key + "' expects an integer, got '" + s + "'");
    return static_cast<long>(v);
}

QuadratureRule parse_rule(const std::string& s) {
    if (s == "gauss" || s == "composite_gauss") return QuadratureRule::composite_gauss;
    if (s == "simpson" || s == "adaptive_simpson") return QuadratureRule::adaptive_simpson;
    throw ConfigError("config: unknown quadrature rule '" + s + "'");
}

} // namespace

double parse_real_expression(const std::string& raw) {
    std::string s;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw std::invalid_argument("empty number");
    const auto at = s.find("pi");
    if (at == std::string::npos) {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("bad number '" + raw + "'");
        return v;
    }
    std::string pre = s.substr(0, at);
    const std::string post = s.substr(at + 2);
    if (!pre.empty() && pre.back() == '*') pre.pop_back();
    double coef = 1.0;
    if (pre == "-") {
        coef = -1.0;
    } else if (pre == "+") {
        coef = 1.0;
    } else if (!pre.empty()) {
        std::size_t pos = 0;
        coef = std::stod(pre, &pos);
        if (pos != pre.size()) throw std::invalid_argument("bad number '" + raw + "'");
    }
    double den = 1.0;
    if (!post.empty()) {
        if (post[0] != '/') throw std::invalid_argument("bad number '" + raw + "'");
        std::size_t pos = 0;
        den = std::stod(post.substr(1), &pos);
        if (pos != post.size() - 1 || den == 0.0) throw std::invalid_argument("bad number '" + raw + "'");
    }
    return coef * kPi / den;
}

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::set<std::string> seen;
    std::map<std::string, std::string> matrix_params;
    std::string matrix_family;
    bool matrix_plain = false;
    std::string kind = "ordinary";
    std::string truncation = "pi_over_n1";
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key or value");
        if (!seen.insert(key).second) throw ConfigError("config: duplicate key '" + key + "'");

        try {
            if (key == "function") {
                cfg.function = value;
            } else if (key == "matrix") {
                cfg.matrix = value;
                matrix_plain = true;
            } else if (key == "matrix.family") {
                matrix_family = value;
            } else if (key.rfind("matrix.", 0) == 0) {
                matrix_params[key.substr(7)] = value;
            } else if (key == "r") {
                const long r = parse_integer(value, key);
                if (r < 1 || r > 1000) throw ConfigError("config: r must lie in [1, 1000]");
                cfg.r = static_cast<int>(r);
            } else if (key == "beta") {
                cfg.beta = parse_number(value, key);
            } else if (key == "p") {
                cfg.p = parse_number(value, key);
            } else if (key == "gamma") {
                cfg.gamma = value == "auto" ? std::nan("") : parse_number(value, key);
            } else if (key == "modulus") {
                cfg.modulus = value;
            } else if (key == "x_points") {
                cfg.x_points.clear();
                std::stringstream ss(value);
                std::string item;
                while (std::getline(ss, item, ',')) cfg.x_points.push_back(parse_real_expression(item));
            } else if (key == "n.min") {
                cfg.n_min = parse_integer(value, key);
            } else if (key == "n.max") {
                cfg.n_max = parse_integer(value, key);
            } else if (key == "n.step") {
                cfg.n_step = parse_number(value, key);
            } else if (key == "kind") {
                kind = value;
            } else if (key == "truncation_rule") {
                truncation = value;
            } else if (key == "quadrature.abs_tol") {
                cfg.quadrature.abs_tol = parse_number(value, key);
            } else if (key == "quadrature.rel_tol") {
                cfg.quadrature.rel_tol = parse_number(value, key);
            } else if (key == "quadrature.max_subdivisions") {
                cfg.quadrature.max_subdivisions = parse_integer(value, key);
            } else if (key == "quadrature.rule") {
                cfg.quadrature.base_rule = parse_rule(value);
            } else if (key == "tail_cut") {
                cfg.tail_cut = parse_number(value, key);
            } else {
                throw ConfigError("config: unknown key '" + key + "'");
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError("config: bad value for '" + key + "': " + e.what());
        }
    }
    if (matrix_plain && (!matrix_family.empty() || !matrix_params.empty()))
        throw ConfigError("config: use either 'matrix' or 'matrix.family' with parameters, not both");
    if (!matrix_params.empty() && matrix_family.empty())
        throw ConfigError("config: matrix parameters given without 'matrix.family'");
    if (!matrix_family.empty()) {
        cfg.matrix = matrix_family;
        char sep = ':';
        for (const auto& [k, v] : matrix_params) {
            cfg.matrix += sep + k + "=" + v;
            sep = ',';
        }
    }
    try {
        cfg.kind = parse_deviation_kind(kind, truncation);
        if (kind != "conjugate_vs_truncated") (void)parse_truncation_rule(truncation);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

std::vector<long> ExperimentConfig::n_values() const {
    std::vector<long> out;
    for (long n = n_min; n <= n_max;) {
        out.push_back(n);
        n = std::max(n + 1, static_cast<long>(std::llround(static_cast<double>(n) * n_step)));
    }
    return out;
}

void ExperimentConfig::validate() const {
    try {
        const auto f = corpus_function(function);
        (void)builtin_matrix(matrix);
        (void)parse_modulus(modulus);
        quadrature.validate();
        if (r < 1) throw ConfigError("r must be >= 1");
        if (!(beta >= 0.0) || !std::isfinite(beta)) throw ConfigError("beta must be >= 0");
        if (!(p >= 1.0 && p <= 8.0)) throw ConfigError("p must lie in [1, 8]");
        if (n_min < 1) throw ConfigError("n.min must be >= 1");
        if (n_max < n_min) throw ConfigError("n.max must be >= n.min");
        if (n_max > 4096) throw ConfigError("n.max must be <= 4096");
        if (!(n_step > 1.0)) throw ConfigError("n.step must be > 1");
        if (!(tail_cut > 0.0)) throw ConfigError("tail_cut must be > 0");
        if (x_points.empty()) throw ConfigError("x_points must not be empty");
        for (double x : x_points) {
            if (!std::isfinite(x)) throw ConfigError("x_points must be finite");
            if (f.smoothness().holder()) continue;
            for (double b : f.breakpoints()) {
                if (std::abs(wrap_to_q(x - b)) < 1e-9) {
                    std::ostringstream os;
                    os.precision(17);
                    os << "x=" << x << " sits on a breakpoint of '" << function << "'";
                    throw ConfigError(os.str());
                }
            }
        }
        for (const auto& spec : theorem_conditions(kind, r, beta, p, gamma)) spec.validate();
    } catch (const ConfigError& e) {
        throw ConfigError(std::string("config: ") + e.what());
    } catch (const std::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
}

bool RateReport::rates_bounded() const {
    return std::all_of(summary.begin(), summary.end(), [](const SweepSummary& s) { return s.rate.bounded; });
}

double theorem_bound(long n, double beta, double p, double A_nr, const Modulus& omega) {
    const double n1 = static_cast<double>(n + 1);
    return std::pow(n1, beta + 1.0 / p + 1.0) * A_nr * omega(kPi / n1);
}

double remark1_bound(long n, double beta, double A_nr, const Modulus& omega) {
    const double n1 = static_cast<double>(n + 1);
    return std::pow(n1, beta + 1.0) * A_nr * omega(kPi / n1);
}

RateReport run_experiment(const ExperimentConfig& cfg, unsigned max_threads) {
    cfg.validate();
    const PeriodicFunction f = corpus_function(cfg.function);
    const SummabilityMatrix A = builtin_matrix(cfg.matrix);
    const Modulus omega = parse_modulus(cfg.modulus);
    const auto ns = cfg.n_values();
    const auto specs = theorem_conditions(cfg.kind, cfg.r, cfg.beta, cfg.p, cfg.gamma);
    const auto& q = cfg.quadrature;
    const bool ordinary = cfg.kind.kind == DeviationKind::Kind::ordinary;
    const bool with_114 = ordinary && cfg.r == 1;
    const bool with_115 = cfg.kind.kind == DeviationKind::Kind::conjugate_vs_truncated;

    // The conjugate function does not depend on n.
    std::vector<double> limits(cfg.x_points.size(), 0.0);
    if (cfg.kind.kind == DeviationKind::Kind::conjugate_vs_limit) {
        parallel_for(
            cfg.x_points.size(),
            [&](std::size_t i) {
                try {
                    limits[i] = conjugate_limit(f, cfg.x_points[i], q).value;
                } catch (const std::exception& e) {
                    throw ExperimentError(e.what(), cfg.x_points[i], -1, "");
                }
            },
            max_threads);
    }

    RateReport report;
    report.config = cfg;
    report.rows.resize(cfg.x_points.size() * ns.size());
    parallel_for(
        report.rows.size(),
        [&](std::size_t idx) {
            const std::size_t ix = idx / ns.size();
            const double x = cfg.x_points[ix];
            const long n = ns[idx % ns.size()];
            RateRow row;
            row.x = x;
            row.n = n;
            std::string current;
            try {
                row.A_nr = r_difference_norm(A, n, cfg.r, cfg.tail_cut);
                row.A_n1 = r_difference_norm(A, n, 1, cfg.tail_cut);
                switch (cfg.kind.kind) {
                case DeviationKind::Kind::ordinary:
                    row.deviation = std::abs(matrix_transform(f, A, n, x, cfg.tail_cut, q) - f(x));
                    break;
                case DeviationKind::Kind::conjugate_vs_limit:
                    row.deviation = std::abs(conjugate_matrix_transform(f, A, n, x, cfg.tail_cut, q) - limits[ix]);
                    break;
                case DeviationKind::Kind::conjugate_vs_truncated:
                    row.deviation = std::abs(
                        conjugate_matrix_transform(f, A, n, x, cfg.tail_cut, q) -
                        conjugate_truncated(f, x, truncation_point(cfg.kind.truncation, n, cfg.r), q));
                    break;
                }
                row.bound = theorem_bound(n, cfg.beta, cfg.p, row.A_nr, omega);
                row.ratio = row.deviation / row.bound;
                row.remark1_bound = remark1_bound(n, cfg.beta, row.A_nr, omega);

                current = "113";
                row.condition_ratios["113"] = 1.0 / check_condition_113(A, n, cfg.r);
                if (with_114) {
                    current = "114";
                    row.condition_ratios["114"] = check_condition_114(A, n, cfg.tail_cut);
                }
                if (with_115) {
                    current = "115";
                    row.condition_ratios["115"] = check_condition_115(A, n, cfg.tail_cut);
                }
                for (const auto& spec : specs) {
                    current = spec.label();
                    row.condition_ratios[current] = eval_condition(f, x, n, spec, omega, q).ratio();
                }
            } catch (const ExperimentError&) {
                throw;
            } catch (const std::exception& e) {
                throw ExperimentError(e.what(), x, n, current);
            }
            report.rows[idx] = std::move(row);
        },
        max_threads);

    std::vector<double> scale;
    for (long n : ns) scale.push_back(static_cast<double>(n + 1));
    for (std::size_t ix = 0; ix < cfg.x_points.size(); ++ix) {
        SweepSummary s;
        s.x = cfg.x_points[ix];
        std::vector<double> rate, rem;
        std::map<std::string, std::vector<double>> conds;
        for (std::size_t j = 0; j < ns.size(); ++j) {
            const RateRow& row = report.rows[ix * ns.size() + j];
            rate.push_back(row.ratio);
            rem.push_back(row.deviation / row.remark1_bound);
            for (const auto& [k, v] : row.condition_ratios) conds[k].push_back(v);
        }
        s.rate = judge_sweep(scale, rate);
        s.remark1_rate = judge_sweep(scale, rem);
        for (const auto& [k, v] : conds) s.conditions[k] = judge_sweep(scale, v);
        report.summary.push_back(std::move(s));
    }
    return report;
}

} // namespace trigsum
