#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <ostream>
#include <string>

#include "json.hpp"

#include "trigsum/harness.hpp"

namespace trigsum {

namespace {

using nlohmann::json;

std::string number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void append_escaped(std::string& out, const std::string& s) {
    out += json(s).dump();
}

// Like json::dump(2), but doubles use 17 significant digits and non-finite
// values become null. Object keys come out sorted because json uses std::map.
void dump(const json& j, std::string& out, int depth) {
    const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
    const std::string close(static_cast<std::size_t>(2 * depth), ' ');
    switch (j.type()) {
    case json::value_t::object: {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) out += ",\n";
            first = false;
            out += pad;
            append_escaped(out, it.key());
            out += ": ";
            dump(it.value(), out, depth + 1);
        }
        out += "\n" + close + "}";
        return;
    }
    case json::value_t::array: {
        if (j.empty()) {
            out += "[]";
            return;
        }
        out += "[\n";
        bool first = true;
        for (const auto& v : j) {
            if (!first) out += ",\n";
            first = false;
            out += pad;
            dump(v, out, depth + 1);
        }
        out += "\n" + close + "]";
        return;
    }
    case json::value_t::number_float: {
        const double v = j.get<double>();
        out += std::isfinite(v) ? number(v) : "null";
        return;
    }
    default: out += j.dump(); return;
    }
}

json judgement_json(const SweepJudgement& s) {
    return {{"bounded", s.bounded}, {"max_ratio", s.max_ratio}, {"min_ratio", s.min_ratio}, {"slope", s.slope}};
}

json config_json(const ExperimentConfig& c) {
    json q = {{"abs_tol", c.quadrature.abs_tol},
              {"rel_tol", c.quadrature.rel_tol},
              {"max_subdivisions", c.quadrature.max_subdivisions},
              {"rule", c.quadrature.base_rule == QuadratureRule::composite_gauss ? "gauss" : "simpson"}};
    json cfg = {{"function", c.function},
                {"matrix", c.matrix},
                {"r", c.r},
                {"beta", c.beta},
                {"p", c.p},
                {"modulus", c.modulus},
                {"x_points", c.x_points},
                {"n_values", c.n_values()},
                {"kind", to_string(c.kind)},
                {"truncation_rule", to_string(c.kind.truncation)},
                {"tail_cut", c.tail_cut},
                {"quadrature", q}};
    if (std::isnan(c.gamma))
        cfg["gamma"] = "auto";
    else
        cfg["gamma"] = c.gamma;
    return cfg;
}

} // namespace

ReportFormat parse_report_format(const std::string& s) {
    if (s == "csv") return ReportFormat::csv;
    if (s == "json") return ReportFormat::json;
    throw std::invalid_argument("unknown report format '" + s + "' (expected csv or json)");
}

void write_csv(const RateReport& report, std::ostream& os) {
    os << kCsvHeader << '\n';
    for (const auto& r : report.rows) {
        os << number(r.x) << ',' << r.n << ',' << number(r.deviation) << ',' << number(r.bound) << ','
           << number(r.ratio) << ',' << number(r.remark1_bound) << ',' << number(r.A_nr) << ',' << number(r.A_n1)
           << '\n';
    }
}

void write_json(const RateReport& report, std::ostream& os) {
    json rows = json::array();
    for (const auto& r : report.rows) {
        json cond = json::object();
        for (const auto& [k, v] : r.condition_ratios) cond[k] = v;
        rows.push_back({{"x", r.x},
                        {"n", r.n},
                        {"deviation", r.deviation},
                        {"bound", r.bound},
                        {"ratio", r.ratio},
                        {"remark1_bound", r.remark1_bound},
                        {"A_nr", r.A_nr},
                        {"A_n1", r.A_n1},
                        {"condition_ratios", cond}});
    }
    json summary = json::array();
    for (const auto& s : report.summary) {
        json cond = json::object();
        for (const auto& [k, v] : s.conditions) cond[k] = judgement_json(v);
        summary.push_back({{"x", s.x},
                           {"rate", judgement_json(s.rate)},
                           {"remark1_rate", judgement_json(s.remark1_rate)},
                           {"conditions", cond}});
    }
    const json doc = {{"config", config_json(report.config)},
                      {"rows", rows},
                      {"summary", summary},
                      {"rates_bounded", report.rates_bounded()}};
    std::string out;
    dump(doc, out, 0);
    os << out << '\n';
}

void emit_report(const RateReport& report, ReportFormat format, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing: " + std::strerror(errno));
    if (format == ReportFormat::csv)
        write_csv(report, out);
    else
        write_json(report, out);
    out.flush();
    if (!out) throw std::runtime_error("write to '" + path + "' failed: " + std::strerror(errno));
}

} // namespace trigsum
