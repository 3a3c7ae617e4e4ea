#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "trigsum/harness.hpp"
#include "trigsum/selftest.hpp"

using namespace trigsum;

namespace {

ExperimentConfig small_config(const std::string& function, const std::string& matrix) {
    ExperimentConfig c;
    c.function = function;
    c.matrix = matrix;
    c.x_points = {0.7};
    c.n_min = 4;
    c.n_max = 32;
    return c;
}

std::string csv_of(const RateReport& rep) {
    std::ostringstream os;
    write_csv(rep, os);
    return os.str();
}

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("trigsum_test_" + name);
}

} // namespace

TEST_CASE("pi expressions") {
    CHECK(parse_real_expression("pi/2") == doctest::Approx(kPi / 2));
    CHECK(parse_real_expression(" -3*pi/4 ") == doctest::Approx(-0.75 * kPi));
    CHECK(parse_real_expression("2pi") == doctest::Approx(kTwoPi));
    CHECK(parse_real_expression("pi") == doctest::Approx(kPi));
    CHECK(parse_real_expression("0.25") == 0.25);
    CHECK_THROWS(parse_real_expression("pi/"));
    CHECK_THROWS(parse_real_expression("tau"));
    CHECK_THROWS(parse_real_expression(""));
}

TEST_CASE("config parsing") {
    const auto c = ExperimentConfig::parse(R"(# comment line
function = triangle
matrix.family = norlund
matrix.p = k+1
r = 3      # trailing comment
beta = 0.25
p = 4
gamma = 0.1
modulus = power:0.5
x_points = pi/3, -pi/4
n.min = 8
n.max = 64
n.step = 2
kind = conjugate_vs_truncated
truncation_rule = pi_over_rn1
quadrature.rule = simpson
quadrature.max_subdivisions = 100
)");
    CHECK(c.function == "triangle");
    CHECK(c.matrix == "norlund:p=k+1");
    CHECK(c.r == 3);
    CHECK(c.beta == 0.25);
    CHECK(c.p == 4.0);
    CHECK(c.gamma == 0.1);
    REQUIRE(c.x_points.size() == 2);
    CHECK(c.x_points[1] == doctest::Approx(-kPi / 4));
    CHECK(c.kind.kind == DeviationKind::Kind::conjugate_vs_truncated);
    CHECK(c.kind.truncation == TruncationRule::pi_over_rn1);
    CHECK(c.quadrature.base_rule == QuadratureRule::adaptive_simpson);
    CHECK(c.quadrature.max_subdivisions == 100);
    CHECK(c.n_values() == std::vector<long>{8, 16, 32, 64});

    const auto d = ExperimentConfig::parse("");
    CHECK(d.matrix == "cesaro");
    CHECK(std::isnan(d.gamma));
    CHECK(d.n_values().front() == 4);
    CHECK(d.n_values().back() == 512);
}

TEST_CASE("n sweep rounding stays strictly increasing") {
    ExperimentConfig c;
    c.n_min = 1;
    c.n_max = 10;
    c.n_step = 1.3;
    const auto ns = c.n_values();
    for (std::size_t i = 1; i < ns.size(); ++i) CHECK(ns[i] > ns[i - 1]);
    CHECK(ns.front() == 1);
    CHECK(ns.back() <= 10);
}

TEST_CASE("config errors") {
    const char* bad[] = {
        "colour = red",
        "r = 2\nr = 3",
        "just text",
        "p = 9",
        "p = abc",
        "beta = -1",
        "n.min = 0",
        "n.max = 5000",
        "n.step = 1",
        "r = 0",
        "r = 1.5",
        "function = nosuch",
        "matrix = nosuch",
        "modulus = power:0",
        "kind = sideways",
        "truncation_rule = pi_over_2",
        "matrix = cesaro\nmatrix.family = cesaro",
        "matrix.p = k+1",
        "x_points = 0",
        "gamma = 0.9",
        "quadrature.rule = trapezoid",
        "x_points = ",
    };
    for (const char* text : bad) {
        CAPTURE(text);
        CHECK_THROWS_AS(ExperimentConfig::parse(text), ConfigError);
    }
    // Continuous functions may be probed at their kinks.
    CHECK_NOTHROW(ExperimentConfig::parse("function = triangle\nx_points = 0"));
    CHECK_THROWS_AS(ExperimentConfig::load("/nonexistent/trigsum.cfg"), ConfigError);
}

TEST_CASE("trivial experiments") {
    SUBCASE("constant function") {
        const auto rep = run_experiment(small_config("const1", "cesaro"));
        REQUIRE(!rep.rows.empty());
        for (const auto& row : rep.rows) {
            CHECK(row.deviation <= 1e-12);
            CHECK(row.ratio <= 1e-9);
        }
        CHECK(rep.rates_bounded());
    }
    SUBCASE("cos x under the identity") {
        const auto rep = run_experiment(small_config("coskx:1", "identity"));
        for (const auto& row : rep.rows) CHECK(row.deviation <= 1e-12);
    }
}

TEST_CASE("sawtooth Fejer means at pi/2") {
    auto c = small_config("sawtooth", "cesaro");
    c.x_points = {kPi / 2};
    c.n_max = 256;
    const auto rep = run_experiment(c);
    REQUIRE(rep.summary.size() == 1);
    CHECK(rep.summary[0].rate.bounded);
    CHECK(rep.summary[0].rate.slope <= 0.05);
    const auto& s = rep.summary[0].conditions;
    CHECK(s.count("2.81") == 1);
    CHECK(s.count("113") == 1);
    CHECK(s.count("114") == 1);
    CHECK(s.count("115") == 0);
    // A_{n,1} = 1/(n+1) for C1.
    for (const auto& row : rep.rows) CHECK(row.A_n1 == doctest::Approx(1.0 / (row.n + 1.0)));
}

TEST_CASE("bound formula audit") {
    auto c = small_config("sawtooth", "geometric");
    c.r = 2;
    c.beta = 0.3;
    c.p = 3.0;
    c.modulus = "power:0.8";
    const auto rep = run_experiment(c);
    const auto omega = parse_modulus(c.modulus);
    for (const auto& row : rep.rows) {
        const double n1 = row.n + 1.0;
        CHECK(row.bound == std::pow(n1, c.beta + 1.0 / c.p + 1.0) * row.A_nr * omega(kPi / n1));
        CHECK(row.remark1_bound == std::pow(n1, c.beta + 1.0) * row.A_nr * omega(kPi / n1));
        CHECK(row.bound == theorem_bound(row.n, c.beta, c.p, row.A_nr, omega));
        CHECK(row.ratio == row.deviation / row.bound);
        CHECK(row.bound > 0.0);
    }
}

TEST_CASE("reports") {
    auto c = small_config("triangle", "cesaro");
    c.x_points = {0.0, 1.0};
    c.n_max = 16;
    const auto rep = run_experiment(c, 3);
    CHECK(rep.rows.size() == 2 * c.n_values().size());
    CHECK(rep.rows.front().x == 0.0);
    CHECK(rep.rows.back().x == 1.0);

    SUBCASE("csv") {
        const std::string text = csv_of(rep);
        CHECK(text.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
        CHECK(std::count(text.begin(), text.end(), '\n') == static_cast<long>(rep.rows.size()) + 1);
        RateReport empty;
        CHECK(csv_of(empty) == std::string(kCsvHeader) + "\n");
    }
    SUBCASE("json parses back") {
        std::ostringstream os;
        write_json(rep, os);
        const auto j = nlohmann::json::parse(os.str());
        CHECK(j["config"]["matrix"] == "cesaro");
        CHECK(j["config"]["gamma"] == "auto");
        REQUIRE(j["rows"].size() == rep.rows.size());
        for (std::size_t i = 0; i < rep.rows.size(); ++i) {
            CHECK(j["rows"][i]["n"].get<long>() == rep.rows[i].n);
            CHECK(j["rows"][i]["deviation"].get<double>() == rep.rows[i].deviation);
            CHECK(j["rows"][i]["bound"].get<double>() == rep.rows[i].bound);
        }
        CHECK(j["rates_bounded"].get<bool>() == rep.rates_bounded());
        CHECK(j["summary"].size() == 2);
    }
    SUBCASE("emit to disk") {
        const auto path = temp_path("report.csv");
        emit_report(rep, ReportFormat::csv, path.string());
        std::ifstream in(path, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        CHECK(ss.str() == csv_of(rep));
        std::filesystem::remove(path);
        try {
            emit_report(rep, ReportFormat::json, "/nonexistent-dir/out.json");
            FAIL("expected an I/O error");
        } catch (const std::runtime_error& e) {
            CHECK(std::string(e.what()).find("/nonexistent-dir/out.json") != std::string::npos);
        }
    }
    CHECK(parse_report_format("json") == ReportFormat::json);
    CHECK_THROWS_AS(parse_report_format("xml"), std::invalid_argument);
}

TEST_CASE("results do not depend on the thread count") {
    auto c = small_config("sawtooth", "norlund:p=k+1");
    c.x_points = {0.5, 2.0};
    c.r = 2;
    c.kind = DeviationKind::conjugate_vs_limit();
    const std::string one = csv_of(run_experiment(c, 1));
    CHECK(one == csv_of(run_experiment(c, 4)));
    CHECK(one == csv_of(run_experiment(c, 0)));
}

TEST_CASE("module errors carry their location") {
    auto c = small_config("sawtooth", "cesaro");
    c.modulus = "power:0.25";
    try {
        (void)run_experiment(c);
        FAIL("expected an ExperimentError");
    } catch (const ExperimentError& e) {
        CHECK(e.condition_id() == "2.81");
        CHECK(e.x() == 0.7);
        CHECK(e.n() == 4);
        CHECK(std::string(e.what()).find("condition=2.81") != std::string::npos);
    }
}

TEST_CASE("selftest") {
    const auto rep = selftest();
    CHECK(rep.passed());
    CHECK(rep.suites.size() == selftest_suite_names().size());

    SelftestOptions bad;
    bad.suites = {"lemma3"};
    bad.kernel = [](const KernelSpec& s, double t) { return -kernel_eval(s, t); };
    const auto broken = selftest(bad);
    REQUIRE(broken.suites.size() == 1);
    CHECK_FALSE(broken.passed());
    CHECK(broken.suites[0].failures > 0);

    SelftestOptions none;
    CHECK_THROWS_AS(selftest(none), std::invalid_argument);
    none.suites = {"lemma9"};
    CHECK_THROWS_AS(selftest(none), std::invalid_argument);
}
