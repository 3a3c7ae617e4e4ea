// trigsum: selftest, rate experiments and quick inspection of matrices and kernels.
//
// Exit codes: 0 success, 1 property failure, 2 configuration or usage error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "trigsum/harness.hpp"
#include "trigsum/kernels.hpp"
#include "trigsum/matrices.hpp"
#include "trigsum/selftest.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kPropertyFailure = 1;
constexpr int kConfigError = 2;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int cmd_selftest(const std::vector<std::string>& suites, bool corrupt_kernel) {
    trigsum::SelftestOptions opts;
    opts.suites = suites.empty() ? trigsum::selftest_suite_names() : suites;
    if (corrupt_kernel)
        opts.kernel = [](const trigsum::KernelSpec& s, double t) { return -trigsum::kernel_eval(s, t); };
    trigsum::SelftestReport rep;
    try {
        rep = trigsum::selftest(opts);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    }
    for (const auto& s : rep.suites) {
        std::printf("%-7s %s  checks=%ld failures=%ld worst=%.3g (%.2fs)\n", s.name.c_str(),
                    s.passed() ? "PASS" : "FAIL", s.checks, s.failures, s.worst, s.seconds);
        if (!s.detail.empty()) std::printf("        first failure: %s\n", s.detail.c_str());
    }
    return rep.passed() ? kOk : kPropertyFailure;
}

int cmd_run(const std::string& config, const std::string& out, const std::string& format, unsigned threads) {
    trigsum::ExperimentConfig cfg;
    trigsum::ReportFormat fmt_kind{};
    try {
        fmt_kind = trigsum::parse_report_format(format);
        cfg = trigsum::ExperimentConfig::load(config);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    }
    trigsum::RateReport rep;
    try {
        rep = trigsum::run_experiment(cfg, threads);
    } catch (const trigsum::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kPropertyFailure;
    }
    try {
        trigsum::emit_report(rep, fmt_kind, out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    }
    for (const auto& s : rep.summary) {
        std::cout << "x=" << fmt(s.x) << "  rate " << (s.rate.bounded ? "bounded" : "NOT bounded")
                  << "  max_ratio=" << fmt(s.rate.max_ratio) << "  slope=" << fmt(s.rate.slope) << '\n';
        for (const auto& [id, j] : s.conditions)
            if (!j.bounded) std::cout << "  condition " << id << " not bounded (slope " << fmt(j.slope) << ")\n";
    }
    return rep.rates_bounded() ? kOk : kPropertyFailure;
}

int cmd_matrix_info(const std::string& family, long n, int r) {
    std::optional<trigsum::SummabilityMatrix> A;
    try {
        if (n < 0) throw std::invalid_argument("n must be >= 0");
        if (r < 1) throw std::invalid_argument("r must be >= 1");
        A.emplace(trigsum::builtin_matrix(family));
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kConfigError;
    }
    std::cout << "matrix " << A->id() << ", n=" << n << ", r=" << r << '\n';
    auto line = [](const char* label, auto&& compute) {
        try {
            std::cout << "  " << label << " = " << fmt(compute()) << '\n';
        } catch (const std::exception& e) {
            std::cout << "  " << label << " = n/a (" << e.what() << ")\n";
        }
    };
    line("A_nr", [&] { return trigsum::r_difference_norm(*A, n, r); });
    line("A_n1", [&] { return trigsum::r_difference_norm(*A, n, 1); });
    line("(113) double sum", [&] { return trigsum::check_condition_113(*A, n, r); });
    line("(114) first moment / (n+1)", [&] { return trigsum::check_condition_114(*A, n); });
    line("(115) second moment / (n+1)^2", [&] { return trigsum::check_condition_115(*A, n); });
    try {
        const auto c = trigsum::compare_51(*A, n, r);
        std::cout << "  (51) A_nr <= A_n1: " << (c.unit_step_dominates() ? "holds" : "fails") << '\n';
        std::cout << "  A_nr <= r*A_n1: " << (c.triangle_bound_holds(r) ? "holds" : "fails") << '\n';
        return c.triangle_bound_holds(r) ? kOk : kPropertyFailure;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kPropertyFailure;
    }
}

int cmd_kernel_check(int samples, long k_max) {
    if (samples < 1 || k_max < 0) {
        std::cerr << "error: --samples must be >= 1 and --kmax >= 0\n";
        return kConfigError;
    }
    const auto res = trigsum::lemma2_suite(k_max, samples);
    std::printf("kernel bounds: k=0..%ld, %d samples of (0, pi]: %ld checks, %ld violations\n", k_max, samples,
                res.checks, res.failures);
    if (!res.detail.empty()) std::printf("  first violation: %s\n", res.detail.c_str());
    return res.passed() ? kOk : kPropertyFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Matrix means of Fourier series: kernels, moduli and rate experiments"};
    app.require_subcommand(1);

    auto* st = app.add_subcommand("selftest", "Run the built-in property suites");
    std::vector<std::string> suites;
    bool corrupt = false;
    st->add_option("--suite", suites, "Suites to run (default: all)");
    st->add_flag("--corrupt-kernel-sign", corrupt, "Negate the kernel in the identity suite (fault injection)");

    auto* run = app.add_subcommand("run", "Run a rate experiment from a config file");
    std::string config, out, format = "csv";
    unsigned threads = 0;
    run->add_option("--config", config, "Experiment config")->required();
    run->add_option("--out", out, "Output path")->required();
    run->add_option("--format", format, "csv or json");
    run->add_option("--threads", threads, "Worker threads (0: hardware concurrency)");

    auto* mi = app.add_subcommand("matrix-info", "Print r-difference norms and matrix conditions");
    std::string family;
    long n = 0;
    int r = 1;
    mi->add_option("--family", family, "Matrix id, e.g. cesaro or norlund:p=k+1")->required();
    mi->add_option("--n", n, "Row index")->required();
    mi->add_option("--r", r, "Difference step")->required();

    auto* kc = app.add_subcommand("kernel-check", "Check the pointwise kernel bounds");
    int samples = 1000;
    long k_max = 32;
    kc->add_option("--samples", samples, "Number of t samples in (0, pi]");
    kc->add_option("--kmax", k_max, "Largest k");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfigError;
    }

    if (st->parsed()) return cmd_selftest(suites, corrupt);
    if (run->parsed()) return cmd_run(config, out, format, threads);
    if (mi->parsed()) return cmd_matrix_info(family, n, r);
    return cmd_kernel_check(samples, k_max);
}
