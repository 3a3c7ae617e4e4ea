// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "trigsum/harness.hpp"
#include "trigsum/selftest.hpp"

using namespace trigsum;

namespace {

struct Outcome {
    bool pass = false;
    std::string details;
};

double elapsed(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string printf_string(const char* format, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

Outcome timed_suite(const std::function<SuiteResult()>& run, double limit) {
    const auto start = std::chrono::steady_clock::now();
    const SuiteResult res = run();
    const double sec = elapsed(start);
    Outcome o;
    o.pass = res.passed() && sec < limit;
    o.details = printf_string("%ld checks, %ld failures, worst %.3g, %.2fs (limit %.0fs)", res.checks, res.failures,
                              res.worst, sec, limit);
    if (!res.detail.empty()) o.details += "; first failure: " + res.detail;
    return o;
}

Outcome abel_identities() { return timed_suite([] { return lemma3_suite(500, 1e-10); }, 5.0); }

Outcome kernel_bounds() { return timed_suite([] { return lemma2_suite(32, 1000); }, 5.0); }

Outcome weighted_sums() {
    const auto start = std::chrono::steady_clock::now();
    const auto d = weighted_sum_suite(KernelKind::dirichlet, 200);
    const auto c = weighted_sum_suite(KernelKind::conjugate_circ, 200);
    const double sec = elapsed(start);
    Outcome o;
    o.pass = d.passed() && c.passed() && sec < 30.0;
    o.details = printf_string("dirichlet %ld checks/%ld failures, conjugate %ld checks/%ld failures, %.2fs", d.checks,
                              d.failures, c.checks, c.failures, sec);
    return o;
}

Outcome conjugate_consistency() {
    const auto start = std::chrono::steady_clock::now();
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ux(-kPi, kPi);
    double worst = 0.0;
    long cases = 0;
    std::string failure;
    for (int i = 0; i < 20; ++i) {
        const double x = ux(rng);
        for (int nu = 1; nu <= 8; ++nu) {
            try {
                const double ec = std::abs(conjugate_limit(cos_harmonic(nu), x).value - std::sin(nu * x));
                const double es = std::abs(conjugate_limit(sin_harmonic(nu), x).value + std::cos(nu * x));
                worst = std::max({worst, ec, es});
                cases += 2;
            } catch (const std::exception& e) {
                if (failure.empty()) failure = printf_string("x=%.6g nu=%d: %s", x, nu, e.what());
                worst = INFINITY;
            }
        }
    }
    const double sec = elapsed(start);
    Outcome o;
    o.pass = worst <= 1e-8 && sec < 30.0;
    o.details = printf_string("%ld cases, worst error %.3g, %.2fs", cases, worst, sec);
    if (!failure.empty()) o.details += "; " + failure;
    return o;
}

Outcome cesaro_closed_forms() {
    const auto C = cesaro_matrix();
    double worst = 0.0;
    for (long n = 0; n <= 256; ++n)
        for (int r = 1; r <= n + 1; ++r)
            worst = std::max(worst, std::abs(r_difference_norm(C, n, r) - r / (n + 1.0)));
    const double r115 = check_condition_115(C, 256);
    const double r114 = check_condition_114(C, 256);
    Outcome o;
    o.pass = worst <= 1e-14 && std::abs(r115 - 1.0 / 3.0) <= 0.02 && std::abs(r114 - 0.5) <= 0.02;
    o.details = printf_string("max |A_nr - r/(n+1)| = %.3g, (115) ratio %.6f, (114) ratio %.6f at n=256", worst,
                              r115, r114);
    return o;
}

Outcome rate_runs(const std::vector<DeviationKind>& kinds) {
    Outcome o{true, ""};
    const std::array<std::pair<const char*, double>, 2> cases{{{"sawtooth", kPi / 2}, {"triangle", 0.0}}};
    for (const auto& kind : kinds) {
        for (const auto& [fn, x] : cases) {
            for (int r : {1, 2}) {
                ExperimentConfig c;
                c.function = fn;
                c.matrix = "cesaro";
                c.r = r;
                c.beta = 0.0;
                c.p = 2.0;
                c.modulus = "power:1";
                c.x_points = {x};
                c.n_min = 4;
                c.n_max = 512;
                c.kind = kind;
                std::string verdict;
                bool ok = false;
                try {
                    const auto rep = run_experiment(c);
                    const auto& j = rep.summary.at(0).rate;
                    ok = j.bounded && j.slope <= 0.05 && j.max_ratio <= 10.0;
                    verdict = printf_string("max %.3g slope %.3f", j.max_ratio, j.slope);
                } catch (const std::exception& e) {
                    verdict = std::string("error: ") + e.what();
                }
                o.pass = o.pass && ok;
                if (!o.details.empty()) o.details += "; ";
                std::string label = to_string(kind);
                if (kind.kind == DeviationKind::Kind::conjugate_vs_truncated) label += "/" + to_string(kind.truncation);
                o.details += printf_string("%s %s r=%d: %s%s", label.c_str(), fn, r, verdict.c_str(),
                                           ok ? "" : " (FAIL)");
            }
        }
    }
    return o;
}

Outcome difference_norm_audit() {
    long checked = 0, violations = 0, unit_step_failures = 0;
    std::string first;
    for (const auto& id : builtin_matrix_ids()) {
        const auto A = builtin_matrix(id);
        for (long n = 0; n <= 256; ++n)
            for (int r = 1; r <= 8; ++r) {
                const auto c = compare_51(A, n, r);
                ++checked;
                if (!c.unit_step_dominates()) ++unit_step_failures;
                if (!c.triangle_bound_holds(r)) {
                    if (violations++ == 0) first = printf_string("%s n=%ld r=%d", id.c_str(), n, r);
                }
            }
    }
    const auto C = cesaro_matrix();
    bool counterexample = true;
    for (long n = 1; n <= 256; ++n) {
        const auto c = compare_51(C, n, 2);
        counterexample = counterexample && std::abs(c.A_nr - 2.0 * c.A_n1) <= 1e-14 && !c.unit_step_dominates();
    }
    Outcome o;
    o.pass = violations == 0 && counterexample;
    o.details = printf_string("%ld (matrix, n, r) checked, %ld violations of A_nr <= r*A_n1; "
                              "A_nr <= A_n1 as printed fails in %ld cases, C1 has A_n2 = 2*A_n1 for n=1..256: %s",
                              checked, violations, unit_step_failures, counterexample ? "yes" : "no");
    if (!first.empty()) o.details += "; first violation " + first;
    return o;
}

// A modulus delta^alpha makes omega(t)/(t |sin(ru/2)|^beta) behave like
// t^{alpha-1-beta} near 0, so the q-th power is integrable iff (1+beta-alpha) q < 1.
bool integrable(const std::string& id, double beta, double q) {
    // The log modulus is t log(1/t) up to constants, which behaves like alpha = 1 here.
    const double alpha = id.rfind("power:", 0) == 0 ? std::stod(id.substr(6)) : 1.0;
    return (1.0 + beta - alpha) * q < 1.0;
}

Outcome substitution_bounds() {
    long checked = 0, violations = 0, skipped = 0;
    std::string first;
    for (const auto& id : builtin_modulus_ids()) {
        const auto w = parse_modulus(id);
        for (double beta : {0.0, 0.25})
            for (double q : {8.0 / 7.0, 2.0}) {
                if (!integrable(id, beta, q)) {
                    ++skipped;
                    continue;
                }
                for (int r : {2, 3, 4})
                    for (long n = 4; n <= 128; n *= 2)
                        for (int m = 0; m <= max_shift_index(r); ++m) {
                            const auto s = substitution_integrals(w, beta, r, m, n, q);
                            const bool mirrored = m <= max_mirror_index(r);
                            checked += mirrored ? 2 : 1;
                            const bool ok = s.shifted <= 2.0 * s.base + 1e-10 &&
                                            (!mirrored || s.mirrored <= 2.0 * s.base + 1e-10);
                            if (!ok && violations++ == 0)
                                first = printf_string("%s beta=%g q=%g r=%d n=%ld m=%d", id.c_str(), beta, q, r, n, m);
                        }
            }
    }
    Outcome o;
    o.pass = violations == 0 && checked > 0;
    o.details = printf_string("%ld interval comparisons, %ld violations, %ld non-integrable (modulus, beta, q) "
                              "combinations skipped",
                              checked, violations, skipped);
    if (!first.empty()) o.details += "; first violation " + first;
    return o;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome determinism() {
    Outcome o;
    const auto cfg = ExperimentConfig::load(TRIGSUM_DEMO_CONFIG);
    std::ostringstream a, b;
    write_csv(run_experiment(cfg, 1), a);
    write_csv(run_experiment(cfg, 0), b);
    const bool library = a.str() == b.str();

    const std::string out1 = std::string(TRIGSUM_WORK_DIR) + "/determinism_1.csv";
    const std::string out2 = std::string(TRIGSUM_WORK_DIR) + "/determinism_2.csv";
    auto run = [&](const std::string& out) {
        const std::string cmd = std::string("\"") + TRIGSUM_CLI + "\" run --config \"" + TRIGSUM_DEMO_CONFIG +
                                "\" --out \"" + out + "\" --format csv > /dev/null";
        return std::system(cmd.c_str());
    };
    const int rc1 = run(out1);
    const int rc2 = run(out2);
    const std::string c1 = slurp(out1), c2 = slurp(out2);
    const bool cli = rc1 == 0 && rc2 == 0 && !c1.empty() && c1 == c2 && c1 == a.str();
    o.pass = library && cli;
    o.details = printf_string("library runs with 1 and all threads identical: %s; two CLI runs (exit %d, %d) "
                              "byte-identical: %s, %zu bytes",
                              library ? "yes" : "no", rc1, rc2, c1 == c2 ? "yes" : "no", c1.size());
    return o;
}

} // namespace

int main() {
    struct Criterion {
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {"summation-by-parts identities", abel_identities},
        {"pointwise kernel bounds", kernel_bounds},
        {"weighted kernel-sum bounds", weighted_sums},
        {"conjugate limit of harmonics", conjugate_consistency},
        {"Cesaro closed forms", cesaro_closed_forms},
        {"ordinary rate reproduction", [] { return rate_runs({DeviationKind::ordinary()}); }},
        {"conjugate rate reproduction",
         [] {
             return rate_runs({DeviationKind::conjugate_vs_truncated(TruncationRule::pi_over_n1),
                               DeviationKind::conjugate_vs_truncated(TruncationRule::pi_over_rn1),
                               DeviationKind::conjugate_vs_limit()});
         }},
        {"r-difference norm inequality audit", difference_norm_audit},
        {"shifted and mirrored interval bounds", substitution_bounds},
        {"deterministic demo run", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].run();
        } catch (const std::exception& e) {
            o = {false, std::string("unexpected error: ") + e.what()};
        }
        if (!o.pass) ++failed;
        std::printf("%s %zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name, o.details.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
