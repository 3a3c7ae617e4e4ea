#include "trigsum/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include "trigsum/matrices.hpp"
#include "trigsum/moduli.hpp"

namespace trigsum {

namespace {

class Stopwatch {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void note_failure(SuiteResult& res, const std::string& what) {
    if (res.failures++ == 0) res.detail = what;
}

} // namespace

bool SelftestReport::passed() const {
    return !suites.empty() && std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed(); });
}

const std::vector<std::string>& selftest_suite_names() {
    static const std::vector<std::string> names = {"lemma2", "lemma3", "lemma4", "lemma5", "moduli"};
    return names;
}

std::vector<std::string> builtin_modulus_ids() { return {"power:0.25", "power:0.5", "power:0.75", "power:1", "log"}; }

SuiteResult lemma2_suite(long k_max, int samples) {
    Stopwatch clock;
    SuiteResult res;
    res.name = "lemma2";
    std::vector<double> ts(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) ts[static_cast<std::size_t>(i)] = kPi * (i + 1.0) / samples;
    for (long k = 0; k <= k_max; ++k) {
        const auto rep = check_kernel_bounds(k, ts);
        res.checks += rep.checks;
        for (const auto& v : rep.violations) {
            res.worst = std::max(res.worst, std::abs(v.value) / v.limit - 1.0);
            std::ostringstream os;
            os << kernel_bound_names()[static_cast<std::size_t>(v.bound)] << " fails at k=" << v.k << ", t=" << v.t;
            note_failure(res, os.str());
        }
    }
    res.seconds = clock.seconds();
    return res;
}

SuiteResult lemma3_suite(int cases, double tol, const KernelFn& kernel, unsigned long seed) {
    Stopwatch clock;
    SuiteResult res;
    res.name = "lemma3";
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    for (int c = 0; c < cases; ++c) {
        const long n = static_cast<long>(rng() % 21);
        const long m = n + static_cast<long>(rng() % static_cast<unsigned long>(41 - n));
        const int r = 1 + static_cast<int>(rng() % 6);
        // Keep t away from the zeros 2 l pi / r of sin(rt/2).
        double t = 0.0;
        do {
            t = kTwoPi * unit(rng);
        } while (std::abs(std::sin(0.5 * r * t)) < 1e-3);
        std::vector<double> a(static_cast<std::size_t>(m + r - n + 1));
        for (double& v : a) v = coef(rng);
        double scale = 0.0;
        for (long k = n; k <= m; ++k) scale += std::abs(a[static_cast<std::size_t>(k - n)]);
        for (int form = 0; form < 2; ++form) {
            const IdentitySides s = form == 0 ? abel_transform_sin(a, n, m, r, t, kernel)
                                              : abel_transform_cos(a, n, m, r, t, kernel);
            ++res.checks;
            const double err = std::abs(s.lhs - s.rhs) / std::max({std::abs(s.lhs), scale, 1e-300});
            res.worst = std::max(res.worst, err);
            if (!(err <= tol)) {
                std::ostringstream os;
                os << (form == 0 ? "sine" : "cosine") << " form: n=" << n << ", m=" << m << ", r=" << r
                   << ", t=" << t << ", relative error " << err;
                note_failure(res, os.str());
            }
        }
    }
    res.seconds = clock.seconds();
    return res;
}

SuiteResult weighted_sum_suite(KernelKind kind, int samples, unsigned long seed) {
    if (kind == KernelKind::conjugate) throw std::invalid_argument("weighted_sum_suite: dirichlet or conjugate_circ");
    Stopwatch clock;
    SuiteResult res;
    res.name = kind == KernelKind::dirichlet ? "lemma4" : "lemma5";
    std::mt19937_64 rng(seed + (kind == KernelKind::dirichlet ? 0 : 1));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (const char* id : {"identity", "cesaro", "geometric"}) {
        const SummabilityMatrix A = builtin_matrix(id);
        for (long n : {4L, 16L, 64L}) {
            for (int r : {1, 2, 3}) {
                for (int i = 0; i < samples; ++i) {
                    double t = 0.0;
                    do {
                        t = kPi * unit(rng);
                    } while (t == 0.0 || std::abs(std::sin(0.5 * r * t)) < 1e-6);
                    const double s = kind == KernelKind::dirichlet ? weighted_dirichlet_sum(A, n, t)
                                                                   : weighted_conjugate_sum(A, n, t);
                    const WeightedSumBound b = weighted_sum_bound(A, n, r, t);
                    for (double bound : {b.sharp, b.coarse}) {
                        ++res.checks;
                        const double excess = std::abs(s) / bound - 1.0;
                        res.worst = std::max(res.worst, excess);
                        if (std::abs(s) > bound * (1.0 + 1e-12) + 1e-13) {
                            std::ostringstream os;
                            os << id << ", n=" << n << ", r=" << r << ", t=" << t << ": |sum|=" << std::abs(s)
                               << " > " << bound;
                            note_failure(res, os.str());
                        }
                    }
                }
            }
        }
    }
    res.seconds = clock.seconds();
    return res;
}

SuiteResult moduli_suite() {
    Stopwatch clock;
    SuiteResult res;
    res.name = "moduli";
    for (const auto& id : builtin_modulus_ids()) {
        const auto rep = check_modulus_axioms(parse_modulus(id));
        res.checks += rep.pairs_checked + 1;
        if (!rep.passed()) {
            std::ostringstream os;
            os << id << ": monotonicity " << rep.monotonicity_violations << ", continuity "
               << rep.continuity_violations << ", subadditivity " << rep.subadditivity_violations
               << ", quasi-monotonicity " << rep.quasi_monotonicity_violations
               << (rep.zero_at_origin ? "" : ", nonzero at 0");
            note_failure(res, os.str());
        }
    }
    res.seconds = clock.seconds();
    return res;
}

SelftestReport selftest(const SelftestOptions& options) {
    if (options.suites.empty()) throw std::invalid_argument("selftest: empty suite selection");
    for (const auto& s : options.suites) {
        const auto& names = selftest_suite_names();
        if (std::find(names.begin(), names.end(), s) == names.end())
            throw std::invalid_argument("selftest: unknown suite '" + s + "'");
    }
    SelftestReport report;
    for (const auto& name : selftest_suite_names()) {
        if (std::find(options.suites.begin(), options.suites.end(), name) == options.suites.end()) continue;
        if (name == "lemma2") report.suites.push_back(lemma2_suite());
        if (name == "lemma3") report.suites.push_back(lemma3_suite(500, 1e-10, options.kernel, options.seed));
        if (name == "lemma4") report.suites.push_back(weighted_sum_suite(KernelKind::dirichlet, 200, options.seed));
        if (name == "lemma5")
            report.suites.push_back(weighted_sum_suite(KernelKind::conjugate_circ, 200, options.seed));
        if (name == "moduli") report.suites.push_back(moduli_suite());
    }
    return report;
}

SelftestReport selftest() {
    SelftestOptions opts;
    opts.suites = selftest_suite_names();
    return selftest(opts);
}

} // namespace trigsum
