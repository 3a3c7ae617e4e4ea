#pragma once

// Built-in property suites: kernel bounds, the summation-by-parts identities,
// the weighted kernel-sum bounds and the modulus axioms.

#include <string>
#include <vector>

#include "trigsum/kernels.hpp"

namespace trigsum {

struct SuiteResult {
    std::string name;
    long checks = 0;
    long failures = 0;
    double worst = 0.0;  ///< Largest relative error or bound excess seen.
    double seconds = 0.0;
    std::string detail;  ///< First failure, if any.
    bool passed() const { return checks > 0 && failures == 0; }
};

struct SelftestReport {
    std::vector<SuiteResult> suites;
    bool passed() const;
};

struct SelftestOptions {
    /// Any of "lemma2", "lemma3", "lemma4", "lemma5", "moduli". Must not be empty.
    std::vector<std::string> suites;
    /// Kernel evaluator used by the identity suite.
    KernelFn kernel = kernel_eval;
    unsigned long seed = 20240601;
};

/// The names accepted in SelftestOptions::suites, in run order.
const std::vector<std::string>& selftest_suite_names();

/// Throws std::invalid_argument on an empty or unknown selection.
SelftestReport selftest(const SelftestOptions& options);

/// Convenience: every suite with the default kernel.
SelftestReport selftest();

// Individual suites, shared with the acceptance checks.

/// k = 0..k_max against `samples` points of (0, pi].
SuiteResult lemma2_suite(long k_max = 32, int samples = 1000);
/// `cases` random (sequence, n <= 20, m <= 40, r <= 6, t), sine and cosine forms,
/// relative error tolerance `tol`.
SuiteResult lemma3_suite(int cases = 500, double tol = 1e-10, const KernelFn& kernel = kernel_eval,
                         unsigned long seed = 20240601);
/// Weighted sums over identity, cesaro and geometric rows, n in {4, 16, 64}, r in {1, 2, 3},
/// `samples` valid t each. kind is dirichlet or conjugate_circ.
SuiteResult weighted_sum_suite(KernelKind kind, int samples = 200, unsigned long seed = 20240601);
/// Axioms and quasi-monotonicity of the builtin moduli.
SuiteResult moduli_suite();

/// Moduli the library ships: power:0.25, power:0.5, power:0.75, power:1 and log.
std::vector<std::string> builtin_modulus_ids();

} // namespace trigsum
