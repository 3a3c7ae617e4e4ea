#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "trigsum/kernels.hpp"
#include "trigsum/periodic.hpp"

using namespace trigsum;

TEST_CASE("kernel oracle value") {
    // mpmath: sin(0.4) / (2 sin(0.1)).
    CHECK(kernel_eval({3, 2, KernelKind::dirichlet}, 0.1) ==
          doctest::Approx(1.9503406544036318881668140439).epsilon(1e-14));
}

TEST_CASE("conjugate kernel equals its printed form") {
    for (long k : {0L, 1L, 5L, 17L})
        for (int r : {1, 2, 5})
            for (double t : {0.3, 1.1, 2.9, -0.7}) {
                const double printed =
                    (std::cos(r * t / 2.0) - std::cos((2.0 * k + r) * t / 2.0)) / (2.0 * std::sin(r * t / 2.0));
                CHECK(kernel_eval({k, r, KernelKind::conjugate}, t) == doctest::Approx(printed).epsilon(1e-12));
            }
}

TEST_CASE("r = 1 Dirichlet kernel is the partial sum of cosines") {
    for (long k : {0L, 3L, 10L}) {
        const double t = 0.77;
        double s = 0.5;
        for (long j = 1; j <= k; ++j) s += std::cos(j * t);
        CHECK(kernel_eval({k, 1, KernelKind::dirichlet}, t) == doctest::Approx(s).epsilon(1e-13));
    }
}

TEST_CASE("singular arguments") {
    CHECK_THROWS_AS(kernel_eval({2, 2, KernelKind::dirichlet}, kPi), SingularKernelArgument);
    CHECK_THROWS_AS(kernel_eval({2, 1, KernelKind::dirichlet}, 0.0), SingularKernelArgument);
    CHECK(kernel_eval_or_limit({2, 1, KernelKind::dirichlet}, 0.0) == doctest::Approx(2.5));
    CHECK(kernel_eval_or_limit({2, 3, KernelKind::conjugate}, kTwoPi) == 0.0);
    // 2 pi / r is a genuine pole of the r-kernel, not a removable point.
    CHECK_THROWS_AS(kernel_eval_or_limit({2, 2, KernelKind::dirichlet}, kPi), SingularKernelArgument);
    CHECK_THROWS_AS(kernel_limit_at_zero({2, 1, KernelKind::conjugate_circ}), std::domain_error);
    CHECK_THROWS_AS(kernel_eval({-1, 1, KernelKind::dirichlet}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(kernel_eval({1, 0, KernelKind::dirichlet}, 1.0), std::invalid_argument);
}

TEST_CASE("pointwise bounds hold on a fine grid") {
    std::vector<double> ts;
    for (int i = 1; i <= 400; ++i) ts.push_back(kPi * i / 400.0);
    ts.push_back(-1.3);
    for (long k = 0; k <= 40; ++k) {
        const auto rep = check_kernel_bounds(k, ts);
        CHECK(rep.passed());
        CHECK(rep.checks > 0);
    }
    CHECK(kernel_bound_names().size() == 6);
}

TEST_CASE("summation by parts identities") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int c = 0; c < 50; ++c) {
        const long n = c % 5, m = n + c % 11;
        const int r = 1 + c % 4;
        const double t = 0.4 + 0.05 * c;
        if (std::abs(std::sin(0.5 * r * t)) < 1e-3) continue;
        std::vector<double> a(static_cast<std::size_t>(m + r - n + 1));
        for (double& v : a) v = u(rng);
        const auto s = abel_transform_sin(a, n, m, r, t);
        const auto co = abel_transform_cos(a, n, m, r, t);
        CHECK(s.lhs == doctest::Approx(s.rhs).epsilon(1e-11).scale(1.0));
        CHECK(co.lhs == doctest::Approx(co.rhs).epsilon(1e-11).scale(1.0));
    }
}

TEST_CASE("summation by parts validates its sequence length") {
    std::vector<double> a(3, 1.0);
    CHECK_THROWS_AS(abel_transform_sin(a, 0, 2, 2, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(abel_transform_cos(a, 2, 1, 1, 0.5), std::invalid_argument);
}

TEST_CASE("a negated kernel breaks the identity") {
    std::vector<double> a{1.0, 0.5, 0.25, 0.125, 0.0625};
    const KernelFn bad = [](const KernelSpec& s, double t) { return -kernel_eval(s, t); };
    const auto s = abel_transform_cos(a, 0, 3, 1, 0.9, bad);
    CHECK(std::abs(s.lhs - s.rhs) > 1e-3);
}

TEST_CASE("Cesaro weighted sums at n = 1") {
    const auto C = builtin_matrix("cesaro");
    CHECK(weighted_dirichlet_sum(C, 1, kPi / 2.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(weighted_conjugate_sum(C, 1, kPi / 2.0) == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("weighted sums agree with direct kernel sums") {
    const auto C = builtin_matrix("norlund:p=k+1");
    const long n = 9;
    const double t = 1.234;
    const auto a = C.entries(n, n + 1);
    double d = 0.0, c = 0.0, cc = 0.0;
    for (long k = 0; k <= n; ++k) {
        d += a[k] * kernel_eval({k, 1, KernelKind::dirichlet}, t);
        c += a[k] * kernel_eval({k, 1, KernelKind::conjugate_circ}, t);
        cc += a[k] * kernel_eval({k, 1, KernelKind::conjugate}, t);
    }
    CHECK(weighted_dirichlet_sum(C, n, t) == doctest::Approx(d).epsilon(1e-13));
    CHECK(weighted_conjugate_sum(C, n, t) == doctest::Approx(c).epsilon(1e-13));
    CHECK(weighted_conjugate_sum(C, n, t, kDefaultTailCut, KernelKind::conjugate) == doctest::Approx(cc).epsilon(1e-13));
}

TEST_CASE("weighted sums of an infinite row respect both bounds") {
    const auto G = builtin_matrix("geometric");
    for (int r : {1, 2, 3})
        for (double t : {0.2, 0.9, 2.5}) {
            if (std::abs(std::sin(0.5 * r * t)) < 1e-6) continue;
            const auto b = weighted_sum_bound(G, 16, r, t);
            CHECK(b.sharp <= b.coarse * (1.0 + 1e-12));
            CHECK(std::abs(weighted_dirichlet_sum(G, 16, t)) <= b.sharp * (1.0 + 1e-12));
            CHECK(std::abs(weighted_conjugate_sum(G, 16, t)) <= b.sharp * (1.0 + 1e-12));
        }
}
