#include "doctest.h"

#include <cmath>

#include "trigsum/matrices.hpp"

using namespace trigsum;

TEST_CASE("rows are normalised") {
    for (const auto& id : builtin_matrix_ids()) {
        CAPTURE(id);
        const auto A = builtin_matrix(id);
        for (long n : {0L, 1L, 7L, 64L}) {
            const auto s = row_sum(A, n);
            CHECK(s.sum == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(s.remainder_bound < 1e-12);
        }
    }
}

TEST_CASE("entries are non-negative and vanish past finite supports") {
    const auto C = builtin_matrix("cesaro");
    CHECK(C.entry(5, 5) == doctest::Approx(1.0 / 6.0));
    CHECK(C.entry(5, 6) == 0.0);
    const auto N = builtin_matrix("norlund:p=k+1");
    // p_{n-k} / P_n with p_j = j + 1.
    CHECK(N.entry(3, 0) == doctest::Approx(4.0 / 10.0));
    CHECK(N.entry(3, 3) == doctest::Approx(1.0 / 10.0));
    const auto R = builtin_matrix("riesz:p=k+1");
    CHECK(R.entry(3, 3) == doctest::Approx(4.0 / 10.0));
    const auto G = builtin_matrix("geometric");
    CHECK(G.entry(3, 2) == doctest::Approx(0.25 * std::pow(0.75, 2)));
    CHECK_FALSE(G.finite_row(3));
    CHECK(G.finite_row(0));
}

TEST_CASE("Cesaro r-difference norm has the closed form r/(n+1)") {
    const auto C = builtin_matrix("cesaro");
    for (long n = 0; n <= 64; ++n)
        for (int r = 1; r <= n + 1; ++r) CHECK(r_difference_norm(C, n, r) == doctest::Approx(r / (n + 1.0)).epsilon(1e-14));
}

TEST_CASE("identity matrix norms") {
    const auto I = builtin_matrix("identity");
    CHECK(r_difference_norm(I, 0, 1) == doctest::Approx(1.0));
    for (long n : {1L, 5L, 40L}) CHECK(r_difference_norm(I, n, 1) == doctest::Approx(2.0));
}

TEST_CASE("lower variant stops at k = n") {
    const auto G = builtin_matrix("geometric");
    CHECK(r_difference_norm_lower(G, 8, 1) < r_difference_norm(G, 8, 1));
    const auto C = builtin_matrix("cesaro");
    CHECK(r_difference_norm_lower(C, 8, 2) == doctest::Approx(r_difference_norm(C, 8, 2)));
}

TEST_CASE("condition (113) double sum") {
    const auto C = builtin_matrix("cesaro");
    CHECK(check_condition_113(C, 3, 2) == doctest::Approx(7.0 / 4.0));
    CHECK(check_condition_113(C, 10, 1) == doctest::Approx(1.0));
}

TEST_CASE("moment conditions") {
    const auto C = builtin_matrix("cesaro");
    for (long n : {1L, 10L, 256L}) {
        CHECK(check_condition_114(C, n) == doctest::Approx((n + 2.0) / (2.0 * (n + 1.0))).epsilon(1e-13));
        CHECK(check_condition_115(C, n) ==
              doctest::Approx((n + 2.0) * (2.0 * n + 3.0) / (6.0 * (n + 1.0) * (n + 1.0))).epsilon(1e-13));
    }
    const auto G = builtin_matrix("geometric");
    CHECK(check_condition_114(G, 16) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(check_condition_115(G, 4) == doctest::Approx(1.8).epsilon(1e-12));
    CHECK(check_condition_115(G, 64) == doctest::Approx(1.98461538461538461538).epsilon(1e-12));
    CHECK(check_condition_115(G, 512) == doctest::Approx(1.99805068226120857699).epsilon(1e-12));
}

TEST_CASE("unit-step comparison fails for C1, the triangle bound holds") {
    const auto C = builtin_matrix("cesaro");
    const auto c = compare_51(C, 10, 2);
    CHECK(c.A_nr == doctest::Approx(2.0 * c.A_n1));
    CHECK_FALSE(c.unit_step_dominates());
    CHECK(c.triangle_bound_holds(2));
    for (const auto& id : builtin_matrix_ids()) {
        const auto A = builtin_matrix(id);
        for (long n : {3L, 20L})
            for (int r = 1; r <= 8; ++r) CHECK(compare_51(A, n, r).triangle_bound_holds(r));
    }
}

TEST_CASE("tail bounds dominate the true tails") {
    const auto G = builtin_matrix("geometric");
    for (int j = 0; j <= 2; ++j) {
        const long K = 30;
        double tail = 0.0;
        const auto a = G.entries(8, 4000);
        for (long k = K + 1; k < 4000; ++k) tail += std::pow(k + 1.0, j) * a[k];
        CHECK(G.tail_bound(8, K, j) >= tail * (1.0 - 1e-12));
    }
    const auto C = builtin_matrix("cesaro");
    CHECK(C.tail_bound(5, 5, 2) == 0.0);
    CHECK(C.truncation_index(5, 1, 1e-13) == 5);
}

TEST_CASE("power tails refuse moments they cannot bound") {
    SummabilityMatrix A(
        "powtail", {}, [](long, long k) { return 1.0 / ((k + 1.0) * (k + 2.0)); },
        [](long) { return RowSupport{PowerTail{0, 1.0, 2.0}}; });
    CHECK(A.tail_bound(0, 100, 0) < 0.011);
    CHECK_THROWS_AS(A.tail_bound(0, 100, 1), NonTruncatableRow);
}

TEST_CASE("matrix specs") {
    CHECK(builtin_matrix("norlund:p=harmonic").id() == "norlund:p=harmonic");
    CHECK(builtin_matrix("riesz:p=pow:0.5").entry(2, 0) > 0.0);
    CHECK_THROWS_AS(builtin_matrix("cesaro:p=1"), std::invalid_argument);
    CHECK_THROWS_AS(builtin_matrix("norlund"), std::invalid_argument);
    CHECK_THROWS_AS(builtin_matrix("norlund:p=k-5"), std::invalid_argument);
    CHECK_THROWS_AS(builtin_matrix("banana"), std::invalid_argument);
}

TEST_CASE("custom lower-triangular matrices") {
    const auto A = lower_triangular_matrix("ones", [](long, long) { return 1.0; });
    CHECK(A.entry(4, 2) == doctest::Approx(0.2));
    CHECK(r_difference_norm(A, 4, 1) == doctest::Approx(0.2));
}
