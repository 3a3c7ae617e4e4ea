#include "doctest.h"

#include <cmath>

#include "trigsum/transforms.hpp"

using namespace trigsum;

TEST_CASE("partial sum oracles") {
    const auto f = sawtooth();
    CHECK(partial_sum(f, 10, kPi / 2.0) == doctest::Approx(0.834920634920634920634920634921).epsilon(1e-14));
    CHECK(conjugate_partial_sum(f, 10, 1.0) == doctest::Approx(0.0400497291367525435742947917501).epsilon(1e-12));
    CHECK(partial_sum(cos_harmonic(2), 1, 0.3) == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("Fejer mean of the sawtooth") {
    const auto f = sawtooth();
    const auto C = builtin_matrix("cesaro");
    CHECK(matrix_transform(f, C, 16, kPi / 2.0) == doctest::Approx(0.754267954267954267954267954268).epsilon(1e-14));
    CHECK(deviation(f, C, 16, kPi / 2.0, DeviationKind::ordinary(), 1) ==
          doctest::Approx(0.0311302091294940416613928915519).epsilon(1e-12));
    CHECK(matrix_transform(cos_harmonic(1), C, 3, 0.0) == doctest::Approx(0.75));
}

TEST_CASE("identity matrix reproduces trigonometric polynomials") {
    const auto I = builtin_matrix("identity");
    const auto f = cos_harmonic(3);
    for (long n = 3; n <= 8; ++n)
        CHECK(deviation(f, I, n, 0.4, DeviationKind::ordinary(), 1) == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("kernel route matches the coefficient route") {
    const auto f = sawtooth();
    for (const char* id : {"cesaro", "geometric", "norlund:p=k+1"}) {
        CAPTURE(id);
        const auto A = builtin_matrix(id);
        const double x = 1.1;
        CHECK(matrix_transform_via_kernel(f, A, 8, x) == doctest::Approx(matrix_transform(f, A, 8, x)).epsilon(1e-7));
        CHECK(conjugate_matrix_transform_via_kernel(f, A, 8, x) ==
              doctest::Approx(conjugate_matrix_transform(f, A, 8, x)).epsilon(1e-7));
    }
}

TEST_CASE("truncated conjugate function") {
    CHECK(conjugate_truncated(cos_harmonic(1), 1.0, 1e-3) ==
          doctest::Approx(0.840935287785735599081339068555).epsilon(1e-9));
    CHECK(conjugate_truncated(sin_harmonic(1), 0.0, 0.5) ==
          doctest::Approx(-0.68823916828139826640084562613).epsilon(1e-9));
    CHECK_THROWS_AS(conjugate_truncated(cos_harmonic(1), 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(conjugate_truncated(cos_harmonic(1), 1.0, kPi), std::invalid_argument);
}

TEST_CASE("conjugate function limits") {
    CHECK(conjugate_limit(sin_harmonic(1), 0.0).value == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(conjugate_limit(sawtooth(), kPi / 2.0).value ==
          doctest::Approx(0.346573590279972654708616060729).epsilon(1e-8));
    for (int nu = 1; nu <= 4; ++nu) {
        const double x = 0.3 + nu;
        CHECK(conjugate_limit(cos_harmonic(nu), x).value == doctest::Approx(std::sin(nu * x)).epsilon(1e-9).scale(1.0));
    }
    CHECK(conjugate_limit(constant_function(2.0), 1.0).value == 0.0);
}

TEST_CASE("conjugate limit diverges at a jump") {
    CHECK_THROWS_AS(conjugate_limit(sawtooth(), 0.0), ConjugateLimitError);
}

TEST_CASE("deviation kinds") {
    const auto f = sawtooth();
    const auto C = builtin_matrix("cesaro");
    const double x = kPi / 2.0;
    const double lim = std::abs(conjugate_matrix_transform(f, C, 32, x) - conjugate_limit(f, x).value);
    CHECK(deviation(f, C, 32, x, DeviationKind::conjugate_vs_limit(), 1) == doctest::Approx(lim));
    const double e1 = truncation_point(TruncationRule::pi_over_n1, 32, 2);
    const double e2 = truncation_point(TruncationRule::pi_over_rn1, 32, 2);
    CHECK(e1 == doctest::Approx(kPi / 33.0));
    CHECK(e2 == doctest::Approx(kPi / 66.0));
    const double tr = std::abs(conjugate_matrix_transform(f, C, 32, x) - conjugate_truncated(f, x, e2));
    CHECK(deviation(f, C, 32, x, DeviationKind::conjugate_vs_truncated(TruncationRule::pi_over_rn1), 2) ==
          doctest::Approx(tr));
    CHECK_THROWS_AS(deviation(f, C, 32, x, DeviationKind::ordinary(), 0), std::invalid_argument);
}

TEST_CASE("deviation kind strings") {
    CHECK(to_string(parse_deviation_kind("conjugate_vs_truncated", "pi_over_rn1")) == "conjugate_vs_truncated");
    CHECK(parse_deviation_kind("conjugate_vs_truncated", "pi_over_rn1").truncation == TruncationRule::pi_over_rn1);
    CHECK_THROWS_AS(parse_deviation_kind("other"), std::invalid_argument);
    CHECK_THROWS_AS(parse_truncation_rule("pi"), std::invalid_argument);
}
