#include "legendre_fd/errors.hpp"
#include "legendre_fd/fd_core.hpp"
#include "legendre_fd/real.hpp"
#include "legendre_fd/theory.hpp"

#include <doctest.h>

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <limits>

using namespace legendre_fd;

namespace {

using rational = boost::multiprecision::cpp_rational;

const double kGamma = 3 - 2 * std::sqrt(2.0);

/// (2j-3)!! / (2 (2j)!!) as an exact fraction.
rational coefficient_exact(int j) {
    rational num = 1;
    for (int k = 2 * j - 3; k > 1; k -= 2) {
        num *= k;
    }
    rational den = 2;
    for (int k = 2 * j; k > 1; k -= 2) {
        den *= k;
    }
    return num / den;
}

/// |sum_{j<=jmax} V_j z^j - f(z)| in long double, with V_j from its own recurrence.
double tail_oracle(long double z, int jmax) {
    std::vector<long double> v{1};
    for (int j = 0; j < jmax; ++j) {
        long double next = v[static_cast<std::size_t>(j)];
        for (int i = 0; i <= j; ++i) {
            next += v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j - i)];
        }
        v.push_back(next);
    }
    long double partial = 0;
    long double zj = 1;
    for (long double vj : v) {
        partial += vj * zj;
        zj *= z;
    }
    const long double g = 3 - 2 * std::sqrt(2.0L);
    const long double f = (1 - z - std::sqrt(1 - z / g) * std::sqrt(1 - g * z)) / (2 * z);
    return static_cast<double>(std::abs(partial - f));
}

}  // namespace

TEST_CASE("v_sequence examples") {
    const auto v = v_sequence(5);
    REQUIRE(v.size() == 6);
    CHECK(v[0] == 1.0);
    CHECK(v[1] == 2.0);
    CHECK(v[2] == 6.0);
    // 2*1*6 + 2*2 + 6
    CHECK(v[3] == 22.0);
}

TEST_CASE("v_closed_form matches the recurrence") {
    const auto v = v_sequence(30);
    CHECK(v_closed_form(1) == 1.0);
    CHECK(std::abs(v_closed_form(2) - 2) <= 1e-12);
    CHECK(std::abs(v_closed_form(3) - 6) <= 1e-12);
    for (int j = 2; j <= 31; ++j) {
        const double want = v[static_cast<std::size_t>(j - 1)];
        CHECK(std::abs(v_closed_form(j) - want) <= 1e-9 * want);
    }
}

TEST_CASE("generating function") {
    CHECK(generating_function(0) == 1.0);
    CHECK(generating_function_check(0, 10) == 0.0);
    CHECK(generating_function_check(0.1, 60) <= 1e-10);
    // The alternating tail after 80 terms is about 1e-8; compare with a long-double partial sum.
    CHECK(generating_function_check(-0.15, 80) <= generating_function_tolerance(-0.15, 80));
    CHECK(generating_function_check(-0.15, 80) == doctest::Approx(tail_oracle(-0.15L, 80)).epsilon(1e-4));
    CHECK(generating_function_check(0.1, 60) == doctest::Approx(tail_oracle(0.1L, 60)).epsilon(1e-3));
    for (double z : {0.1, -0.15, 0.9 * kGamma, -0.9 * kGamma, 0.05}) {
        for (int jmax : {20, 60, 120}) {
            CHECK(generating_function_check(z, jmax) <= generating_function_tolerance(z, jmax));
        }
    }
    CHECK_THROWS_AS(generating_function_check(kGamma, 10), DomainError);
    CHECK_THROWS_AS(generating_function_check(-0.2, 10), DomainError);
}

TEST_CASE("kernel ratio examples") {
    CHECK(kernel_ratio(3, 0.4, 0.4) == 0.0);
    CHECK(kernel_ratio(0, 0.9, -0.9) <= 1.0);
    CHECK(kernel_ratio(0, 0.9, -0.9) > 0.0);
    CHECK(kernel_ratio(5, 0.3, -0.7) == doctest::Approx(kernel_ratio(5, -0.7, 0.3)));
}

TEST_CASE("kernel bound holds on sampled pairs") {
    for (int n = 0; n <= 20; ++n) {
        CAPTURE(n);
        CHECK(kernel_bound_check(n, 100000) <= 1 + 1e-8);
    }
    CHECK_THROWS_AS(kernel_bound_check(1, 0), DomainError);
}

TEST_CASE("double-factorial coefficient bound") {
    for (int j = 2; j <= 50; ++j) {
        CAPTURE(j);
        const double exact = static_cast<double>(coefficient_exact(j));
        CHECK(double_factorial_ratio(j) / 2 == doctest::Approx(exact).epsilon(1e-13));
        CHECK(exact < 1 / ((2 * j - 1) * std::sqrt(pi<double>() * j)));
    }
    CHECK(coefficient_bound_holds(50));
    CHECK(double_factorial_ratio(1) == doctest::Approx(0.5));
    CHECK(std::isfinite(double_factorial_ratio(400)));
    CHECK(double_factorial_ratio(400) > 0);
}

TEST_CASE("apriori_bounds examples") {
    const auto zero = apriori_bounds(3, 5, 0);
    CHECK(zero.applicable);
    for (int m = 1; m <= 5; ++m) {
        CHECK(zero.lambda_bound(m) == 0.0);
        CHECK(zero.u_bound(m) == 0.0);
    }

    // alpha~ = 3 sqrt2 pi ||q|| / n = 1/2.
    const int n = 40;
    const double norm = 0.5 * n / (3 * std::sqrt(2.0) * pi<double>());
    const auto half = apriori_bounds(n, 10, norm);
    CHECK(half.alpha_tilde == doctest::Approx(0.5).epsilon(1e-14));
    const double want = norm * std::pow(0.5, 10) / (21 * std::sqrt(11 * pi<double>()) * 0.5);
    CHECK(half.lambda_bound(10) == doctest::Approx(want).epsilon(1e-13));
    CHECK(half.lambda_error == doctest::Approx(want).epsilon(1e-13));
    const double want_u = std::pow(0.5, 11) / (23 * std::sqrt(12 * pi<double>()) * 0.5);
    CHECK(half.u_bound(10) == doctest::Approx(want_u).epsilon(1e-13));
    CHECK(half.beta_bound == doctest::Approx(std::sqrt(3 / pi<double>())));
    CHECK(half.beta <= half.beta_bound);
    CHECK(half.coefficient_bound_holds);

    const auto ground = apriori_bounds(0, 10, 1.0);
    CHECK_FALSE(ground.applicable);
    CHECK_FALSE(ground.convergent);
    CHECK(std::isinf(ground.lambda_bound(10)));

    const auto divergent = apriori_bounds(1, 10, 1.0);
    CHECK(divergent.alpha_tilde >= 1);
    CHECK_FALSE(divergent.convergent);
    CHECK(std::isinf(divergent.u_bound(10)));
}

TEST_CASE("bounds decrease in m") {
    for (int n : {20, 40, 400}) {
        const auto report = apriori_bounds(n, 10, 0.5);
        if (report.alpha_tilde >= 1) {
            continue;
        }
        CAPTURE(n);
        for (int m = 1; m < 30; ++m) {
            CHECK(report.lambda_bound(m + 1) < report.lambda_bound(m));
            CHECK(report.u_bound(m + 1) < report.u_bound(m));
            CHECK(report.lambda_bound(m) > 0);
        }
    }
}

TEST_CASE("convergent implies alpha below gamma") {
    for (int n = 1; n <= 120; ++n) {
        const auto report = apriori_bounds(n, 5, 2.0);
        if (report.convergent) {
            CHECK(report.alpha_tilde <= kGamma);
        }
    }
}

TEST_CASE("solve error stays below the lambda bound for a small potential") {
    const auto spec = PotentialSpec<double>::polynomial({0, 0, 0.001});
    const auto mesh = build_mesh<double>(250, {-1, 1});
    for (int n : {2, 3, 5}) {
        CAPTURE(n);
        const auto reference = solve(LegendreOrder(n), 60, spec, mesh);
        const auto report = apriori_bounds(n, 8, reference.norm_q);
        REQUIRE(report.convergent);
        for (int m = 1; m <= 8; ++m) {
            CAPTURE(m);
            const double error = std::abs(reference.lambda_partial[static_cast<std::size_t>(m)] - reference.lambda);
            // Below the bound or at the rounding floor of lambda.
            CHECK(error <= std::max(report.lambda_bound(m), 64 * std::numeric_limits<double>::epsilon() * n * n));
        }
    }
}
