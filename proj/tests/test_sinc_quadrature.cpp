#include "legendre_fd/errors.hpp"
#include "legendre_fd/real.hpp"
#include "legendre_fd/sinc_quadrature.hpp"
#include "oracles/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <functional>

using namespace legendre_fd;

namespace {

NodeFunction<double> constant(double c) {
    return [c](const Node<double>&) { return c; };
}

NodeFunction<double> p_n(int n) {
    return of_x<double>([n](double x) { return legendre_p(LegendreOrder(n), x); });
}

NodeFunction<double> q_n(int n) {
    return [n](const Node<double>& node) { return legendre_q(LegendreOrder(n), node.legendre_arg()); };
}

double full_integral(const Mesh<double>& mesh, const NodeFunction<double>& f) {
    double total = 0;
    for (const auto& sub : mesh.subintervals()) {
        total += int_ab<double>(sub, {f});
    }
    return total;
}

}  // namespace

TEST_CASE("build_mesh examples") {
    const auto one = build_mesh<double>(4, {-1, 1});
    CHECK(one.size() == 1);
    CHECK(one.subinterval(0).size() == 9);
    CHECK(one.subinterval(0).node(0).x == 0.0);

    const auto two = build_mesh<double>(4, {-1, 0, 1});
    CHECK(two.size() == 2);
    CHECK(two.subinterval(0).node(0).x == doctest::Approx(-0.5).epsilon(1e-15));

    const auto aligned = build_mesh<double>(250, {-1, -1.0 / 3, 0, 5.0 / 12, 1});
    CHECK(aligned.size() == 4);
    CHECK(aligned.total_nodes() == 4 * 501);
    CHECK(aligned.h() == doctest::Approx(std::sqrt(2 * pi<double>() / 250)).epsilon(1e-16));
}

TEST_CASE("build_mesh rejects bad breakpoints") {
    CHECK_THROWS_AS(build_mesh<double>(0, {-1, 1}), ConfigurationError);
    CHECK_THROWS_AS(build_mesh<double>(4, {-1}), ConfigurationError);
    CHECK_THROWS_AS(build_mesh<double>(4, {-0.9, 1}), ConfigurationError);
    CHECK_THROWS_AS(build_mesh<double>(4, {-1, 0.9}), ConfigurationError);
    CHECK_THROWS_AS(build_mesh<double>(4, {-1, 0.5, 0.2, 1}), ConfigurationError);
    CHECK_THROWS_AS(build_mesh<double>(4, {-1, 0, 0, 1}), ConfigurationError);
    CHECK_THROWS_AS(build_mesh<double>(10, {-1, 1}, build_delta_table<double>(5)), ConfigurationError);
}

TEST_CASE("subinterval node and weight invariants") {
    const auto mesh = build_mesh<double>(60, {-1, -1.0 / 3, 0.25, 1});
    for (const auto& sub : mesh.subintervals()) {
        const int K = sub.K();
        const double h = sub.h();
        for (int i = -K; i <= K; ++i) {
            const auto& node = sub.node(i);
            const double e = std::exp(i * h);
            CHECK(node.x == doctest::Approx((sub.a() + sub.b() * e) / (1 + e)).epsilon(1e-14));
            CHECK(node.from_a > 0);
            CHECK(node.to_b > 0);
            CHECK(node.from_a + node.to_b == doctest::Approx(sub.b() - sub.a()).epsilon(1e-14));
            const double mu = (sub.b() - sub.a()) / std::pow(std::exp(-i * h / 2) + std::exp(i * h / 2), 2);
            CHECK(sub.weight(i) == doctest::Approx(mu).epsilon(1e-14));
            CHECK(sub.weight(i) == sub.weight(-i));
            if (i > -K) {
                CHECK(node.x >= sub.node(i - 1).x);
                CHECK(node.from_a > sub.node(i - 1).from_a);
            }
        }
    }
}

TEST_CASE("node offsets stay exact at the crowded ends") {
    const auto mesh = build_mesh<double>(250, {-1, 1});
    const auto& sub = mesh.subinterval(0);
    const auto& last = sub.node(250);
    CHECK(last.to_b > 0);
    CHECK(last.to_b < 1e-15);
    CHECK(last.offset_from(1.0) == last.to_b);
    CHECK(sub.node(-250).offset_from(-1.0) == -sub.node(-250).from_a);
    CHECK(last.legendre_arg().one_minus_x == last.to_b);
}

TEST_CASE("int_ab examples") {
    const auto mesh = build_mesh<double>(250, {-1, 1});
    const auto& sub = mesh.subinterval(0);
    CHECK(std::abs(int_ab<double>(sub, {constant(1)}) - 2) <= 1e-12);
    CHECK(std::abs(int_ab<double>(sub, {p_n(3), p_n(3)}) - 2.0 / 7) <= 1e-10);
    const NodeFunction<double> rho = [](const Node<double>& node) {
        return 1 / std::sqrt(node.legendre_arg().one_minus_x_squared());
    };
    CHECK(std::abs(int_ab<double>(sub, {rho}) - pi<double>()) <= 1e-6);
}

TEST_CASE("int_ab mixes arrays and callables") {
    const auto mesh = build_mesh<double>(40, {-1, 1});
    const auto& sub = mesh.subinterval(0);
    std::vector<double> xs;
    for (const auto& node : sub.nodes()) {
        xs.push_back(node.x);
    }
    const auto x_fn = of_x<double>([](double x) { return x; });
    const double from_arrays = int_ab<double>(sub, {std::span<const double>(xs), std::span<const double>(xs)});
    const double from_mixed = int_ab<double>(sub, {std::span<const double>(xs), x_fn});
    CHECK(std::abs(from_arrays - 2.0 / 3) <= 1e-5);
    CHECK(from_arrays == doctest::Approx(from_mixed).epsilon(1e-15));

    std::vector<double> short_array(xs.size() - 1, 1.0);
    CHECK_THROWS_AS(int_ab<double>(sub, {std::span<const double>(short_array)}), ContractViolation);
    CHECK_THROWS_AS(int_az<double>(sub, 41, {x_fn}), ContractViolation);
}

TEST_CASE("int_az examples") {
    const auto mesh = build_mesh<double>(250, {-1, 1});
    const auto& sub = mesh.subinterval(0);
    for (int j : {-250, -100, -7, 0, 3, 99, 250}) {
        CHECK(std::abs(int_az<double>(sub, j, {constant(1)}) - sub.node(j).from_a) <= 1e-8);
    }
    const auto x_fn = of_x<double>([](double x) { return x; });
    CHECK(std::abs(int_az<double>(sub, 0, {x_fn}) + 0.5) <= 1e-8);
    CHECK(std::abs(int_az<double>(sub, 250, {p_n(1), q_n(1)}) - int_ab<double>(sub, {p_n(1), q_n(1)})) <= 1e-6);
}

TEST_CASE("int_az at the first node is negligible for bounded integrands") {
    const auto mesh = build_mesh<double>(250, {-1, 0.3, 1});
    const auto f = of_x<double>([](double x) { return std::cos(3 * x) + 2; });
    for (const auto& sub : mesh.subintervals()) {
        const double bound = sub.h() * sub.weight(-250) * 3 + 1e-10;
        CHECK(std::abs(int_az<double>(sub, -250, {f})) <= bound);
    }
}

TEST_CASE("cumulative_int examples") {
    const auto single = build_mesh<double>(80, {-1, 1});
    const auto f = of_x<double>([](double x) { return std::exp(x); });
    for (int j : {-80, -3, 0, 17, 80}) {
        CHECK(cumulative_int<double>(single, 0, j, {f}) == int_az<double>(single.subinterval(0), j, {f}));
    }

    const auto mesh = build_mesh<double>(250, {-1, -1.0 / 3, 0, 5.0 / 12, 1});
    for (std::size_t k = 0; k < mesh.size(); ++k) {
        for (int j : {-250, -40, 0, 120, 250}) {
            const double z = mesh.subinterval(k).node(j).x;
            CHECK(std::abs(cumulative_int<double>(mesh, k, j, {constant(1)}) - (z + 1)) <= 1e-8);
        }
    }
    CHECK_THROWS_AS(cumulative_int<double>(mesh, 4, 0, {constant(1)}), ContractViolation);
    CHECK_THROWS_AS(cumulative_int<double>(mesh, 0, 251, {constant(1)}), ContractViolation);
}

TEST_CASE("cumulative_int on two subintervals agrees with one") {
    const auto one = build_mesh<double>(250, {-1, 1});
    const auto two = build_mesh<double>(250, {-1, 0, 1});
    const auto sq = of_x<double>([](double x) { return x * x; });
    // The midpoint of (0, 1) is node 0 of the second subinterval and node j of the single mesh
    // where the tanh map hits 1/2; compare both against the closed form at their own nodes.
    for (int j : {-200, -50, 0, 50, 200}) {
        const double z1 = one.subinterval(0).node(j).x;
        const double z2 = two.subinterval(1).node(j).x;
        const double exact1 = (z1 * z1 * z1 + 1) / 3;
        const double exact2 = (z2 * z2 * z2 + 1) / 3;
        CHECK(std::abs(cumulative_int<double>(one, 0, j, {sq}) - exact1) <= 1e-6);
        CHECK(std::abs(cumulative_int<double>(two, 1, j, {sq}) - exact2) <= 1e-6);
    }
    const double at_zero_two = cumulative_int<double>(two, 0, 250, {sq});
    CHECK(std::abs(at_zero_two - cumulative_int<double>(one, 0, 0, {sq})) <= 1e-6);
}

TEST_CASE("bulk forms are bit-identical to the single-node forms") {
    const auto mesh = build_mesh<double>(50, {-1, -0.2, 0.6, 1});
    const auto field = NodeField<double>::sample(mesh, [](const Node<double>& n) { return std::sin(5 * n.x); });
    const auto fn = of_x<double>([](double x) { return std::sin(5 * x); });
    double total = 0;
    for (std::size_t k = 0; k < mesh.size(); ++k) {
        total += int_ab<double>(mesh.subinterval(k), {std::span<const double>(field.on(k))});
    }
    CHECK(integrate(mesh, field) == total);

    const auto profile = cumulative_profile(mesh, field);
    for (std::size_t k = 0; k < mesh.size(); ++k) {
        const auto partial = int_az_all(mesh.subinterval(k), field.on(k));
        for (int j = -50; j <= 50; ++j) {
            CHECK(partial[static_cast<std::size_t>(j + 50)] ==
                  int_az<double>(mesh.subinterval(k), j, {std::span<const double>(field.on(k))}));
            CHECK(profile(k, j) == cumulative_int<double>(mesh, k, j, {std::cref(field)}));
            CHECK(profile(k, j) == doctest::Approx(cumulative_int<double>(mesh, k, j, {fn})).epsilon(1e-14));
        }
    }
    const auto other = build_mesh<double>(40, {-1, 1});
    CHECK_THROWS_AS(integrate(other, field), ContractViolation);
    CHECK_THROWS_AS(cumulative_int<double>(other, 0, 0, {std::cref(field)}), ContractViolation);
}

TEST_CASE("orthogonality matrix of Legendre polynomials") {
    const auto mesh = build_mesh<double>(250, {-1, 1});
    const auto& sub = mesh.subinterval(0);
    for (int n = 0; n <= 10; ++n) {
        for (int m = 0; m <= 10; ++m) {
            const double want = n == m ? 2.0 / (2 * n + 1) : 0.0;
            CHECK(std::abs(int_ab<double>(sub, {p_n(n), p_n(m)}) - want) <= 1e-9);
        }
    }
}

TEST_CASE("endpoint-singular integrand converges to pi") {
    const NodeFunction<double> rho = [](const Node<double>& node) {
        return 1 / std::sqrt(node.legendre_arg().one_minus_x_squared());
    };
    double previous = std::numeric_limits<double>::infinity();
    for (int K : {25, 50, 100, 250}) {
        const auto mesh = build_mesh<double>(K, {-1, 1});
        const double err = std::abs(full_integral(mesh, rho) - pi<double>());
        CHECK(err < previous);
        previous = err;
    }
    CHECK(previous <= 1e-5);
}

TEST_CASE("error of the tanh rule falls with K for a smooth integrand") {
    const auto f = of_x<double>([](double x) { return std::exp(x); });
    const double exact = std::exp(1.0) - std::exp(-1.0);
    double previous = std::numeric_limits<double>::infinity();
    for (int K : {25, 50, 100, 200}) {
        const auto mesh = build_mesh<double>(K, {-1, 1});
        const double err = std::abs(full_integral(mesh, f) - exact);
        // Each doubling gains a factor of ten until roundoff takes over.
        CHECK((err <= previous / 10 || err <= 1e-14));
        previous = err;
    }
}

TEST_CASE("additivity over a split interval") {
    const auto whole = build_mesh<double>(250, {-1, 1});
    const auto f = of_x<double>([](double x) { return std::exp(x) * std::cos(2 * x); });
    const double total = full_integral(whole, f);
    for (double c : {-1.0 / 3, 0.0, 5.0 / 12}) {
        const auto split = build_mesh<double>(250, {-1, c, 1});
        CHECK(std::abs(full_integral(split, f) - total) <= 1e-8);
    }
}

TEST_CASE("definite integrals against an adaptive oracle") {
    const auto mesh = build_mesh<double>(250, {-1, -1.0 / 3, 0, 5.0 / 12, 1});
    double oracle_total = 0;
    const auto& bps = mesh.breakpoints();
    for (std::size_t k = 0; k + 1 < bps.size(); ++k) {
        const double a = bps[k];
        const double b = bps[k + 1];
        oracle_total += oracle::endpoint_singular(
            [&](double x, double from_a, double to_b) {
                const auto offset = [&](double c) {
                    return std::abs(c - a) < std::abs(c - b) ? (c - a) - from_a : (c - b) + to_b;
                };
                return std::log(std::abs(offset(5.0 / 12) * offset(-1.0 / 3))) * std::cos(x);
            },
            a, b);
    }
    const NodeFunction<double> g = [](const Node<double>& node) {
        return std::log(std::abs(node.offset_from(5.0 / 12) * node.offset_from(-1.0 / 3))) * std::cos(node.x);
    };
    CHECK(std::abs(full_integral(mesh, g) - oracle_total) <= 1e-9);
}

TEST_CASE("extended precision quadrature") {
    if constexpr (has_extended_precision) {
        const auto mesh = build_mesh<extended>(1000, {extended(-1), extended(1)});
        const NodeFunction<extended> one = [](const Node<extended>&) { return extended(1); };
        const auto x2 = of_x<extended>([](extended x) { return x * x; });
        CHECK(abs(int_ab<extended>(mesh.subinterval(0), {one}) - 2) < extended("1e-30"));
        CHECK(abs(int_ab<extended>(mesh.subinterval(0), {x2}) - extended(2) / 3) < extended("1e-30"));
        CHECK(abs(int_az<extended>(mesh.subinterval(0), 0, {x2}) - extended(1) / 3) < extended("1e-30"));
    }
}
