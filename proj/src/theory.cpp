#include "legendre_fd/theory.hpp"

#include "legendre_fd/errors.hpp"
#include "legendre_fd/potential.hpp"
#include "legendre_fd/real.hpp"
#include "legendre_fd/special_functions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace legendre_fd {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double gamma_radius() {
    return ConvergenceThreshold::gamma();
}

}  // namespace

double BoundReport::lambda_bound(int steps) const {
    if (!applicable || !(alpha_tilde < 1)) {
        return kInf;
    }
    return norm_q * std::pow(alpha_tilde, steps) /
           ((2 * steps + 1) * std::sqrt(pi<double>() * (steps + 1)) * (1 - alpha_tilde));
}

double BoundReport::u_bound(int steps) const {
    if (!applicable || !(alpha_tilde < 1)) {
        return kInf;
    }
    return std::pow(alpha_tilde, steps + 1) /
           ((2 * steps + 3) * std::sqrt(pi<double>() * (steps + 2)) * (1 - alpha_tilde));
}

std::vector<double> v_sequence(int jmax) {
    if (jmax < 0) {
        throw DomainError("v_sequence needs jmax >= 0");
    }
    std::vector<double> v(static_cast<std::size_t>(jmax) + 1);
    v[0] = 1;
    for (int j = 0; j < jmax; ++j) {
        double s = 0;
        for (int i = 0; i <= j; ++i) {
            s += v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(j - i)];
        }
        v[static_cast<std::size_t>(j) + 1] = s + v[static_cast<std::size_t>(j)];
        if (!std::isfinite(v[static_cast<std::size_t>(j) + 1])) {
            throw std::overflow_error("V_" + std::to_string(j + 1) + " overflows double");
        }
    }
    return v;
}

double double_factorial_ratio(int p) {
    if (p < 1) {
        throw DomainError("double_factorial_ratio needs p >= 1");
    }
    if (p > 150) {
        // (2p-3)!! = (2p-2)! / (2^{p-1} (p-1)!),  (2p)!! = 2^p p!
        const double log_ratio = std::lgamma(2.0 * p - 1) - std::lgamma(static_cast<double>(p)) -
                                 std::lgamma(p + 1.0) - (2.0 * p - 1) * std::log(2.0);
        return std::exp(log_ratio);
    }
    double c = 0.5;  // (-1)!! / 2!!
    for (int k = 1; k < p; ++k) {
        c *= (2.0 * k - 1) / (2.0 * k + 2);
    }
    return c;
}

bool coefficient_bound_holds(int jmax) {
    for (int j = 2; j <= jmax; ++j) {
        const double lhs = double_factorial_ratio(j) / 2;
        const double rhs = 1 / ((2.0 * j - 1) * std::sqrt(pi<double>() * j));
        if (!(lhs < rhs)) {
            return false;
        }
    }
    return true;
}

double v_closed_form(int j) {
    if (j < 1) {
        throw DomainError("v_closed_form needs j >= 1");
    }
    if (j == 1) {
        return 1;
    }
    const double g = gamma_radius();
    double sum = 0;
    for (int p = 1; p <= j - 1; ++p) {
        sum += double_factorial_ratio(p) * double_factorial_ratio(j - p) * std::pow(g, 2 * p - j);
    }
    return 0.5 * (double_factorial_ratio(j) * (std::pow(g, j) + std::pow(g, -j)) - sum);
}

namespace {

double kernel_ratio_at(int n, const LegendreArg<double>& x, const LegendreArg<double>& xi) {
    const LegendreOrder order(n);
    const double px = legendre_p(order, x.x);
    const double pxi = legendre_p(order, xi.x);
    const double qx = legendre_q(order, x);
    const double qxi = legendre_q(order, xi);
    const double weight = std::pow(x.one_minus_x_squared() * xi.one_minus_x_squared(), 0.25);
    const double bound = std::sqrt(2 / (0.25 + (n + 0.5) * (n + 0.5)));
    return weight * std::abs(px * qxi - pxi * qx) / bound;
}

// x = cos(pi u) with both endpoint distances from half-angle identities.
LegendreArg<double> from_angle(double u) {
    const double s = std::sin(pi<double>() * u / 2);
    const double c = std::cos(pi<double>() * u / 2);
    return {std::cos(pi<double>() * u), 2 * s * s, 2 * c * c};
}

}  // namespace

double kernel_ratio(int n, double x, double xi) {
    return kernel_ratio_at(n, LegendreArg<double>::from(x), LegendreArg<double>::from(xi));
}

double kernel_bound_check(int n, std::int64_t samples) {
    if (samples < 1) {
        throw DomainError("kernel_bound_check needs at least one sample");
    }
    // R2 low-discrepancy sequence in angle space, which crowds samples toward x = +-1.
    const double phi2 = 1.32471795724474602596;
    const double a1 = 1 / phi2;
    const double a2 = 1 / (phi2 * phi2);
    double worst = 0;
    for (std::int64_t k = 1; k <= samples; ++k) {
        const double u = std::fmod(0.5 + a1 * static_cast<double>(k), 1.0);
        const double v = std::fmod(0.5 + a2 * static_cast<double>(k), 1.0);
        if (u <= 0 || v <= 0) {
            continue;
        }
        const auto x = from_angle(u);
        const auto xi = from_angle(v);
        if (!(x.one_minus_x > 0 && x.one_plus_x > 0 && xi.one_minus_x > 0 && xi.one_plus_x > 0)) {
            continue;
        }
        worst = std::max(worst, kernel_ratio_at(n, x, xi));
    }
    return worst;
}

double generating_function(double z) {
    const double g = gamma_radius();
    if (!(std::abs(z) < g)) {
        throw DomainError("generating function needs |z| < 3 - 2 sqrt 2");
    }
    if (z == 0) {
        return 1;
    }
    return (1 - z - std::sqrt(1 - z / g) * std::sqrt(1 - g * z)) / (2 * z);
}

double generating_function_check(double z, int jmax) {
    const double f = generating_function(z);
    const auto v = v_sequence(jmax);
    double partial = 0;
    double zj = 1;
    for (int j = 0; j <= jmax; ++j) {
        partial += v[static_cast<std::size_t>(j)] * zj;
        zj *= z;
    }
    return std::abs(partial - f);
}

double generating_function_tolerance(double z, int jmax) {
    const double r = std::abs(z / gamma_radius());
    return 2 * std::pow(r, jmax + 1) / (1 - r) + 1e-10;
}

BoundReport apriori_bounds(int n, int m, double norm_q) {
    if (n < 0 || m < 0) {
        throw DomainError("apriori_bounds needs n >= 0 and m >= 0");
    }
    const auto threshold = convergence_threshold(norm_q);
    BoundReport report;
    report.n = n;
    report.m = m;
    report.norm_q = norm_q;
    report.n0 = threshold.n0;
    report.beta_bound = std::sqrt(3 / pi<double>());
    report.coefficient_bound_holds = coefficient_bound_holds(50);
    if (n == 0) {
        report.applicable = false;
        report.alpha_tilde = kInf;
        report.beta = kInf;
        report.lambda_error = kInf;
        report.u_error = kInf;
        return report;
    }
    report.applicable = true;
    report.alpha_tilde = threshold.alpha(n);
    report.beta = std::sqrt(2 * (n + 0.5) / (pi<double>() * n));
    report.convergent = n > threshold.n0;
    report.lambda_error = report.lambda_bound(m);
    report.u_error = report.u_bound(m);
    return report;
}

}  // namespace legendre_fd
