#pragma once

// Numerical checks of the convergence analysis: the Legendre kernel
// inequality, the majorant sequence V_j and its generating function, and the
// a-priori error bounds for the truncated eigenpair.

#include <cstdint>
#include <vector>

namespace legendre_fd {

/// A-priori error estimates for eigenindex n given ||q||_{1,rho}.
struct BoundReport {
    int n = 0;
    int m = 0;
    double norm_q = 0;
    long long n0 = 1;
    /// False for n = 0, where alpha~_n is undefined and no bound applies.
    bool applicable = false;
    double alpha_tilde = 0;
    /// beta_n = sqrt(2(n + 1/2) / (pi n)) <= sqrt(3/pi).
    double beta = 0;
    double beta_bound = 0;
    /// n > n0, which implies alpha~_n <= 3 - 2 sqrt 2.
    bool convergent = false;
    /// (2j-3)!!/(2 (2j)!!) < 1/((2j-1) sqrt(pi j)) held for j = 2..50.
    bool coefficient_bound_holds = false;
    /// lambda_bound(m) and u_bound(m) at the requested step count.
    double lambda_error = 0;
    double u_error = 0;

    /// Bound on |lambda_n - lambda^m_n|; +inf when alpha~_n >= 1 or not applicable.
    double lambda_bound(int m) const;
    /// Bound on ||u_n - u^m_n||_{inf, 1/sqrt(rho)}; +inf when alpha~_n >= 1 or not applicable.
    double u_bound(int m) const;
};

/// V_0 = 1, V_{j+1} = sum_{i=0}^{j} V_i V_{j-i} + V_j, for j = 0..jmax.
std::vector<double> v_sequence(int jmax);

/// V_{j-1} from the explicit formula in gamma = 3 - 2 sqrt 2; j = 1 gives V_0 = 1.
double v_closed_form(int j);

/// (2p-3)!!/(2p)!! with (-1)!! = 1; log-space beyond p = 150.
double double_factorial_ratio(int p);

/// (2j-3)!!/(2 (2j)!!) < 1/((2j-1) sqrt(pi j)) for every j in [2, jmax].
bool coefficient_bound_holds(int jmax);

/// Kernel ratio ((1-x^2)(1-xi^2))^{1/4} |P_n(x)Q_n(xi) - P_n(xi)Q_n(x)| / sqrt(2/(1/4 + (n+1/2)^2)).
double kernel_ratio(int n, double x, double xi);

/// Maximum kernel ratio over `samples` low-discrepancy pairs in (-1, 1)^2.
double kernel_bound_check(int n, std::int64_t samples);

/// Closed form of sum_j V_j z^j for |z| < gamma.
double generating_function(double z);

/// |sum_{j<=jmax} V_j z^j - f(z)|; requires |z| < gamma.
double generating_function_check(double z, int jmax);

/// Tail allowance 2 |z/gamma|^{jmax+1} / (1 - |z/gamma|) + 1e-10 for the check above.
double generating_function_tolerance(double z, int jmax);

BoundReport apriori_bounds(int n, int m, double norm_q);

}  // namespace legendre_fd
