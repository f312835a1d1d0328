#pragma once

// The potential q(x): a small catalog plus programmatic custom potentials,
// its weighted norm ||q||_{1,rho} = int |q| / sqrt(1 - x^2), and the
// convergence threshold derived from that norm.

#include "legendre_fd/sinc_quadrature.hpp"

#include <functional>
#include <string>
#include <vector>

namespace legendre_fd {

enum class PotentialKind { zero, constant, polynomial, log_product, custom };

template <typename Real>
class PotentialSpec {
public:
    static PotentialSpec zero();
    static PotentialSpec constant(Real c);
    /// coeffs[k] multiplies x^k.
    static PotentialSpec polynomial(std::vector<Real> coeffs);
    /// q(x) = ln|(r - x)(s + x)|, singular at r and -s.
    static PotentialSpec log_product(Real r, Real s);
    /// Custom potential; every point where q is unbounded or non-smooth must be listed.
    static PotentialSpec custom(std::function<Real(Real)> fn, std::vector<Real> singularities,
                                std::string name = "custom");

    PotentialKind kind() const noexcept { return kind_; }
    const std::vector<Real>& singularities() const noexcept { return singularities_; }
    const std::vector<Real>& parameters() const noexcept { return params_; }
    std::string describe() const;

    /// q at a plain abscissa; throws DomainError exactly at a singularity.
    Real operator()(Real x) const;
    /// q at a quadrature node, resolving distances to singular subinterval ends exactly.
    Real operator()(const Node<Real>& node) const;

private:
    PotentialSpec(PotentialKind kind, std::vector<Real> params, std::vector<Real> singularities);

    void check_norm_finite() const;

    PotentialKind kind_;
    std::vector<Real> params_;
    std::vector<Real> singularities_;
    std::function<Real(Real)> custom_;
    std::string name_;
};

template <typename Real>
Real eval_q(const PotentialSpec<Real>& spec, Real x) {
    return spec(x);
}

/// Throws ConfigurationError when a singularity sits strictly inside a subinterval
/// and interior singularities are not explicitly allowed.
template <typename Real>
void check_singularities(const PotentialSpec<Real>& spec, const Mesh<Real>& mesh, bool allow_interior);

/// q sampled at every node of the mesh.
template <typename Real>
NodeField<Real> sample_potential(const PotentialSpec<Real>& spec, const Mesh<Real>& mesh);

/// ||q||_{1,rho} by the tanh rule over the mesh.
template <typename Real>
Real weighted_l1_norm(const PotentialSpec<Real>& spec, const Mesh<Real>& mesh, bool allow_interior = false);

/// Eigenindex threshold n0 and rate factor alpha~_n of the convergence theorem.
struct ConvergenceThreshold {
    double norm;
    long long n0;

    /// Radius of convergence of the majorant generating function, 3 - 2 sqrt 2.
    static double gamma();
    /// alpha~_n = 3 sqrt(2) pi ||q|| / n, n >= 1.
    double alpha(int n) const;
};

ConvergenceThreshold convergence_threshold(double norm);

}  // namespace legendre_fd
