#pragma once

// The FD-method recurrence for -((1-x^2)u')' + q u = lambda u on (-1, 1):
// the eigenpair is built as lambda = sum L[d], u = sum U[d], starting from
// (n(n+1), P_n) and adding one correction per step.
//
// Following the reference algorithm, U[0] holds the raw P_n samples and the
// normalization A^{-2} = (2n+1)/2 enters only through inner products.

#include "legendre_fd/potential.hpp"
#include "legendre_fd/sinc_quadrature.hpp"
#include "legendre_fd/special_functions.hpp"
#include "legendre_fd/theory.hpp"

#include <vector>

namespace legendre_fd {

struct FDOptions {
    /// Accept meshes with potential singularities inside a subinterval.
    bool allow_interior_singularities = false;
};

/// Workspace of one solve. Holds references to the mesh and potential, which must outlive it.
template <typename Real>
struct FDState {
    FDState(LegendreOrder order, int steps, const Mesh<Real>& mesh, const PotentialSpec<Real>& spec);
    /// Reuses potential samples already taken on the same mesh.
    FDState(LegendreOrder order, int steps, const Mesh<Real>& mesh, const PotentialSpec<Real>& spec,
            NodeField<Real> potential_samples);

    LegendreOrder n;
    int m;
    const Mesh<Real>& mesh;
    const PotentialSpec<Real>& spec;

    Real a_inv_sq;  ///< (2n+1)/2

    // Node samples of the basis functions, the potential and 1 - x^2.
    NodeField<Real> p;
    NodeField<Real> q_second;  ///< Q_n
    NodeField<Real> dp;
    NodeField<Real> dq;
    NodeField<Real> potential;
    NodeField<Real> weight;
    NodeField<Real> weight_quarter;  ///< (1 - x^2)^{1/4}

    std::vector<Real> L;
    std::vector<NodeField<Real>> U;
    std::vector<NodeField<Real>> DU;
    std::vector<NodeField<Real>> F;

    std::vector<Real> eta;
    std::vector<Real> unorm_l2;   ///< sqrt(int U[d]^2)
    std::vector<Real> unorm_sup;  ///< max over nodes of (1-x^2)^{1/4} |U[d]|
    std::vector<Real> orthogonality;  ///< A^{-2} <U[d], U[0]> after orthogonalization
};

template <typename Real>
struct FDSolution {
    int n = 0;
    int m = 0;
    /// sum of lambda_steps in ascending order.
    Real lambda{};
    std::vector<Real> lambda_steps;
    /// Truncated sums lambda^d for d = 0..m.
    std::vector<Real> lambda_partial;
    /// Truncated eigenfunction and its derivative at every node (raw P_n scaling).
    NodeField<Real> u;
    NodeField<Real> du;
    std::vector<Real> eta;
    std::vector<Real> unorm_l2;
    std::vector<Real> unorm_sup;
    std::vector<Real> orthogonality;
    double norm_q = 0;
    BoundReport bound;
};

template <typename Real>
void basic_step(FDState<Real>& state);

template <typename Real>
Real lambda_correction(FDState<Real>& state, int d);

template <typename Real>
void rhs(FDState<Real>& state, int d);

template <typename Real>
void u_correction(FDState<Real>& state, int d);

template <typename Real>
void orthogonalize(FDState<Real>& state, int d);

/// eta_d, the L2 norm of (1-x^2) u' + int_{-1}^x (lambda - q) u for the truncated pair through step d.
template <typename Real>
Real residual(FDState<Real>& state, int d);

/// Norms of correction d under both conventions, stored in the state.
template <typename Real>
void correction_norms(FDState<Real>& state, int d);

template <typename Real>
FDSolution<Real> solve(LegendreOrder n, int m, const PotentialSpec<Real>& spec, const Mesh<Real>& mesh,
                       const FDOptions& options = {});

/// As above with potential samples and weighted norm computed once for the mesh.
template <typename Real>
FDSolution<Real> solve(LegendreOrder n, int m, const PotentialSpec<Real>& spec, const Mesh<Real>& mesh,
                       const NodeField<Real>& potential_samples, double norm_q, const FDOptions& options = {});

}  // namespace legendre_fd
