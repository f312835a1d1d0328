#include "legendre_fd/fd_core.hpp"

#include "legendre_fd/errors.hpp"
#include "legendre_fd/real.hpp"

#include <cmath>
#include <string>

namespace legendre_fd {

namespace {

template <typename Real>
NodeField<Real> blank(const Mesh<Real>& mesh) {
    return NodeField<Real>(mesh.size(), mesh.K());
}

template <typename Real, typename F>
NodeField<Real> combine(const Mesh<Real>& mesh, F&& f) {
    NodeField<Real> out = blank(mesh);
    auto& dst = out.flat();
    for (std::size_t i = 0; i < dst.size(); ++i) {
        dst[i] = f(i);
    }
    return out;
}

template <typename Real>
void require_step(const FDState<Real>& state, int d, int lowest) {
    if (d < lowest || d > state.m) {
        throw ContractViolation("step " + std::to_string(d) + " outside [" + std::to_string(lowest) + ", " +
                                std::to_string(state.m) + "]");
    }
}

template <typename Real>
void require_finite(const FDState<Real>& state, int d, const NodeField<Real>& field, const char* what) {
    using std::isfinite;
    for (const Real& v : field.flat()) {
        if (!isfinite(static_cast<double>(v))) {
            throw NumericalError(state.n.value(), d, std::string("non-finite ") + what);
        }
    }
}

}  // namespace

template <typename Real>
FDState<Real>::FDState(LegendreOrder order, int steps, const Mesh<Real>& mesh_, const PotentialSpec<Real>& spec_)
    : FDState(order, steps, mesh_, spec_, sample_potential(spec_, mesh_)) {}

template <typename Real>
FDState<Real>::FDState(LegendreOrder order, int steps, const Mesh<Real>& mesh_, const PotentialSpec<Real>& spec_,
                       NodeField<Real> potential_samples)
    : n(order), m(steps), mesh(mesh_), spec(spec_), a_inv_sq(Real(2 * order.value() + 1) / 2) {
    using std::sqrt;
    if (steps < 0) {
        throw ConfigurationError("step budget m must be >= 0");
    }
    if (!potential_samples.matches(mesh)) {
        throw ContractViolation("potential samples do not match the mesh");
    }
    potential = std::move(potential_samples);
    p = blank(mesh);
    q_second = blank(mesh);
    dp = blank(mesh);
    dq = blank(mesh);
    weight = blank(mesh);
    weight_quarter = blank(mesh);
    for (std::size_t k = 0; k < mesh.size(); ++k) {
        const auto& sub = mesh.subinterval(k);
        for (int i = -mesh.K(); i <= mesh.K(); ++i) {
            const auto arg = sub.node(i).legendre_arg();
            const auto pair = legendre_pair(order, arg);
            p(k, i) = pair.p;
            q_second(k, i) = pair.q;
            dp(k, i) = pair.dp;
            dq(k, i) = pair.dq;
            weight(k, i) = arg.one_minus_x_squared();
            weight_quarter(k, i) = sqrt(sqrt(weight(k, i)));
        }
    }
    const auto slots = static_cast<std::size_t>(steps) + 1;
    L.assign(slots, Real(0));
    U.assign(slots, blank(mesh));
    DU.assign(slots, blank(mesh));
    F.assign(slots, blank(mesh));
    eta.assign(slots, Real(0));
    unorm_l2.assign(slots, Real(0));
    unorm_sup.assign(slots, Real(0));
    orthogonality.assign(slots, Real(0));
}

template <typename Real>
void basic_step(FDState<Real>& state) {
    const int n = state.n.value();
    state.L[0] = Real(n) * Real(n + 1);
    state.U[0] = state.p;
    state.DU[0] = state.dp;
    state.orthogonality[0] = Real(0);
}

template <typename Real>
Real lambda_correction(FDState<Real>& state, int d) {
    require_step(state, d, 1);
    const auto& u0 = state.U[0].flat();
    const auto& prev = state.U[static_cast<std::size_t>(d - 1)].flat();
    const auto& q = state.potential.flat();
    const auto integrand = combine(state.mesh, [&](std::size_t i) { return u0[i] * prev[i] * q[i]; });
    const Real value = state.a_inv_sq * integrate(state.mesh, integrand);
    state.L[static_cast<std::size_t>(d)] = value;
    return value;
}

template <typename Real>
void rhs(FDState<Real>& state, int d) {
    require_step(state, d, 1);
    const auto& q = state.potential.flat();
    const auto& prev = state.U[static_cast<std::size_t>(d - 1)].flat();
    auto& f = state.F[static_cast<std::size_t>(d)].flat();
    for (std::size_t i = 0; i < f.size(); ++i) {
        f[i] = prev[i] * q[i];
    }
    for (int j = 0; j <= d - 1; ++j) {
        const Real lam = state.L[static_cast<std::size_t>(d - j)];
        const auto& uj = state.U[static_cast<std::size_t>(j)].flat();
        for (std::size_t i = 0; i < f.size(); ++i) {
            f[i] -= lam * uj[i];
        }
    }
}

template <typename Real>
void u_correction(FDState<Real>& state, int d) {
    require_step(state, d, 1);
    const auto& f = state.F[static_cast<std::size_t>(d)].flat();
    const auto& p = state.p.flat();
    const auto& q = state.q_second.flat();
    const auto fp = combine(state.mesh, [&](std::size_t i) { return f[i] * p[i]; });
    const auto fq = combine(state.mesh, [&](std::size_t i) { return f[i] * q[i]; });
    const auto int_fp = cumulative_profile(state.mesh, fp);
    const auto int_fq = cumulative_profile(state.mesh, fq);
    const auto& ip = int_fp.flat();
    const auto& iq = int_fq.flat();
    const auto& dp = state.dp.flat();
    const auto& dq = state.dq.flat();
    auto& u = state.U[static_cast<std::size_t>(d)].flat();
    auto& du = state.DU[static_cast<std::size_t>(d)].flat();
    for (std::size_t i = 0; i < u.size(); ++i) {
        u[i] = q[i] * ip[i] - p[i] * iq[i];
        du[i] = dq[i] * ip[i] - dp[i] * iq[i];
    }
}

template <typename Real>
void orthogonalize(FDState<Real>& state, int d) {
    require_step(state, d, 1);
    const auto& u0 = state.U[0].flat();
    const auto& du0 = state.DU[0].flat();
    auto& u = state.U[static_cast<std::size_t>(d)].flat();
    auto& du = state.DU[static_cast<std::size_t>(d)].flat();
    const auto projection = [&] {
        const auto prod = combine(state.mesh, [&](std::size_t i) { return u[i] * u0[i]; });
        return state.a_inv_sq * integrate(state.mesh, prod);
    };
    const Real c = projection();
    for (std::size_t i = 0; i < u.size(); ++i) {
        u[i] -= c * u0[i];
        du[i] -= c * du0[i];
    }
    state.orthogonality[static_cast<std::size_t>(d)] = projection();
}

template <typename Real>
Real residual(FDState<Real>& state, int d) {
    using std::sqrt;
    require_step(state, d, 0);
    const auto& mesh = state.mesh;
    NodeField<Real> u = blank(mesh);
    NodeField<Real> du = blank(mesh);
    Real lambda = 0;
    for (int j = 0; j <= d; ++j) {
        const auto& uj = state.U[static_cast<std::size_t>(j)].flat();
        const auto& duj = state.DU[static_cast<std::size_t>(j)].flat();
        for (std::size_t i = 0; i < uj.size(); ++i) {
            u.flat()[i] += uj[i];
            du.flat()[i] += duj[i];
        }
        lambda += state.L[static_cast<std::size_t>(j)];
    }
    const auto& q = state.potential.flat();
    const auto source = combine(mesh, [&](std::size_t i) { return (lambda - q[i]) * u.flat()[i]; });
    const auto integral = cumulative_profile(mesh, source);
    const auto& w = state.weight.flat();
    const auto defect_sq = combine(mesh, [&](std::size_t i) {
        const Real g = w[i] * du.flat()[i] + integral.flat()[i];
        return g * g;
    });
    const Real value = sqrt(integrate(mesh, defect_sq));
    state.eta[static_cast<std::size_t>(d)] = value;
    return value;
}

template <typename Real>
void correction_norms(FDState<Real>& state, int d) {
    using std::abs;
    using std::sqrt;
    require_step(state, d, 0);
    const auto& u = state.U[static_cast<std::size_t>(d)].flat();
    const auto& wq = state.weight_quarter.flat();
    const auto sq = combine(state.mesh, [&](std::size_t i) { return u[i] * u[i]; });
    state.unorm_l2[static_cast<std::size_t>(d)] = sqrt(integrate(state.mesh, sq));
    Real sup = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const Real v = abs(wq[i] * u[i]);
        if (v > sup) {
            sup = v;
        }
    }
    state.unorm_sup[static_cast<std::size_t>(d)] = sup;
}

namespace {

template <typename Real>
FDSolution<Real> run_steps(FDState<Real>& state, double norm_q) {
    using std::isfinite;
    const int n = state.n.value();
    basic_step(state);
    correction_norms(state, 0);
    residual(state, 0);
    for (int d = 1; d <= state.m; ++d) {
        const Real lam = lambda_correction(state, d);
        if (!isfinite(static_cast<double>(lam))) {
            throw NumericalError(n, d, "non-finite eigenvalue correction");
        }
        rhs(state, d);
        u_correction(state, d);
        require_finite(state, d, state.U[static_cast<std::size_t>(d)], "eigenfunction correction");
        orthogonalize(state, d);
        correction_norms(state, d);
        const Real eta = residual(state, d);
        if (!isfinite(static_cast<double>(eta))) {
            throw NumericalError(n, d, "non-finite residual");
        }
    }

    FDSolution<Real> out;
    out.n = n;
    out.m = state.m;
    out.lambda_steps = state.L;
    out.lambda_partial.reserve(state.L.size());
    Real sum = 0;
    for (const Real& l : state.L) {
        sum += l;
        out.lambda_partial.push_back(sum);
    }
    out.lambda = sum;
    out.u = blank(state.mesh);
    out.du = blank(state.mesh);
    for (int j = 0; j <= state.m; ++j) {
        const auto& uj = state.U[static_cast<std::size_t>(j)].flat();
        const auto& duj = state.DU[static_cast<std::size_t>(j)].flat();
        for (std::size_t i = 0; i < uj.size(); ++i) {
            out.u.flat()[i] += uj[i];
            out.du.flat()[i] += duj[i];
        }
    }
    out.eta = state.eta;
    out.unorm_l2 = state.unorm_l2;
    out.unorm_sup = state.unorm_sup;
    out.orthogonality = state.orthogonality;
    out.norm_q = norm_q;
    out.bound = apriori_bounds(n, state.m, norm_q);
    return out;
}

}  // namespace

template <typename Real>
FDSolution<Real> solve(LegendreOrder n, int m, const PotentialSpec<Real>& spec, const Mesh<Real>& mesh,
                       const NodeField<Real>& potential_samples, double norm_q, const FDOptions& options) {
    check_singularities(spec, mesh, options.allow_interior_singularities);
    FDState<Real> state(n, m, mesh, spec, potential_samples);
    return run_steps(state, norm_q);
}

template <typename Real>
FDSolution<Real> solve(LegendreOrder n, int m, const PotentialSpec<Real>& spec, const Mesh<Real>& mesh,
                       const FDOptions& options) {
    const double norm_q =
        static_cast<double>(weighted_l1_norm(spec, mesh, options.allow_interior_singularities));
    return solve(n, m, spec, mesh, sample_potential(spec, mesh), norm_q, options);
}

#define LEGENDRE_FD_INSTANTIATE(Real)                                                                             \
    template struct FDState<Real>;                                                                                \
    template void basic_step<Real>(FDState<Real>&);                                                               \
    template Real lambda_correction<Real>(FDState<Real>&, int);                                                   \
    template void rhs<Real>(FDState<Real>&, int);                                                                 \
    template void u_correction<Real>(FDState<Real>&, int);                                                        \
    template void orthogonalize<Real>(FDState<Real>&, int);                                                       \
    template Real residual<Real>(FDState<Real>&, int);                                                            \
    template void correction_norms<Real>(FDState<Real>&, int);                                                    \
    template FDSolution<Real> solve<Real>(LegendreOrder, int, const PotentialSpec<Real>&, const Mesh<Real>&,      \
                                          const FDOptions&);                                                      \
    template FDSolution<Real> solve<Real>(LegendreOrder, int, const PotentialSpec<Real>&, const Mesh<Real>&,      \
                                          const NodeField<Real>&, double, const FDOptions&);

LEGENDRE_FD_INSTANTIATE(double)
#ifdef LEGENDRE_FD_HAVE_FLOAT128
LEGENDRE_FD_INSTANTIATE(extended)
#endif

}  // namespace legendre_fd
