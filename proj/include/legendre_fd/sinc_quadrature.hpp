#pragma once

// Tanh-rule (sinc) quadrature over a subdivided (-1, 1): definite integrals
// and Stenger's indefinite-integration formula on every subinterval.

#include "legendre_fd/special_functions.hpp"

#include <functional>
#include <initializer_list>
#include <memory>
#include <span>
#include <variant>
#include <vector>

namespace legendre_fd {

/// Quadrature node z_i of a subinterval (a, b) with exact offsets to both ends.
template <typename Real>
struct Node {
    Real x;
    Real a;
    Real b;
    Real from_a;  ///< z - a, accurate even where z rounds to a
    Real to_b;    ///< b - z, accurate even where z rounds to b

    /// c - x computed without cancellation against the nearer subinterval end.
    Real offset_from(Real c) const {
        if (c >= b) {
            return (c - b) + to_b;
        }
        if (c <= a) {
            return (c - a) - from_a;
        }
        return c - x;
    }

    LegendreArg<Real> legendre_arg() const { return {x, offset_from(Real(1)), -offset_from(Real(-1))}; }
};

template <typename Real>
using NodeFunction = std::function<Real(const Node<Real>&)>;

/// One factor of an integrand: either samples at the 2K+1 nodes of a
/// subinterval or a function evaluated at each node.
template <typename Real>
using Factor = std::variant<std::span<const Real>, NodeFunction<Real>>;

/// Wraps a plain function of x as a node function.
template <typename Real, typename F>
NodeFunction<Real> of_x(F f) {
    return [f = std::move(f)](const Node<Real>& node) { return static_cast<Real>(f(node.x)); };
}

template <typename Real>
class Subinterval {
public:
    Subinterval(Real a, Real b, int K, Real h, std::shared_ptr<const DeltaTable<Real>> delta);

    Real a() const noexcept { return a_; }
    Real b() const noexcept { return b_; }
    int K() const noexcept { return K_; }
    Real h() const noexcept { return h_; }
    std::size_t size() const noexcept { return nodes_.size(); }

    /// Node z_i, -K <= i <= K.
    const Node<Real>& node(int i) const { return nodes_[static_cast<std::size_t>(i + K_)]; }
    /// Weight mu_i, -K <= i <= K.
    Real weight(int i) const { return weights_[static_cast<std::size_t>(i + K_)]; }

    std::span<const Node<Real>> nodes() const noexcept { return nodes_; }
    std::span<const Real> weights() const noexcept { return weights_; }
    const DeltaTable<Real>& delta() const noexcept { return *delta_; }

private:
    Real a_;
    Real b_;
    int K_;
    Real h_;
    std::vector<Node<Real>> nodes_;
    std::vector<Real> weights_;
    std::shared_ptr<const DeltaTable<Real>> delta_;
};

template <typename Real>
class Mesh {
public:
    Mesh(int K, std::vector<Real> breakpoints, DeltaTable<Real> delta);

    int K() const noexcept { return K_; }
    Real h() const noexcept { return h_; }
    /// Number of subintervals N.
    std::size_t size() const noexcept { return subintervals_.size(); }
    std::size_t nodes_per_subinterval() const noexcept { return static_cast<std::size_t>(2 * K_ + 1); }
    std::size_t total_nodes() const noexcept { return size() * nodes_per_subinterval(); }

    const std::vector<Real>& breakpoints() const noexcept { return breakpoints_; }
    const Subinterval<Real>& subinterval(std::size_t k) const { return subintervals_.at(k); }
    std::span<const Subinterval<Real>> subintervals() const noexcept { return subintervals_; }
    const DeltaTable<Real>& delta() const noexcept { return *delta_; }

    /// Index of the subinterval whose open interior contains the point, if any.
    std::ptrdiff_t subinterval_containing(Real point) const;

private:
    int K_;
    Real h_;
    std::vector<Real> breakpoints_;
    std::shared_ptr<const DeltaTable<Real>> delta_;
    std::vector<Subinterval<Real>> subintervals_;
};

/// Breakpoints must run strictly upwards from -1 to 1. Builds its own delta table.
template <typename Real>
Mesh<Real> build_mesh(int K, std::vector<Real> breakpoints);

/// As above with a caller-supplied delta table (half-width >= K).
template <typename Real>
Mesh<Real> build_mesh(int K, std::vector<Real> breakpoints, const DeltaTable<Real>& delta);

/// Values attached to every node of a mesh, stored subinterval by subinterval.
template <typename Real>
class NodeField {
public:
    NodeField() = default;
    NodeField(std::size_t subintervals, int K, Real fill = Real(0));

    template <typename F>
    static NodeField sample(const Mesh<Real>& mesh, F&& f) {
        NodeField out(mesh.size(), mesh.K());
        for (std::size_t k = 0; k < mesh.size(); ++k) {
            const auto& sub = mesh.subinterval(k);
            for (int i = -mesh.K(); i <= mesh.K(); ++i) {
                out(k, i) = f(sub.node(i));
            }
        }
        return out;
    }

    int K() const noexcept { return K_; }
    std::size_t subintervals() const noexcept { return subintervals_; }
    std::size_t size() const noexcept { return data_.size(); }

    Real& operator()(std::size_t k, int i) { return data_[k * stride() + static_cast<std::size_t>(i + K_)]; }
    const Real& operator()(std::size_t k, int i) const {
        return data_[k * stride() + static_cast<std::size_t>(i + K_)];
    }

    std::span<Real> on(std::size_t k) { return {data_.data() + k * stride(), stride()}; }
    std::span<const Real> on(std::size_t k) const { return {data_.data() + k * stride(), stride()}; }

    std::vector<Real>& flat() noexcept { return data_; }
    const std::vector<Real>& flat() const noexcept { return data_; }

    bool matches(const Mesh<Real>& mesh) const noexcept {
        return K_ == mesh.K() && subintervals_ == mesh.size();
    }

private:
    std::size_t stride() const noexcept { return static_cast<std::size_t>(2 * K_ + 1); }

    std::size_t subintervals_ = 0;
    int K_ = 0;
    std::vector<Real> data_;
};

/// A factor spanning the whole mesh, for cumulative integrals across subintervals.
template <typename Real>
using MeshFactor = std::variant<std::reference_wrapper<const NodeField<Real>>, NodeFunction<Real>>;

/// h * sum_i mu_i * prod factors(z_i): the tanh-rule value of the integral over (a, b).
template <typename Real>
Real int_ab(const Subinterval<Real>& sub, std::span<const Factor<Real>> factors);

template <typename Real>
Real int_ab(const Subinterval<Real>& sub, std::initializer_list<Factor<Real>> factors) {
    return int_ab(sub, std::span<const Factor<Real>>(factors.begin(), factors.size()));
}

/// h * sum_i delta_{j-i} mu_i * prod factors(z_i): Stenger's value of the integral over (a, z_j).
template <typename Real>
Real int_az(const Subinterval<Real>& sub, int j, std::span<const Factor<Real>> factors);

template <typename Real>
Real int_az(const Subinterval<Real>& sub, int j, std::initializer_list<Factor<Real>> factors) {
    return int_az(sub, j, std::span<const Factor<Real>>(factors.begin(), factors.size()));
}

/// Integral from -1 to node z_{k,j}: Stenger sums at the last node of every subinterval before k,
/// plus a Stenger partial integral in k.
template <typename Real>
Real cumulative_int(const Mesh<Real>& mesh, std::size_t k, int j, std::span<const MeshFactor<Real>> factors);

template <typename Real>
Real cumulative_int(const Mesh<Real>& mesh, std::size_t k, int j, std::initializer_list<MeshFactor<Real>> factors) {
    return cumulative_int(mesh, k, j, std::span<const MeshFactor<Real>>(factors.begin(), factors.size()));
}

// Bulk forms over node samples. Summation order matches the single-node forms,
// so results are bit-identical to int_ab / int_az / cumulative_int.

/// Sum over subintervals of int_ab of one sampled integrand.
template <typename Real>
Real integrate(const Mesh<Real>& mesh, const NodeField<Real>& integrand);

/// int_az of one sampled integrand at every j of the subinterval.
template <typename Real>
std::vector<Real> int_az_all(const Subinterval<Real>& sub, std::span<const Real> integrand);

/// cumulative_int of one sampled integrand at every node of the mesh.
template <typename Real>
NodeField<Real> cumulative_profile(const Mesh<Real>& mesh, const NodeField<Real>& integrand);

}  // namespace legendre_fd
