#include "legendre_fd/sinc_quadrature.hpp"

#include "legendre_fd/errors.hpp"
#include "legendre_fd/real.hpp"

#include <string>

namespace legendre_fd {

template <typename Real>
Subinterval<Real>::Subinterval(Real a, Real b, int K, Real h, std::shared_ptr<const DeltaTable<Real>> delta)
    : a_(a), b_(b), K_(K), h_(h), delta_(std::move(delta)) {
    using std::exp;
    if (K < 1) {
        throw ConfigurationError("quadrature half-width K must be >= 1");
    }
    if (!(a < b)) {
        throw ConfigurationError("subinterval needs a < b");
    }
    if (!delta_ || delta_->K() < K) {
        throw ContractViolation("delta table does not cover K");
    }
    const Real width = b - a;
    nodes_.reserve(static_cast<std::size_t>(2 * K + 1));
    weights_.reserve(static_cast<std::size_t>(2 * K + 1));
    for (int i = -K; i <= K; ++i) {
        const Real t = h * i;
        const Real e = exp(t);
        Node<Real> node;
        node.a = a;
        node.b = b;
        // (a + b e^t)/(1 + e^t) split into its two offsets.
        node.from_a = width / (1 + exp(-t));
        node.to_b = width / (1 + e);
        node.x = (i < 0) ? a + node.from_a : b - node.to_b;
        const Real s = exp(-t / 2) + exp(t / 2);
        nodes_.push_back(node);
        weights_.push_back(width / (s * s));
    }
}

template <typename Real>
Mesh<Real>::Mesh(int K, std::vector<Real> breakpoints, DeltaTable<Real> delta)
    : K_(K), breakpoints_(std::move(breakpoints)) {
    using std::sqrt;
    if (K < 1) {
        throw ConfigurationError("quadrature half-width K must be >= 1");
    }
    if (breakpoints_.size() < 2) {
        throw ConfigurationError("mesh needs at least two breakpoints");
    }
    if (breakpoints_.front() != Real(-1) || breakpoints_.back() != Real(1)) {
        throw ConfigurationError("breakpoints must start at -1 and end at 1");
    }
    for (std::size_t k = 1; k < breakpoints_.size(); ++k) {
        if (!(breakpoints_[k - 1] < breakpoints_[k])) {
            throw ConfigurationError("breakpoints must be strictly increasing");
        }
    }
    if (delta.K() < K) {
        throw ConfigurationError("delta table half-width " + std::to_string(delta.K()) + " < K=" + std::to_string(K));
    }
    h_ = sqrt(2 * pi<Real>() / K);
    delta_ = std::make_shared<const DeltaTable<Real>>(delta.K() == K ? std::move(delta) : delta.truncated(K));
    subintervals_.reserve(breakpoints_.size() - 1);
    for (std::size_t k = 1; k < breakpoints_.size(); ++k) {
        subintervals_.emplace_back(breakpoints_[k - 1], breakpoints_[k], K, h_, delta_);
    }
}

template <typename Real>
std::ptrdiff_t Mesh<Real>::subinterval_containing(Real point) const {
    for (std::size_t k = 0; k < subintervals_.size(); ++k) {
        if (subintervals_[k].a() < point && point < subintervals_[k].b()) {
            return static_cast<std::ptrdiff_t>(k);
        }
    }
    return -1;
}

template <typename Real>
Mesh<Real> build_mesh(int K, std::vector<Real> breakpoints) {
    if (K < 1) {
        throw ConfigurationError("quadrature half-width K must be >= 1");
    }
    return Mesh<Real>(K, std::move(breakpoints), build_delta_table<Real>(K));
}

template <typename Real>
Mesh<Real> build_mesh(int K, std::vector<Real> breakpoints, const DeltaTable<Real>& delta) {
    return Mesh<Real>(K, std::move(breakpoints), delta);
}

template <typename Real>
NodeField<Real>::NodeField(std::size_t subintervals, int K, Real fill)
    : subintervals_(subintervals), K_(K), data_(subintervals * static_cast<std::size_t>(2 * K + 1), fill) {}

namespace {

template <typename Real>
void check_factors(const Subinterval<Real>& sub, std::span<const Factor<Real>> factors) {
    for (const auto& f : factors) {
        if (const auto* arr = std::get_if<std::span<const Real>>(&f); arr && arr->size() != sub.size()) {
            throw ContractViolation("factor array has " + std::to_string(arr->size()) + " samples, subinterval has " +
                                    std::to_string(sub.size()));
        }
    }
}

template <typename Real>
Real factor_product(Real p, std::span<const Factor<Real>> factors, const Node<Real>& node, std::size_t idx) {
    for (const auto& f : factors) {
        if (const auto* arr = std::get_if<std::span<const Real>>(&f)) {
            p *= (*arr)[idx];
        } else {
            p *= std::get<NodeFunction<Real>>(f)(node);
        }
    }
    return p;
}

template <typename Real>
std::vector<Factor<Real>> restrict_to(std::span<const MeshFactor<Real>> factors, const Mesh<Real>& mesh,
                                      std::size_t k) {
    std::vector<Factor<Real>> out;
    out.reserve(factors.size());
    for (const auto& f : factors) {
        if (const auto* field = std::get_if<std::reference_wrapper<const NodeField<Real>>>(&f)) {
            if (!field->get().matches(mesh)) {
                throw ContractViolation("node field does not match the mesh");
            }
            out.emplace_back(field->get().on(k));
        } else {
            out.emplace_back(std::get<NodeFunction<Real>>(f));
        }
    }
    return out;
}

}  // namespace

template <typename Real>
Real int_ab(const Subinterval<Real>& sub, std::span<const Factor<Real>> factors) {
    check_factors(sub, factors);
    Real s = 0;
    const int K = sub.K();
    for (int j = -K; j <= K; ++j) {
        const auto idx = static_cast<std::size_t>(j + K);
        s += factor_product(sub.weight(j), factors, sub.node(j), idx);
    }
    return sub.h() * s;
}

template <typename Real>
Real int_az(const Subinterval<Real>& sub, int j, std::span<const Factor<Real>> factors) {
    const int K = sub.K();
    if (j < -K || j > K) {
        throw ContractViolation("node index " + std::to_string(j) + " outside [-K, K]");
    }
    check_factors(sub, factors);
    const auto& delta = sub.delta();
    Real s = 0;
    for (int i = -K; i <= K; ++i) {
        const auto idx = static_cast<std::size_t>(i + K);
        s += factor_product(sub.weight(i) * delta[j - i], factors, sub.node(i), idx);
    }
    return sub.h() * s;
}

template <typename Real>
Real cumulative_int(const Mesh<Real>& mesh, std::size_t k, int j, std::span<const MeshFactor<Real>> factors) {
    if (k >= mesh.size()) {
        throw ContractViolation("subinterval index " + std::to_string(k) + " out of range");
    }
    if (j < -mesh.K() || j > mesh.K()) {
        throw ContractViolation("node index " + std::to_string(j) + " outside [-K, K]");
    }
    // Earlier subintervals contribute Stenger's sum at their last node, so the
    // running integral stays continuous across breakpoints.
    Real total = 0;
    for (std::size_t l = 0; l < k; ++l) {
        const auto local = restrict_to(factors, mesh, l);
        total += int_az(mesh.subinterval(l), mesh.K(), std::span<const Factor<Real>>(local));
    }
    const auto local = restrict_to(factors, mesh, k);
    return total + int_az(mesh.subinterval(k), j, std::span<const Factor<Real>>(local));
}

template <typename Real>
Real integrate(const Mesh<Real>& mesh, const NodeField<Real>& integrand) {
    if (!integrand.matches(mesh)) {
        throw ContractViolation("node field does not match the mesh");
    }
    Real total = 0;
    for (std::size_t k = 0; k < mesh.size(); ++k) {
        const auto& sub = mesh.subinterval(k);
        const auto w = sub.weights();
        const auto f = integrand.on(k);
        Real s = 0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            s += w[i] * f[i];
        }
        total += sub.h() * s;
    }
    return total;
}

template <typename Real>
std::vector<Real> int_az_all(const Subinterval<Real>& sub, std::span<const Real> integrand) {
    if (integrand.size() != sub.size()) {
        throw ContractViolation("integrand samples do not match the subinterval");
    }
    const int K = sub.K();
    const auto& delta = sub.delta();
    const auto w = sub.weights();
    std::vector<Real> out(sub.size());
    for (int j = -K; j <= K; ++j) {
        Real s = 0;
        for (int i = -K; i <= K; ++i) {
            const auto idx = static_cast<std::size_t>(i + K);
            s += w[idx] * delta[j - i] * integrand[idx];
        }
        out[static_cast<std::size_t>(j + K)] = sub.h() * s;
    }
    return out;
}

template <typename Real>
NodeField<Real> cumulative_profile(const Mesh<Real>& mesh, const NodeField<Real>& integrand) {
    if (!integrand.matches(mesh)) {
        throw ContractViolation("node field does not match the mesh");
    }
    NodeField<Real> out(mesh.size(), mesh.K());
    Real prefix = 0;
    for (std::size_t k = 0; k < mesh.size(); ++k) {
        const auto& sub = mesh.subinterval(k);
        const auto partial = int_az_all(sub, integrand.on(k));
        auto dst = out.on(k);
        for (std::size_t i = 0; i < partial.size(); ++i) {
            dst[i] = prefix + partial[i];
        }
        prefix += partial.back();
    }
    return out;
}

#define LEGENDRE_FD_INSTANTIATE(Real)                                                                          \
    template class Subinterval<Real>;                                                                          \
    template class Mesh<Real>;                                                                                 \
    template class NodeField<Real>;                                                                            \
    template Mesh<Real> build_mesh<Real>(int, std::vector<Real>);                                              \
    template Mesh<Real> build_mesh<Real>(int, std::vector<Real>, const DeltaTable<Real>&);                     \
    template Real int_ab<Real>(const Subinterval<Real>&, std::span<const Factor<Real>>);                       \
    template Real int_az<Real>(const Subinterval<Real>&, int, std::span<const Factor<Real>>);                  \
    template Real cumulative_int<Real>(const Mesh<Real>&, std::size_t, int, std::span<const MeshFactor<Real>>); \
    template Real integrate<Real>(const Mesh<Real>&, const NodeField<Real>&);                                  \
    template std::vector<Real> int_az_all<Real>(const Subinterval<Real>&, std::span<const Real>);              \
    template NodeField<Real> cumulative_profile<Real>(const Mesh<Real>&, const NodeField<Real>&);

LEGENDRE_FD_INSTANTIATE(double)
#ifdef LEGENDRE_FD_HAVE_FLOAT128
LEGENDRE_FD_INSTANTIATE(extended)
#endif

}  // namespace legendre_fd
