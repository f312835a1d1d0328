#include "legendre_fd/potential.hpp"

#include "legendre_fd/errors.hpp"
#include "legendre_fd/real.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace legendre_fd {

template <typename Real>
PotentialSpec<Real>::PotentialSpec(PotentialKind kind, std::vector<Real> params, std::vector<Real> singularities)
    : kind_(kind), params_(std::move(params)), singularities_(std::move(singularities)) {
    for (const Real& s : singularities_) {
        if (!(s > -1 && s < 1)) {
            throw ConfigurationError("potential singularities must lie strictly inside (-1, 1)");
        }
    }
    std::sort(singularities_.begin(), singularities_.end());
    singularities_.erase(std::unique(singularities_.begin(), singularities_.end()), singularities_.end());
}

template <typename Real>
PotentialSpec<Real> PotentialSpec<Real>::zero() {
    return PotentialSpec(PotentialKind::zero, {}, {});
}

template <typename Real>
PotentialSpec<Real> PotentialSpec<Real>::constant(Real c) {
    return PotentialSpec(PotentialKind::constant, {c}, {});
}

template <typename Real>
PotentialSpec<Real> PotentialSpec<Real>::polynomial(std::vector<Real> coeffs) {
    if (coeffs.empty()) {
        throw ConfigurationError("polynomial potential needs at least one coefficient");
    }
    return PotentialSpec(PotentialKind::polynomial, std::move(coeffs), {});
}

template <typename Real>
PotentialSpec<Real> PotentialSpec<Real>::log_product(Real r, Real s) {
    std::vector<Real> sing;
    for (const Real& p : {r, -s}) {
        if (p > -1 && p < 1) {
            sing.push_back(p);
        }
    }
    PotentialSpec spec(PotentialKind::log_product, {r, s}, std::move(sing));
    spec.check_norm_finite();
    return spec;
}

template <typename Real>
PotentialSpec<Real> PotentialSpec<Real>::custom(std::function<Real(Real)> fn, std::vector<Real> singularities,
                                                std::string name) {
    if (!fn) {
        throw ConfigurationError("custom potential needs a callable");
    }
    PotentialSpec spec(PotentialKind::custom, {}, std::move(singularities));
    spec.custom_ = std::move(fn);
    spec.name_ = std::move(name);
    spec.check_norm_finite();
    return spec;
}

template <typename Real>
void PotentialSpec<Real>::check_norm_finite() const {
    using std::isfinite;
    std::vector<Real> breakpoints{Real(-1)};
    breakpoints.insert(breakpoints.end(), singularities_.begin(), singularities_.end());
    breakpoints.push_back(Real(1));
    const auto mesh = build_mesh<Real>(32, breakpoints);
    const Real norm = weighted_l1_norm(*this, mesh);
    if (!isfinite(static_cast<double>(norm))) {
        throw ConfigurationError("potential " + describe() + " has no finite weighted norm");
    }
}

template <typename Real>
std::string PotentialSpec<Real>::describe() const {
    std::ostringstream out;
    out.precision(17);
    switch (kind_) {
        case PotentialKind::zero:
            out << "zero";
            break;
        case PotentialKind::constant:
            out << "constant:" << static_cast<double>(params_[0]);
            break;
        case PotentialKind::polynomial:
            out << "polynomial:";
            for (std::size_t k = 0; k < params_.size(); ++k) {
                out << (k ? "," : "") << static_cast<double>(params_[k]);
            }
            break;
        case PotentialKind::log_product:
            out << "log_product:" << static_cast<double>(params_[0]) << ',' << static_cast<double>(params_[1]);
            break;
        case PotentialKind::custom:
            out << name_;
            break;
    }
    return out.str();
}

namespace {

template <typename Real>
Real log_abs_nonzero(Real v) {
    using std::abs;
    using std::log;
    if (v == 0) {
        throw DomainError("potential evaluated at its singularity");
    }
    return log(abs(v));
}

}  // namespace

template <typename Real>
Real PotentialSpec<Real>::operator()(Real x) const {
    switch (kind_) {
        case PotentialKind::zero:
            return Real(0);
        case PotentialKind::constant:
            return params_[0];
        case PotentialKind::polynomial: {
            Real acc = 0;
            for (auto it = params_.rbegin(); it != params_.rend(); ++it) {
                acc = acc * x + *it;
            }
            return acc;
        }
        case PotentialKind::log_product:
            return log_abs_nonzero(params_[0] - x) + log_abs_nonzero(params_[1] + x);
        case PotentialKind::custom:
            if (std::find(singularities_.begin(), singularities_.end(), x) != singularities_.end()) {
                throw DomainError("potential evaluated at its singularity");
            }
            return custom_(x);
    }
    return Real(0);
}

template <typename Real>
Real PotentialSpec<Real>::operator()(const Node<Real>& node) const {
    if (kind_ == PotentialKind::log_product) {
        return log_abs_nonzero(node.offset_from(params_[0])) + log_abs_nonzero(node.offset_from(-params_[1]));
    }
    return (*this)(node.x);
}

template <typename Real>
void check_singularities(const PotentialSpec<Real>& spec, const Mesh<Real>& mesh, bool allow_interior) {
    if (allow_interior) {
        return;
    }
    for (const Real& s : spec.singularities()) {
        if (const auto k = mesh.subinterval_containing(s); k >= 0) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "potential singularity at x=" << static_cast<double>(s) << " lies inside subinterval " << k
                << "; add it to the breakpoints or pass --allow-interior-singularities";
            throw ConfigurationError(msg.str());
        }
    }
}

template <typename Real>
NodeField<Real> sample_potential(const PotentialSpec<Real>& spec, const Mesh<Real>& mesh) {
    return NodeField<Real>::sample(mesh, [&spec](const Node<Real>& node) { return spec(node); });
}

template <typename Real>
Real weighted_l1_norm(const PotentialSpec<Real>& spec, const Mesh<Real>& mesh, bool allow_interior) {
    using std::abs;
    using std::sqrt;
    check_singularities(spec, mesh, allow_interior);
    if (spec.kind() == PotentialKind::zero) {
        return Real(0);
    }
    const auto integrand = NodeField<Real>::sample(mesh, [&spec](const Node<Real>& node) {
        return abs(spec(node)) / sqrt(node.legendre_arg().one_minus_x_squared());
    });
    return integrate(mesh, integrand);
}

double ConvergenceThreshold::gamma() {
    return 3.0 - 2.0 * std::sqrt(2.0);
}

double ConvergenceThreshold::alpha(int n) const {
    if (n < 1) {
        throw DomainError("rate factor alpha~_n is defined for n >= 1");
    }
    return 3.0 * std::sqrt(2.0) * pi<double>() * norm / n;
}

ConvergenceThreshold convergence_threshold(double norm) {
    if (!(norm >= 0)) {
        throw DomainError("weighted norm must be non-negative");
    }
    const double scaled = 3.0 * std::sqrt(2.0) * pi<double>() / ConvergenceThreshold::gamma() * norm;
    return {norm, static_cast<long long>(std::floor(scaled)) + 1};
}

#define LEGENDRE_FD_INSTANTIATE(Real)                                                                   \
    template class PotentialSpec<Real>;                                                                 \
    template void check_singularities<Real>(const PotentialSpec<Real>&, const Mesh<Real>&, bool);       \
    template NodeField<Real> sample_potential<Real>(const PotentialSpec<Real>&, const Mesh<Real>&);     \
    template Real weighted_l1_norm<Real>(const PotentialSpec<Real>&, const Mesh<Real>&, bool);

LEGENDRE_FD_INSTANTIATE(double)
#ifdef LEGENDRE_FD_HAVE_FLOAT128
LEGENDRE_FD_INSTANTIATE(extended)
#endif

}  // namespace legendre_fd
