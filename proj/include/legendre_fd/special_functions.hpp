#pragma once

// Legendre functions P_n, Q_n of integer order on (-1, 1), their derivatives,
// the sine integral, and the table of Stenger indefinite-integration weights.

#include <filesystem>
#include <optional>
#include <vector>

namespace legendre_fd {

inline constexpr int kDefaultMaxLegendreOrder = 128;

/// Eigenindex n of the unperturbed problem; the order of P_n and Q_n.
class LegendreOrder {
public:
    explicit LegendreOrder(int n, int max_order = kDefaultMaxLegendreOrder);

    int value() const noexcept { return n_; }

private:
    int n_;
};

/// A point of (-1, 1) together with accurately known distances to both endpoints.
///
/// Tanh-rule nodes crowd the ends of the interval so closely that 1 - x is
/// no longer representable as the difference of two rounded numbers. Q_n and
/// the endpoint weight (1 - x^2) are evaluated from the stored distances.
template <typename Real>
struct LegendreArg {
    Real x;
    Real one_minus_x;
    Real one_plus_x;

    static LegendreArg from(Real x) { return {x, Real(1) - x, Real(1) + x}; }

    Real one_minus_x_squared() const { return one_minus_x * one_plus_x; }
};

/// All four quantities P_n, Q_n, P_n', Q_n' from one pass of the recurrences.
template <typename Real>
struct LegendrePair {
    Real p;
    Real q;
    Real dp;
    Real dq;
};

/// Q_n value plus a flag raised when |x| is within 10 machine epsilons of 1.
template <typename Real>
struct QEvaluation {
    Real value;
    bool precision_loss;
};

template <typename Real>
Real legendre_p(LegendreOrder order, Real x);

template <typename Real>
Real legendre_q(LegendreOrder order, Real x);

template <typename Real>
Real legendre_q(LegendreOrder order, const LegendreArg<Real>& arg);

template <typename Real>
QEvaluation<Real> legendre_q_checked(LegendreOrder order, Real x);

template <typename Real>
Real legendre_p_deriv(LegendreOrder order, Real x);

template <typename Real>
Real legendre_q_deriv(LegendreOrder order, Real x);

template <typename Real>
Real legendre_q_deriv(LegendreOrder order, const LegendreArg<Real>& arg);

template <typename Real>
LegendrePair<Real> legendre_pair(LegendreOrder order, const LegendreArg<Real>& arg);

/// Si(z) = integral of sin(t)/t over (0, z).
template <typename Real>
Real sine_integral(Real z);

/// delta_i = 1/2 + Si(pi i)/pi for i = -2K..2K.
template <typename Real>
class DeltaTable {
public:
    DeltaTable(int K, std::vector<Real> values);

    int K() const noexcept { return K_; }

    /// Entry delta_i for -2K <= i <= 2K (unchecked).
    const Real& operator[](int i) const { return values_[static_cast<std::size_t>(i + 2 * K_)]; }

    const Real& at(int i) const;

    /// The same coefficients restricted to a smaller half-width.
    DeltaTable truncated(int K) const;

    const std::vector<Real>& values() const noexcept { return values_; }

private:
    int K_;
    std::vector<Real> values_;
};

template <typename Real>
DeltaTable<Real> build_delta_table(int K);

/// Writes the table as `delta K=<K>` followed by `<i> <value>` lines, 17 significant digits.
void save_delta_table(const DeltaTable<double>& table, const std::filesystem::path& path);

/// Returns nullopt if the file is missing or malformed.
std::optional<DeltaTable<double>> load_delta_table(const std::filesystem::path& path);

/// Default cache location; LEGENDRE_FD_DELTA_CACHE overrides it.
std::filesystem::path default_delta_cache_path();

/// Loads the cached table, rebuilding and rewriting the cache when it is
/// missing, unreadable, or covers a smaller K than requested.
DeltaTable<double> cached_delta_table(int K, const std::filesystem::path& path);

}  // namespace legendre_fd
