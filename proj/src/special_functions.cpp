#include "legendre_fd/special_functions.hpp"

#include "legendre_fd/errors.hpp"
#include "legendre_fd/real.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <system_error>

namespace legendre_fd {

LegendreOrder::LegendreOrder(int n, int max_order) : n_(n) {
    if (n < 0 || n > max_order) {
        throw DomainError("Legendre order " + std::to_string(n) + " outside [0, " + std::to_string(max_order) + "]");
    }
}

namespace {

template <typename Real>
void require_open_interval(const LegendreArg<Real>& arg, const char* what) {
    if (!(arg.one_minus_x > 0) || !(arg.one_plus_x > 0)) {
        throw DomainError(std::string(what) + " requires |x| < 1");
    }
}

template <typename Real>
void require_open_interval(Real x, const char* what) {
    using std::abs;
    if (!(abs(x) < 1)) {
        throw DomainError(std::string(what) + " requires |x| < 1");
    }
}

template <typename Real>
Real q0(const LegendreArg<Real>& arg) {
    using std::log;
    return (log(arg.one_plus_x) - log(arg.one_minus_x)) / 2;
}

// P_n and P_n' together; the derivative uses P'_{k+1} = P'_{k-1} + (2k+1) P_k,
// which stays accurate where 1 - x^2 underflows relative to x.
template <typename Real>
void p_family(int n, Real x, Real& p, Real& dp) {
    Real p_prev = 1;
    Real p_cur = x;
    Real dp_prev = 0;
    Real dp_cur = 1;
    if (n == 0) {
        p = 1;
        dp = 0;
        return;
    }
    for (int k = 1; k < n; ++k) {
        const Real p_next = ((2 * k + 1) * x * p_cur - k * p_prev) / (k + 1);
        const Real dp_next = dp_prev + (2 * k + 1) * p_cur;
        p_prev = p_cur;
        p_cur = p_next;
        dp_prev = dp_cur;
        dp_cur = dp_next;
    }
    p = p_cur;
    dp = dp_cur;
}

// Q_n and Q_{n-1}; for n = 0 the second slot is unused.
template <typename Real>
void q_family(int n, const LegendreArg<Real>& arg, Real& q_n, Real& q_n1) {
    const Real x = arg.x;
    Real q_prev = q0(arg);
    if (n == 0) {
        q_n = q_prev;
        q_n1 = 0;
        return;
    }
    Real q_cur = x * q_prev - 1;
    for (int k = 1; k < n; ++k) {
        const Real q_next = ((2 * k + 1) * x * q_cur - k * q_prev) / (k + 1);
        q_prev = q_cur;
        q_cur = q_next;
    }
    q_n = q_cur;
    q_n1 = q_prev;
}

template <typename Real>
Real q_derivative(int n, const LegendreArg<Real>& arg, Real q_n, Real q_n1) {
    const Real w = arg.one_minus_x_squared();
    if (n == 0) {
        return 1 / w;
    }
    return n * (q_n1 - arg.x * q_n) / w;
}

template <typename Real>
struct Complex {
    Real re;
    Real im;

    friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator*(const Real& s, const Complex& b) { return {s * b.re, s * b.im}; }
    friend Complex operator/(const Complex& a, const Complex& b) {
        const Real den = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
    }
};

// Power series; used for |z| <= 2 where the terms decrease from the start.
template <typename Real>
Real sine_integral_series(Real z) {
    using std::abs;
    const Real z2 = z * z;
    Real term = z;  // z^{2k+1} / (2k+1)!
    Real sum = z;
    for (int k = 1; k < 200; ++k) {
        term = -term * z2 / ((2 * k) * (2 * k + 1));
        const Real contrib = term / (2 * k + 1);
        sum += contrib;
        if (abs(contrib) <= epsilon<Real>() * abs(sum)) {
            break;
        }
    }
    return sum;
}

// Continued fraction for E1(i t) evaluated with the modified Lentz method,
// Si(t) = pi/2 + Im[e^{-it} h]. Converges for all t > 2.
template <typename Real>
Real sine_integral_continued_fraction(Real t) {
    using std::abs;
    using std::cos;
    using std::sin;
    const Real tiny = std::numeric_limits<Real>::min() * 1024;
    const Real eps = epsilon<Real>();
    Complex<Real> b{Real(1), t};
    Complex<Real> c{1 / tiny, Real(0)};
    Complex<Real> d = Complex<Real>{Real(1), Real(0)} / b;
    Complex<Real> h = d;
    for (int i = 2; i < 100000; ++i) {
        const Real a = -Real(i - 1) * Real(i - 1);
        b = b + Complex<Real>{Real(2), Real(0)};
        d = Complex<Real>{Real(1), Real(0)} / (a * d + b);
        c = b + Complex<Real>{a, Real(0)} / c;
        const Complex<Real> del = c * d;
        h = h * del;
        if (abs(del.re - 1) + abs(del.im) < eps) {
            break;
        }
    }
    h = Complex<Real>{cos(t), -sin(t)} * h;
    return pi<Real>() / 2 + h.im;
}

}  // namespace

template <typename Real>
Real legendre_p(LegendreOrder order, Real x) {
    using std::abs;
    if (!(abs(x) <= 1)) {
        throw DomainError("legendre_p requires |x| <= 1");
    }
    const int n = order.value();
    if (x == 1) {
        return Real(1);
    }
    if (x == -1) {
        return (n % 2 == 0) ? Real(1) : Real(-1);
    }
    Real p, dp;
    p_family(n, x, p, dp);
    return p;
}

template <typename Real>
Real legendre_q(LegendreOrder order, const LegendreArg<Real>& arg) {
    require_open_interval(arg, "legendre_q");
    Real q_n, q_n1;
    q_family(order.value(), arg, q_n, q_n1);
    return q_n;
}

template <typename Real>
Real legendre_q(LegendreOrder order, Real x) {
    require_open_interval(x, "legendre_q");
    return legendre_q(order, LegendreArg<Real>::from(x));
}

template <typename Real>
QEvaluation<Real> legendre_q_checked(LegendreOrder order, Real x) {
    using std::abs;
    const Real value = legendre_q(order, x);
    return {value, 1 - abs(x) <= 10 * epsilon<Real>()};
}

template <typename Real>
Real legendre_p_deriv(LegendreOrder order, Real x) {
    require_open_interval(x, "legendre_p_deriv");
    Real p, dp;
    p_family(order.value(), x, p, dp);
    return dp;
}

template <typename Real>
Real legendre_q_deriv(LegendreOrder order, const LegendreArg<Real>& arg) {
    require_open_interval(arg, "legendre_q_deriv");
    Real q_n, q_n1;
    q_family(order.value(), arg, q_n, q_n1);
    return q_derivative(order.value(), arg, q_n, q_n1);
}

template <typename Real>
Real legendre_q_deriv(LegendreOrder order, Real x) {
    require_open_interval(x, "legendre_q_deriv");
    return legendre_q_deriv(order, LegendreArg<Real>::from(x));
}

template <typename Real>
LegendrePair<Real> legendre_pair(LegendreOrder order, const LegendreArg<Real>& arg) {
    require_open_interval(arg, "legendre_pair");
    const int n = order.value();
    LegendrePair<Real> out;
    p_family(n, arg.x, out.p, out.dp);
    Real q_n1;
    q_family(n, arg, out.q, q_n1);
    out.dq = q_derivative(n, arg, out.q, q_n1);
    return out;
}

template <typename Real>
Real sine_integral(Real z) {
    using std::abs;
    if (z < 0) {
        return -sine_integral(-z);
    }
    if (z <= 2) {
        return sine_integral_series(z);
    }
    return sine_integral_continued_fraction(z);
}

template <typename Real>
DeltaTable<Real>::DeltaTable(int K, std::vector<Real> values) : K_(K), values_(std::move(values)) {
    if (K < 1) {
        throw ConfigurationError("delta table half-width K must be >= 1");
    }
    if (values_.size() != static_cast<std::size_t>(4 * K + 1)) {
        throw ContractViolation("delta table needs 4K+1 entries");
    }
}

template <typename Real>
const Real& DeltaTable<Real>::at(int i) const {
    if (i < -2 * K_ || i > 2 * K_) {
        throw ContractViolation("delta index " + std::to_string(i) + " outside [-2K, 2K]");
    }
    return (*this)[i];
}

template <typename Real>
DeltaTable<Real> DeltaTable<Real>::truncated(int K) const {
    if (K < 1 || K > K_) {
        throw ContractViolation("cannot truncate delta table to K=" + std::to_string(K));
    }
    const auto first = values_.begin() + 2 * (K_ - K);
    return DeltaTable(K, std::vector<Real>(first, first + 4 * K + 1));
}

template <typename Real>
DeltaTable<Real> build_delta_table(int K) {
    if (K < 1) {
        throw ConfigurationError("delta table half-width K must be >= 1");
    }
    std::vector<Real> values(static_cast<std::size_t>(4 * K + 1));
    const Real half = Real(1) / 2;
    values[static_cast<std::size_t>(2 * K)] = half;
    for (int i = 1; i <= 2 * K; ++i) {
        const Real s = sine_integral(pi<Real>() * i) / pi<Real>();
        values[static_cast<std::size_t>(2 * K + i)] = half + s;
        values[static_cast<std::size_t>(2 * K - i)] = half - s;
    }
    return DeltaTable<Real>(K, std::move(values));
}

void save_delta_table(const DeltaTable<double>& table, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write delta cache " + path.string());
    }
    out << "delta K=" << table.K() << '\n';
    out << std::setprecision(17);
    for (int i = -2 * table.K(); i <= 2 * table.K(); ++i) {
        out << i << ' ' << table[i] << '\n';
    }
}

std::optional<DeltaTable<double>> load_delta_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        return std::nullopt;
    }
    std::string header;
    if (!std::getline(in, header) || header.rfind("delta K=", 0) != 0) {
        return std::nullopt;
    }
    int K = 0;
    try {
        K = std::stoi(header.substr(8));
    } catch (const std::exception&) {
        return std::nullopt;
    }
    if (K < 1) {
        return std::nullopt;
    }
    std::vector<double> values(static_cast<std::size_t>(4 * K + 1));
    for (int expected = -2 * K; expected <= 2 * K; ++expected) {
        int i = 0;
        double v = 0;
        if (!(in >> i >> v) || i != expected) {
            return std::nullopt;
        }
        values[static_cast<std::size_t>(i + 2 * K)] = v;
    }
    return DeltaTable<double>(K, std::move(values));
}

std::filesystem::path default_delta_cache_path() {
    if (const char* env = std::getenv("LEGENDRE_FD_DELTA_CACHE"); env != nullptr && *env != '\0') {
        return env;
    }
    std::error_code ec;
    auto dir = std::filesystem::temp_directory_path(ec);
    if (ec) {
        dir = ".";
    }
    return dir / "legendre_fd_delta.txt";
}

DeltaTable<double> cached_delta_table(int K, const std::filesystem::path& path) {
    if (auto cached = load_delta_table(path); cached && cached->K() >= K) {
        return cached->K() == K ? *cached : cached->truncated(K);
    }
    auto table = build_delta_table<double>(K);
    // Write to a sibling file first so concurrent readers never see a partial table.
    try {
        auto tmp = path;
        tmp += ".tmp" + std::to_string(K);
        save_delta_table(table, tmp);
        std::filesystem::rename(tmp, path);
    } catch (const std::exception&) {
        // Cache is an optimization only.
    }
    return table;
}

#define LEGENDRE_FD_INSTANTIATE(Real)                                                      \
    template Real legendre_p<Real>(LegendreOrder, Real);                                   \
    template Real legendre_q<Real>(LegendreOrder, Real);                                   \
    template Real legendre_q<Real>(LegendreOrder, const LegendreArg<Real>&);               \
    template QEvaluation<Real> legendre_q_checked<Real>(LegendreOrder, Real);              \
    template Real legendre_p_deriv<Real>(LegendreOrder, Real);                             \
    template Real legendre_q_deriv<Real>(LegendreOrder, Real);                             \
    template Real legendre_q_deriv<Real>(LegendreOrder, const LegendreArg<Real>&);         \
    template LegendrePair<Real> legendre_pair<Real>(LegendreOrder, const LegendreArg<Real>&); \
    template Real sine_integral<Real>(Real);                                               \
    template class DeltaTable<Real>;                                                       \
    template DeltaTable<Real> build_delta_table<Real>(int);

LEGENDRE_FD_INSTANTIATE(double)
#ifdef LEGENDRE_FD_HAVE_FLOAT128
LEGENDRE_FD_INSTANTIATE(extended)
#endif

}  // namespace legendre_fd
