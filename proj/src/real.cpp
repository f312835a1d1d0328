#include "legendre_fd/real.hpp"

#include <cctype>
#include <stdexcept>

namespace legendre_fd {

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t");
    return s.substr(first, last - first + 1);
}

template <typename Real>
Real parse_decimal(const std::string& text) {
    const std::string t = trim(text);
    if (t.empty()) {
        throw std::invalid_argument("empty number");
    }
    std::size_t used = 0;
    const double probe = std::stod(t, &used);  // validates syntax for both types
    if (used != t.size()) {
        throw std::invalid_argument("trailing characters in number '" + t + "'");
    }
    if constexpr (std::is_same_v<Real, double>) {
        return probe;
    } else {
        return Real(t);
    }
}

}  // namespace

template <typename Real>
Real parse_real(const std::string& text) {
    const auto slash = text.find('/');
    if (slash == std::string::npos) {
        return parse_decimal<Real>(text);
    }
    const Real num = parse_decimal<Real>(text.substr(0, slash));
    const Real den = parse_decimal<Real>(text.substr(slash + 1));
    if (den == 0) {
        throw std::invalid_argument("zero denominator in '" + text + "'");
    }
    return num / den;
}

template double parse_real<double>(const std::string&);
#ifdef LEGENDRE_FD_HAVE_FLOAT128
template extended parse_real<extended>(const std::string&);
#endif

}  // namespace legendre_fd
