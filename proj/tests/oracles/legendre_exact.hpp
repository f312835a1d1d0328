#pragma once

// P_n at a rational point by the three-term recurrence in exact rational arithmetic.

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using rational = boost::multiprecision::cpp_rational;

inline rational legendre_p_exact(int n, const rational& x) {
    rational prev = 1;
    if (n == 0) {
        return prev;
    }
    rational cur = x;
    for (int k = 1; k < n; ++k) {
        rational next = (rational(2 * k + 1) * x * cur - rational(k) * prev) / rational(k + 1);
        prev = cur;
        cur = next;
    }
    return cur;
}

}  // namespace oracle
