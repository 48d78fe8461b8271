#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace orehom {

// Exact rational scalar. GMP keeps the canonical form (gcd 1, positive
// denominator) for all arithmetic results; only string construction needs an
// explicit canonicalize.
using Rat = mpq_class;

inline Rat rat_from_string(const std::string& text) {
    Rat r;
    if (r.set_str(text, 10) != 0)
        throw std::invalid_argument("invalid rational literal: '" + text + "'");
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator in rational literal: '" + text + "'");
    r.canonicalize();
    return r;
}

inline std::string rat_to_string(const Rat& r) { return r.get_str(); }

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

// a^n for integer n; n < 0 requires a != 0.
inline Rat rat_pow(const Rat& a, long n) {
    if (n < 0) {
        if (a == 0) throw std::invalid_argument("rat_pow: negative power of zero");
        return Rat(1) / rat_pow(a, -n);
    }
    Rat acc(1), base(a);
    while (n > 0) {
        if (n & 1) acc *= base;
        base *= base;
        n >>= 1;
    }
    return acc;
}

}  // namespace orehom
