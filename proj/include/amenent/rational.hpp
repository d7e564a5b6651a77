#pragma once

#include <gmpxx.h>

#include <string>

#include "amenent/errors.hpp"

namespace amenent {

/// Probabilities are carried exactly; logs are taken in double at the end.
using Rational = mpq_class;

/// Accepts "p/q", integer and decimal literals ("1/2", "3", "0.25").
Rational parse_rational(const std::string& text);

std::string rational_str(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

/// GMP does not canonicalize two-argument constructions on its own.
inline Rational make_rational(long long num, long long den) {
    Rational q(static_cast<long>(num), static_cast<long>(den));
    q.canonicalize();
    return q;
}

} // namespace amenent
