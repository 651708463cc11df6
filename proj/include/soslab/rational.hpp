#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace soslab {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& q) { return q.template convert_to<double>(); }

inline Int numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Int denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

/// q^e for e >= 0 by binary exponentiation.
inline Rational rational_pow(Rational q, int e) {
    Rational result(1);
    while (e > 0) {
        if (e & 1) result *= q;
        q *= q;
        e >>= 1;
    }
    return result;
}

inline std::string rational_str(const Rational& q) { return q.str(); }

}  // namespace soslab
