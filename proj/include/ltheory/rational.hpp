#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "ltheory/errors.hpp"

namespace ltheory {

using Rational = mpq_class;

inline Rational rational_from_string(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0) throw DomainViolation("not a rational: '" + s + "'");
    q.canonicalize();
    if (q.get_den() == 0) throw DomainViolation("zero denominator: '" + s + "'");
    return q;
}

inline std::string to_string(const Rational& q) {
    return q.get_str();
}

inline double to_double(const Rational& q) {
    return q.get_d();
}

inline Rational rational_abs(const Rational& q) {
    return q < 0 ? Rational(-q) : q;
}

// Smallest integer >= q, clamped at 0.
inline std::uint64_t ceil_to_u64(const Rational& q) {
    if (q <= 0) return 0;
    mpz_class z;
    mpz_cdiv_q(z.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return static_cast<std::uint64_t>(z.get_ui());
}

}  // namespace ltheory
