#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace pcoh {

/// Exact rational backed by GMP. mpq_class keeps values canonical
/// (reduced, positive denominator) after every arithmetic operation.
using Rational = mpq_class;
using Integer = mpz_class;

/// Dense coordinate vector over the rationals.
using Vector = std::vector<Rational>;

/// Parses "p/q" or "p". Throws StructureError on malformed text, a zero
/// denominator, or a fraction that is not in lowest terms.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& value);

bool is_zero(const Vector& v);
Vector zero_vector(std::size_t n);

/// v += c * w
void axpy(Vector& v, const Rational& c, const Vector& w);

}  // namespace pcoh
