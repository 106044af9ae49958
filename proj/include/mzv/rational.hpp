#pragma once

#include <gmpxx.h>
#include <string>

namespace mzv {

// Parses "p", "-p/q" or "p/q" into a canonical rational. Throws
// std::invalid_argument on malformed input or zero denominator.
mpq_class parse_rational(const std::string& text);

// Renders canonically as "p" or "p/q".
std::string rational_to_string(const mpq_class& q);

// q^e for any integer e (e < 0 requires q != 0).
mpq_class rational_pow(const mpq_class& q, long e);

bool is_positive_integer(const mpq_class& q);

// Largest integer <= q.
long rational_floor(const mpq_class& q);

}  // namespace mzv
