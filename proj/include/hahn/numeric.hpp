#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace hahn {

using Integer = mpz_class;
using Rational = mpq_class;

std::string to_string(const Integer& z);
// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);

// Accepts "p", "-p", "p/q"; throws Error(InvalidArgument) otherwise.
Rational parse_rational(std::string_view text);

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

// Floor division and the matching non-negative remainder for b > 0.
Integer floor_div(const Integer& a, const Integer& b);

// Exact n-th roots; negative radicands only for odd n.
std::optional<Integer> exact_root(const Integer& a, unsigned long n);
std::optional<Rational> exact_root(const Rational& q, unsigned long n);

Rational pow(const Rational& q, long e);

}  // namespace hahn
