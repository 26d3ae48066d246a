#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace conespec {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

Rational make_rational(std::int64_t num, std::int64_t den = 1);
double to_double(const Rational& q);
std::string to_string(const Rational& q);

std::int64_t num_i64(const Rational& q);
std::int64_t den_i64(const Rational& q);

bool is_integer(const Rational& q);
// floor for rationals, exact
BigInt floor_big(const Rational& q);

Rational rational_abs(const Rational& q);

}  // namespace conespec
