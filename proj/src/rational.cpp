#include "conespec/rational.hpp"

#include <limits>

#include "conespec/errors.hpp"

namespace conespec {

Rational make_rational(std::int64_t num, std::int64_t den) {
    if (den == 0) throw ModelError("rational with zero denominator");
    return Rational(BigInt(num), BigInt(den));
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

std::string to_string(const Rational& q) {
    if (denominator(q) == 1) return numerator(q).str();
    return numerator(q).str() + "/" + denominator(q).str();
}

static std::int64_t narrow(const BigInt& v) {
    if (v > BigInt(std::numeric_limits<std::int64_t>::max()) ||
        v < BigInt(std::numeric_limits<std::int64_t>::min()))
        throw NumericError("rational component does not fit in 64 bits");
    return v.convert_to<std::int64_t>();
}

std::int64_t num_i64(const Rational& q) { return narrow(numerator(q)); }
std::int64_t den_i64(const Rational& q) { return narrow(denominator(q)); }

bool is_integer(const Rational& q) { return denominator(q) == 1; }

BigInt floor_big(const Rational& q) {
    BigInt n = numerator(q), d = denominator(q);
    BigInt f = n / d;
    if (n < 0 && f * d != n) f -= 1;
    return f;
}

Rational rational_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

}  // namespace conespec
