#include "conespec/polynomial.hpp"

#include <numeric>

#include "conespec/errors.hpp"

namespace conespec {

Polynomial::Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

Polynomial Polynomial::constant(const Rational& c) { return Polynomial({c}); }

Polynomial Polynomial::monomial(const Rational& c, int k) {
    std::vector<Rational> v(k + 1, Rational(0));
    v[k] = c;
    return Polynomial(std::move(v));
}

void Polynomial::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

int Polynomial::valuation() const {
    for (int k = 0; k <= degree(); ++k)
        if (c_[k] != 0) return k;
    return 0;
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    std::vector<Rational> v(std::max(c_.size(), o.c_.size()), Rational(0));
    for (std::size_t k = 0; k < c_.size(); ++k) v[k] += c_[k];
    for (std::size_t k = 0; k < o.c_.size(); ++k) v[k] += o.c_[k];
    return Polynomial(std::move(v));
}

Polynomial Polynomial::operator-() const { return scaled(Rational(-1)); }
Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<Rational> v(c_.size() + o.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0)
            for (std::size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
    return Polynomial(std::move(v));
}

Polynomial Polynomial::scaled(const Rational& s) const {
    std::vector<Rational> v = c_;
    for (auto& x : v) x *= s;
    return Polynomial(std::move(v));
}

Polynomial Polynomial::shifted(int k) const {
    if (is_zero()) return {};
    if (k >= 0) {
        std::vector<Rational> v(k, Rational(0));
        v.insert(v.end(), c_.begin(), c_.end());
        return Polynomial(std::move(v));
    }
    if (valuation() < -k) throw NumericError("negative shift does not divide the polynomial");
    return Polynomial(std::vector<Rational>(c_.begin() - k, c_.end()));
}

Polynomial Polynomial::substitute_power(int g) const {
    if (is_zero() || g == 1) return *this;
    std::vector<Rational> v(degree() * g + 1, Rational(0));
    for (int k = 0; k <= degree(); ++k) v[k * g] = c_[k];
    return Polynomial(std::move(v));
}

Polynomial Polynomial::compress(int g) const {
    if (is_zero() || g == 1) return *this;
    std::vector<Rational> v(degree() / g + 1, Rational(0));
    for (int k = 0; k <= degree(); ++k) {
        if (c_[k] == 0) continue;
        if (k % g) throw NumericError("compress: exponent not divisible");
        v[k / g] = c_[k];
    }
    return Polynomial(std::move(v));
}

Polynomial Polynomial::reversed(int deg) const {
    std::vector<Rational> v(deg + 1, Rational(0));
    for (int k = 0; k <= degree(); ++k) v[deg - k] = c_[k];
    return Polynomial(std::move(v));
}

void Polynomial::divmod(const Polynomial& d, Polynomial& q, Polynomial& r) const {
    if (d.is_zero()) throw NumericError("polynomial division by zero");
    std::vector<Rational> rem = c_, quo(std::max(degree() - d.degree() + 1, 0), Rational(0));
    const Rational& lead = d.c_.back();
    for (int k = degree() - d.degree(); k >= 0; --k) {
        Rational f = rem[k + d.degree()] / lead;
        quo[k] = f;
        if (f == 0) continue;
        for (int j = 0; j <= d.degree(); ++j) rem[k + j] -= f * d.c_[j];
    }
    q = Polynomial(std::move(quo));
    r = Polynomial(std::move(rem));
}

std::complex<double> Polynomial::operator()(std::complex<double> w) const {
    std::complex<double> s = 0.0;
    for (int k = degree(); k >= 0; --k) s = s * w + to_double(c_[k]);
    return s;
}

Polynomial gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
        Polynomial q, r;
        a.divmod(b, q, r);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a.scaled(Rational(1) / a[a.degree()]);
}

}  // namespace conespec
