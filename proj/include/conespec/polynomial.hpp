#pragma once

#include <complex>
#include <string>
#include <vector>

#include "conespec/rational.hpp"

namespace conespec {

// dense univariate polynomial with exact rational coefficients, c[k] multiplies w^k
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> coeffs);
    static Polynomial constant(const Rational& c);
    static Polynomial monomial(const Rational& c, int k);

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    const Rational& operator[](int k) const { return c_[k]; }
    Rational coeff(int k) const { return k >= 0 && k <= degree() ? c_[k] : Rational(0); }
    const std::vector<Rational>& coeffs() const { return c_; }
    int valuation() const;  // lowest k with nonzero coefficient

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial scaled(const Rational& s) const;
    Polynomial shifted(int k) const;      // * w^k, k may be negative if it divides
    Polynomial substitute_power(int g) const;  // w -> w^g
    Polynomial compress(int g) const;          // inverse of substitute_power
    Polynomial reversed(int deg) const;        // w^deg p(1/w)
    void divmod(const Polynomial& d, Polynomial& q, Polynomial& r) const;

    std::complex<double> operator()(std::complex<double> w) const;
    bool operator==(const Polynomial& o) const { return c_ == o.c_; }

private:
    void trim();
    std::vector<Rational> c_;
};

Polynomial gcd(Polynomial a, Polynomial b);  // monic

}  // namespace conespec
