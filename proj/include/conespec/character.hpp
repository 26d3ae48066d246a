#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "conespec/cohomology.hpp"
#include "conespec/polynomial.hpp"

namespace conespec {

// w^shift * N(w)/D(w) with w = lambda^{1/m}
class Character {
public:
    Character();  // zero
    static Character from_parts(int m, Polynomial num, Polynomial den, int shift);
    static Character constant(const Rational& c);
    static Character monomial(const Rational& c, const Rational& lambda_exponent);
    // c lambda^start / (1 - lambda^step), step != 0
    static Character geometric(const Rational& c, const Rational& start, const Rational& step);

    int root_order() const { return m_; }
    const Polynomial& numerator() const { return num_; }
    const Polynomial& denominator() const { return den_; }
    int shift() const { return shift_; }
    bool is_zero() const { return num_.is_zero(); }

    Character operator+(const Character& o) const;
    Character operator-(const Character& o) const;
    Character operator-() const;
    Character operator*(const Character& o) const;
    Character scaled(const Rational& s) const;
    Character inverted() const;  // lambda -> 1/lambda

    bool operator==(const Character& o) const;

    std::complex<double> evaluate(double s, double theta) const;

    // Laurent coefficients of w^{first + k}, k < terms
    std::pair<int, std::vector<Rational>> series(int terms) const;

    std::string str() const;

private:
    Character lifted(int L) const;
    void normalize();

    int m_ = 1;
    Polynomial num_;
    Polynomial den_ = Polynomial::constant(Rational(1));
    int shift_ = 0;
};

Character local_character(const CohomologyBasis& basis, bool degree_signs = false);
Character chi_y(const Character& todd, const Character& canonical, const Rational& y);
Character sum_and_simplify(const std::vector<Character>& chars);
std::complex<double> evaluate(const Character& ch, double s, double theta);

}  // namespace conespec
