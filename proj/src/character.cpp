#include "conespec/character.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "conespec/errors.hpp"

namespace conespec {

namespace {

int small_int(const BigInt& v) {
    if (v > 1000000 || v < -1000000) throw NumericError("character exponent too large");
    return v.convert_to<int>();
}

int lcm_int(int a, int b) { return a / std::gcd(a, b) * b; }

// lambda^q as (m, k) with w = lambda^{1/m}
std::pair<int, int> as_root_power(const Rational& q) {
    int m = small_int(denominator(q));
    int k = small_int(numerator(q));
    return {m, k};
}

}  // namespace

Character::Character() = default;

Character Character::from_parts(int m, Polynomial num, Polynomial den, int shift) {
    if (m < 1) throw NumericError("root order must be positive");
    if (den.is_zero()) throw NumericError("character with zero denominator");
    Character c;
    c.m_ = m;
    c.num_ = std::move(num);
    c.den_ = std::move(den);
    c.shift_ = shift;
    c.normalize();
    return c;
}

Character Character::constant(const Rational& c) {
    return from_parts(1, Polynomial::constant(c), Polynomial::constant(Rational(1)), 0);
}

Character Character::monomial(const Rational& c, const Rational& lambda_exponent) {
    auto [m, k] = as_root_power(lambda_exponent);
    return from_parts(m, Polynomial::constant(c), Polynomial::constant(Rational(1)), k);
}

Character Character::geometric(const Rational& c, const Rational& start, const Rational& step) {
    if (step == 0) throw NumericError("geometric tail needs a nonzero step");
    auto [m1, k1] = as_root_power(start);
    auto [m2, k2] = as_root_power(step);
    int m = lcm_int(m1, m2);
    int a = k1 * (m / m1), s = k2 * (m / m2);
    if (s > 0) {
        Polynomial den = Polynomial::constant(Rational(1)) - Polynomial::monomial(Rational(1), s);
        return from_parts(m, Polynomial::constant(c), den, a);
    }
    // lambda^a/(1 - lambda^{-|s|}) = -lambda^{a+|s|}/(1 - lambda^{|s|})
    Polynomial den = Polynomial::constant(Rational(1)) - Polynomial::monomial(Rational(1), -s);
    return from_parts(m, Polynomial::constant(-c), den, a - s);
}

void Character::normalize() {
    if (num_.is_zero()) {
        m_ = 1;
        den_ = Polynomial::constant(Rational(1));
        shift_ = 0;
        return;
    }
    int vn = num_.valuation(), vd = den_.valuation();
    num_ = num_.shifted(-vn);
    den_ = den_.shifted(-vd);
    shift_ += vn - vd;
    Polynomial g = gcd(num_, den_);
    if (g.degree() > 0) {
        Polynomial q, r;
        num_.divmod(g, q, r);
        num_ = q;
        den_.divmod(g, q, r);
        den_ = q;
    }
    Rational c = den_[0];
    num_ = num_.scaled(Rational(1) / c);
    den_ = den_.scaled(Rational(1) / c);
    int G = m_;
    G = std::gcd(G, shift_);
    for (int k = 0; k <= num_.degree(); ++k)
        if (num_[k] != 0) G = std::gcd(G, k);
    for (int k = 0; k <= den_.degree(); ++k)
        if (den_[k] != 0) G = std::gcd(G, k);
    if (G > 1) {
        m_ /= G;
        shift_ /= G;
        num_ = num_.compress(G);
        den_ = den_.compress(G);
    }
}

Character Character::lifted(int L) const {
    if (L % m_) throw NumericError("lift to a non-multiple root order");
    int g = L / m_;
    Character c;
    c.m_ = L;
    c.num_ = num_.substitute_power(g);
    c.den_ = den_.substitute_power(g);
    c.shift_ = shift_ * g;
    return c;
}

Character Character::operator+(const Character& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    int L = lcm_int(m_, o.m_);
    Character a = lifted(L), b = o.lifted(L);
    int s = std::min(a.shift_, b.shift_);
    Polynomial n = (a.num_ * b.den_).shifted(a.shift_ - s) + (b.num_ * a.den_).shifted(b.shift_ - s);
    return from_parts(L, n, a.den_ * b.den_, s);
}

Character Character::operator-() const { return scaled(Rational(-1)); }
Character Character::operator-(const Character& o) const { return *this + (-o); }

Character Character::operator*(const Character& o) const {
    if (is_zero() || o.is_zero()) return Character();
    int L = lcm_int(m_, o.m_);
    Character a = lifted(L), b = o.lifted(L);
    return from_parts(L, a.num_ * b.num_, a.den_ * b.den_, a.shift_ + b.shift_);
}

Character Character::scaled(const Rational& s) const {
    if (s == 0 || is_zero()) return Character();
    return from_parts(m_, num_.scaled(s), den_, shift_);
}

Character Character::inverted() const {
    if (is_zero()) return *this;
    int dn = num_.degree(), dd = den_.degree();
    return from_parts(m_, num_.reversed(dn), den_.reversed(dd), -shift_ + dd - dn);
}

bool Character::operator==(const Character& o) const {
    return m_ == o.m_ && shift_ == o.shift_ && num_ == o.num_ && den_ == o.den_;
}

std::complex<double> Character::evaluate(double s, double theta) const {
    if (is_zero()) return 0.0;
    std::complex<double> w = std::exp(std::complex<double>(-s, theta) / static_cast<double>(m_));
    std::complex<double> d = den_(w);
    double scale = 0;
    for (const auto& c : den_.coeffs()) scale += std::abs(to_double(c));
    if (std::abs(d) < 1e-12 * std::max(1.0, scale)) throw PoleError("character evaluated at a pole");
    return std::pow(w, shift_) * num_(w) / d;
}

std::pair<int, std::vector<Rational>> Character::series(int terms) const {
    std::vector<Rational> q(terms, Rational(0));
    for (int k = 0; k < terms; ++k) {
        Rational v = num_.coeff(k);
        for (int j = 1; j <= std::min(k, den_.degree()); ++j) v -= den_[j] * q[k - j];
        q[k] = v;  // den(0) = 1 after normalization
    }
    return {shift_, q};
}

namespace {

std::string exponent_str(const Rational& q) {
    if (q == 1) return "λ";
    return "λ^{" + to_string(q) + "}";
}

std::string poly_str(const Polynomial& p, int m, int shift) {
    std::string out;
    bool first = true;
    for (int k = 0; k <= p.degree(); ++k) {
        Rational c = p[k];
        if (c == 0) continue;
        Rational e = Rational(k + shift) / m;
        bool neg = c < 0;
        Rational a = neg ? Rational(-c) : c;
        std::string body;
        if (e == 0)
            body = to_string(a);
        else if (a == 1)
            body = exponent_str(e);
        else
            body = to_string(a) + exponent_str(e);
        if (first)
            out += (neg ? "−" : "") + body;
        else
            out += (neg ? " − " : " + ") + body;
        first = false;
    }
    return out;
}

}  // namespace

std::string Character::str() const {
    if (is_zero()) return "0";
    std::string n = poly_str(num_, m_, shift_);
    if (den_.degree() == 0) return n;
    int terms = 0;
    for (const auto& c : num_.coeffs()) terms += c != 0;
    if (terms > 1) n = "(" + n + ")";
    return n + "/(" + poly_str(den_, m_, 0) + ")";
}

Character local_character(const CohomologyBasis& basis, bool degree_signs) {
    Rational sign = (degree_signs && basis.degree % 2) ? Rational(-1) : Rational(1);
    if (basis.admissible_nu && basis.admissible_nu->kind != AdmissibleNu::Kind::Finite) {
        const auto& a = *basis.admissible_nu;
        Rational start = a.bound * basis.lambda_per_nu, step = a.step * basis.lambda_per_nu;
        if (a.kind == AdmissibleNu::Kind::AllGE) return Character::geometric(sign, start, step);
        return Character::geometric(sign, start, -step);
    }
    Character sum;
    for (const auto& s : basis.sections) {
        Rational sg = (degree_signs && s.degree % 2) ? Rational(-1) : Rational(1);
        sum = sum + Character::monomial(sg * s.multiplicity, s.lambda_weight);
    }
    return sum;
}

Character chi_y(const Character& todd, const Character& canonical, const Rational& y) {
    return todd + canonical.scaled(y);
}

Character sum_and_simplify(const std::vector<Character>& chars) {
    Character s;
    for (const auto& c : chars) s = s + c;
    return s;
}

std::complex<double> evaluate(const Character& ch, double s, double theta) { return ch.evaluate(s, theta); }

}  // namespace conespec
