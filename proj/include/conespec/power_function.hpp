#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "conespec/errors.hpp"
#include "conespec/rational.hpp"

namespace conespec {

namespace detail {
inline double as_double(const Rational& c) { return to_double(c); }
inline double as_double(double c) { return c; }
inline bool is_zero_coeff(const Rational& c) { return c == 0; }
inline bool is_zero_coeff(double c) { return c == 0.0; }
template <class C> C scale_by(const C& c, const Rational& e);
template <> inline Rational scale_by(const Rational& c, const Rational& e) { return c * e; }
template <> inline double scale_by(const double& c, const Rational& e) { return c * to_double(e); }
}  // namespace detail

template <class C>
struct PowerTerm {
    C coefficient;
    Rational exponent;
    bool operator==(const PowerTerm& o) const {
        return coefficient == o.coefficient && exponent == o.exponent;
    }
};

// finite sum of c * x^e; terms kept in strictly decreasing exponent order
template <class C>
class BasicPowerFunction {
public:
    BasicPowerFunction() = default;

    static BasicPowerFunction monomial(C coefficient, Rational exponent) {
        BasicPowerFunction f;
        f.add_term(std::move(coefficient), std::move(exponent));
        return f;
    }
    static BasicPowerFunction constant(C c) { return monomial(std::move(c), Rational(0)); }
    static BasicPowerFunction from_terms(const std::vector<PowerTerm<C>>& ts) {
        BasicPowerFunction f;
        for (const auto& t : ts) f.add_term(t.coefficient, t.exponent);
        return f;
    }

    const std::vector<PowerTerm<C>>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_single_term() const { return terms_.size() == 1; }

    // largest exponent
    const Rational& leading_exponent() const {
        require_nonzero();
        return terms_.front().exponent;
    }
    // most singular at the origin
    const Rational& lowest_exponent() const {
        require_nonzero();
        return terms_.back().exponent;
    }
    const PowerTerm<C>& lowest_term() const {
        require_nonzero();
        return terms_.back();
    }

    C coefficient_of(const Rational& e) const {
        for (const auto& t : terms_)
            if (t.exponent == e) return t.coefficient;
        return C(0);
    }

    void add_term(C coefficient, Rational exponent) {
        auto it = std::find_if(terms_.begin(), terms_.end(),
                               [&](const PowerTerm<C>& t) { return t.exponent <= exponent; });
        if (it != terms_.end() && it->exponent == exponent) {
            it->coefficient += coefficient;
            if (detail::is_zero_coeff(it->coefficient)) terms_.erase(it);
            return;
        }
        if (detail::is_zero_coeff(coefficient)) return;
        terms_.insert(it, PowerTerm<C>{std::move(coefficient), std::move(exponent)});
    }

    BasicPowerFunction operator+(const BasicPowerFunction& o) const {
        BasicPowerFunction r = *this;
        for (const auto& t : o.terms_) r.add_term(t.coefficient, t.exponent);
        return r;
    }
    BasicPowerFunction operator-() const {
        BasicPowerFunction r = *this;
        for (auto& t : r.terms_) t.coefficient = -t.coefficient;
        return r;
    }
    BasicPowerFunction operator-(const BasicPowerFunction& o) const { return *this + (-o); }
    BasicPowerFunction operator*(const BasicPowerFunction& o) const {
        BasicPowerFunction r;
        for (const auto& a : terms_)
            for (const auto& b : o.terms_)
                r.add_term(a.coefficient * b.coefficient, a.exponent + b.exponent);
        return r;
    }
    BasicPowerFunction scaled(const C& s) const {
        BasicPowerFunction r;
        for (const auto& t : terms_) r.add_term(t.coefficient * s, t.exponent);
        return r;
    }
    // multiply by x^e
    BasicPowerFunction shifted(const Rational& e) const {
        BasicPowerFunction r = *this;
        for (auto& t : r.terms_) t.exponent += e;
        return r;
    }

    BasicPowerFunction pow(int n) const {
        if (n < 0) return reciprocal().pow(-n);
        BasicPowerFunction r = constant(C(1));
        for (int i = 0; i < n; ++i) r = r * *this;
        return r;
    }
    // non-integer powers only for a single term with unit coefficient
    BasicPowerFunction pow(const Rational& p) const {
        if (is_integer(p)) return pow(static_cast<int>(num_i64(p)));
        if (!is_single_term() || !(terms_.front().coefficient == C(1)))
            throw ModelError("fractional power of a power function needs a single unit term");
        return monomial(C(1), terms_.front().exponent * p);
    }

    BasicPowerFunction derivative() const {
        BasicPowerFunction r;
        for (const auto& t : terms_)
            if (t.exponent != 0)
                r.add_term(detail::scale_by(t.coefficient, t.exponent), t.exponent - 1);
        return r;
    }

    BasicPowerFunction reciprocal() const {
        if (!is_single_term()) throw ModelError("reciprocal of a multi-term power function");
        return monomial(C(1) / terms_.front().coefficient, -terms_.front().exponent);
    }

    double operator()(double x) const {
        double s = 0.0;
        for (const auto& t : terms_)
            s += detail::as_double(t.coefficient) * std::pow(x, to_double(t.exponent));
        return s;
    }

    // (coefficient, exponent) pairs in double, for hot loops
    std::vector<std::pair<double, double>> numeric_terms() const {
        std::vector<std::pair<double, double>> out;
        for (const auto& t : terms_) out.emplace_back(detail::as_double(t.coefficient), to_double(t.exponent));
        return out;
    }

    template <class D>
    BasicPowerFunction<D> cast() const {
        BasicPowerFunction<D> r;
        for (const auto& t : terms_) r.add_term(static_cast<D>(detail::as_double(t.coefficient)), t.exponent);
        return r;
    }

    bool operator==(const BasicPowerFunction& o) const { return terms_ == o.terms_; }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::string s;
        for (std::size_t i = 0; i < terms_.size(); ++i) {
            if (i) s += " + ";
            s += coeff_str(terms_[i].coefficient) + "*x^(" + to_string(terms_[i].exponent) + ")";
        }
        return s;
    }

private:
    void require_nonzero() const {
        if (terms_.empty()) throw ModelError("zero power function has no exponent");
    }
    static std::string coeff_str(const Rational& c) { return to_string(c); }
    static std::string coeff_str(double c) { return std::to_string(c); }

    std::vector<PowerTerm<C>> terms_;
};

using PowerFunction = BasicPowerFunction<Rational>;
using RealPowerFunction = BasicPowerFunction<double>;

}  // namespace conespec
