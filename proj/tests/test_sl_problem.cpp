#include "doctest.h"

#include <cmath>

#include "conespec/errors.hpp"
#include "conespec/sl_problem.hpp"

using namespace conespec;

namespace {

LinkMode mode(std::vector<double> mu, std::vector<int> k) {
    LinkMode m;
    m.mu = std::move(mu);
    m.multidegree.k = std::move(k);
    return m;
}

const ComplexSpec absolute{ComplexKind::DeRham, Ideal::Min, BoundaryType::N, Rational(0)};
const ComplexSpec relative{ComplexKind::DeRham, Ideal::Min, BoundaryType::D, Rational(0)};

PowerFunction x_to(const Rational& e) { return PowerFunction::monomial(Rational(1), e); }

double g_coeff(const Rational& B) {
    SLProblem p;
    p.weight = x_to(B);
    p.bc.at_zero.extension = Extension::MinPrincipal;
    return inverse_square_coefficient(liouville_transform(p).potential);
}

}  // namespace

TEST_CASE("build_sl on the cone over a circle") {
    auto space = cone_over_circle(Rational(1));
    SLProblem t1 = build_sl(space, mode({1.0}, {0}), FormType::T1, absolute);
    CHECK(t1.weight == x_to(1));
    CHECK(t1.potential.coefficient_of(Rational(-2)) == 1.0);
    CHECK(t1.bc.at_one.is_neumann());

    SLProblem t4 = build_sl(space, mode({1.0}, {0}), FormType::T4, absolute);
    CHECK(t4.weight == x_to(-1));
    CHECK(t4.bc.at_one.is_dirichlet());

    SLProblem e = build_sl(cone_over_torus(2, Rational(1)), mode({0.0}, {1}), FormType::E, absolute);
    CHECK(e.weight == x_to(0));
    CHECK(e.potential.is_zero());
    REQUIRE(e.bc.at_zero.extension.has_value());
    CHECK(*e.bc.at_zero.extension == Extension::MaxNonPrincipal);
    SLProblem o = build_sl(cone_over_torus(2, Rational(1)), mode({0.0}, {1}), FormType::O, absolute);
    CHECK(*o.bc.at_zero.extension == Extension::MinPrincipal);

    CHECK_THROWS_AS(build_sl(space, mode({1.0}, {0}), FormType::E, absolute), ModelError);
    CHECK_THROWS_AS(build_sl(space, mode({0.0}, {0}), FormType::T1, absolute), ModelError);
    ComplexSpec dol{ComplexKind::Dolbeault, Ideal::Min, BoundaryType::N, Rational(0)};
    CHECK_THROWS_AS(build_sl(space, mode({1.0}, {0}), FormType::T1, dol), ModelError);
}

TEST_CASE("boundary condition table") {
    auto F = x_to(1);
    for (auto t : {FormType::T1, FormType::T2, FormType::E, FormType::O}) {
        CHECK(boundary_condition_for(t, absolute, F, std::nullopt).is_neumann());
        CHECK(boundary_condition_for(t, relative, F, std::nullopt).is_dirichlet());
    }
    for (auto t : {FormType::T3, FormType::T4}) CHECK(boundary_condition_for(t, absolute, F, std::nullopt).is_dirichlet());
    // (vF)'(1) = 0 with F = x^{-1}: v' - v = 0
    auto r = boundary_condition_for(FormType::T4, relative, x_to(-1), std::nullopt);
    CHECK(r.gamma1 == doctest::Approx(-1.0));
    CHECK(r.gamma2 == doctest::Approx(1.0));

    ComplexSpec dn{ComplexKind::Dolbeault, Ideal::Min, BoundaryType::N, Rational(0)};
    auto d1 = boundary_condition_for(FormType::T1, dn, F, 2.0);
    CHECK(d1.gamma1 == doctest::Approx(-2.0));
    CHECK(d1.gamma2 == doctest::Approx(1.0));
    for (auto t : {FormType::T3, FormType::T4, FormType::O}) CHECK(boundary_condition_for(t, dn, F, 2.0).is_dirichlet());
    ComplexSpec dd{ComplexKind::Dolbeault, Ideal::Min, BoundaryType::D, Rational(0)};
    for (auto t : {FormType::T1, FormType::T2, FormType::E}) CHECK(boundary_condition_for(t, dd, F, 2.0).is_dirichlet());
    CHECK_THROWS_AS(boundary_condition_for(FormType::T1, dn, F, std::nullopt), ModelError);
}

TEST_CASE("Liouville transform") {
    SLProblem p;
    p.weight = x_to(1);
    p.bc.at_one = RobinCondition::neumann();
    p.bc.at_zero.extension = Extension::MinPrincipal;
    auto sp = liouville_transform(p);
    CHECK(inverse_square_coefficient(sp.potential) == doctest::Approx(-0.25));
    REQUIRE(sp.origin_indicial.has_value());
    CHECK(sp.origin_indicial->plus == doctest::Approx(0.5));
    CHECK(sp.origin_indicial->minus == doctest::Approx(0.5));
    // Neumann becomes v' = (B/2) v
    CHECK(sp.bc.at_one.gamma1 == doctest::Approx(-0.5));
    CHECK(sp.bc.at_one.gamma2 == doctest::Approx(1.0));

    for (int m = 1; m <= 3; ++m) {
        SLProblem q = p;
        q.potential.add_term(m * m, Rational(-2));
        auto s = liouville_transform(q);
        CHECK(inverse_square_coefficient(s.potential) == doctest::Approx(m * m - 0.25));
        CHECK(s.origin_indicial->plus == doctest::Approx(0.5 + m));
        CHECK(s.origin_indicial->minus == doctest::Approx(0.5 - m));
    }

    SLProblem flat;
    flat.bc.at_zero.extension = Extension::MaxNonPrincipal;
    CHECK(liouville_transform(flat).potential.is_zero());

    SLProblem dir = p;
    dir.bc.at_one = RobinCondition::dirichlet();
    CHECK(liouville_transform(dir).bc.at_one.is_dirichlet());
}

TEST_CASE("G is symmetric about B = 1 and vanishes at 0 and 2") {
    for (int num = -6; num <= 8; ++num) {
        Rational B = make_rational(num, 2);
        CHECK(g_coeff(B) == g_coeff(2 - B));
        CHECK(g_coeff(B) == doctest::Approx(to_double(B * (B - 2) / 4)));
    }
    CHECK(g_coeff(Rational(0)) == 0.0);
    CHECK(g_coeff(Rational(2)) == 0.0);
}

TEST_CASE("endpoint classification at zero") {
    RealPowerFunction a, b, c;
    a.add_term(0.8, Rational(-2));
    b.add_term(0.5, Rational(-2));
    c.add_term(1.0, Rational(-4));
    CHECK(classify_endpoint_zero(a) == EndpointClass::LimitPoint);
    CHECK(classify_endpoint_zero(b) == EndpointClass::LimitCircle);
    CHECK(classify_endpoint_zero(c) == EndpointClass::LimitPoint);
    CHECK(classify_endpoint_zero(RealPowerFunction{}) == EndpointClass::LimitCircle);
    RealPowerFunction neg;
    neg.add_term(-1.0, Rational(-4));
    CHECK_THROWS_AS(classify_endpoint_zero(neg), ModelError);

    // weight-only problems: limit point iff B <= -1 or B >= 3
    for (int B = -2; B <= 4; ++B) {
        SLProblem p;
        p.weight = x_to(B);
        p.bc.at_zero.extension = Extension::MinPrincipal;
        bool lp = classify_endpoint_zero(liouville_transform(p)) == EndpointClass::LimitPoint;
        CHECK(lp == (B <= -1 || B >= 3));
    }
}

TEST_CASE("form type names round trip") {
    for (auto t : {FormType::T1, FormType::T2, FormType::T3, FormType::T4, FormType::E, FormType::O})
        CHECK(form_type_from_string(to_string(t)) == t);
}
