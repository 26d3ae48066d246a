#include "doctest.h"

#include <set>

#include "conespec/cohomology.hpp"
#include "conespec/errors.hpp"

using namespace conespec;

namespace {

PowerFunction x_to(const Rational& e) { return PowerFunction::monomial(Rational(1), e); }

ComplexSpec dolbeault(Ideal W, BoundaryType B, Rational twist = Rational(0)) {
    return ComplexSpec{ComplexKind::Dolbeault, W, B, twist};
}

NuData lattice(Rational shift, Rational step) { return NuData{NuLattice{shift, step}, {}}; }

std::set<Rational> admissible_in(const CohomologyBasis& b) {
    std::set<Rational> out;
    for (const auto& s : b.sections) out.insert(*s.nu);
    return out;
}

}  // namespace

TEST_CASE("L2 admissibility of profiles") {
    CHECK(l2_admissible(PowerProfile{Rational(0)}, x_to(1)));
    CHECK_FALSE(l2_admissible(PowerProfile{Rational(-1)}, x_to(1)));
    CHECK(l2_admissible(PowerProfile{make_rational(-1, 2)}, x_to(1)));
    CHECK(l2_admissible(ExpPowerProfile{-1.0, Rational(-1)}, x_to(1)));
    CHECK_FALSE(l2_admissible(ExpPowerProfile{1.0, Rational(-1)}, x_to(1)));
    // kappa = 0 is the constant profile
    CHECK(l2_admissible(ExpPowerProfile{0.0, Rational(-1)}, x_to(1)));
    CHECK_FALSE(l2_admissible(ExpPowerProfile{0.0, Rational(-1)}, x_to(-3)));
}

TEST_CASE("de Rham harmonic bases") {
    ComplexSpec abs{ComplexKind::DeRham, Ideal::Min, BoundaryType::N, Rational(0)};
    auto s1 = cone_over_circle(Rational(1));
    auto b1 = derham_harmonic_basis(s1, torus_link_modes(s1, {0, 1}, 0.0), abs);
    CHECK(b1.at(0).rank() == 1);
    CHECK(b1.at(1).rank() == 0);

    auto t4 = cone_over_torus(4, Rational(1));
    auto b4 = derham_harmonic_basis(t4, torus_link_modes(t4, {0, 4}, 0.0), abs);
    CHECK(b4.at(0).rank() == 1);
    CHECK(b4.at(1).rank() == 4);
    // F(dth_i) = x^2
    for (const auto& s : b4.at(1).sections) CHECK(s.weight_exponent == 2);
    // degree 2: F = 1, admissible; 3, 4: F = x^{-2}, x^{-4}, not
    CHECK(b4.at(2).rank() == 6);
    CHECK(b4.at(3).rank() == 0);
    CHECK(b4.at(4).rank() == 0);

    // independent of x_max
    auto t4b = cone_over_torus(4, Rational(1), 3.0);
    CHECK(derham_harmonic_basis(t4b, torus_link_modes(t4b, {1, 1}, 0.0), abs).at(1).rank() == 4);

    ComplexSpec rel = abs;
    rel.B = BoundaryType::D;
    CHECK_THROWS_AS(derham_harmonic_basis(s1, {}, rel), ModelError);
    ComplexSpec dol = dolbeault(Ideal::Min, BoundaryType::N);
    CHECK_THROWS_AS(derham_harmonic_basis(s1, {}, dol), ModelError);
}

TEST_CASE("disc: holomorphic functions") {
    auto b = dolbeault_harmonic_basis(Rational(1), lattice(Rational(0), Rational(1)),
                                      dolbeault(Ideal::Min, BoundaryType::N), x_to(1));
    REQUIRE(b.admissible_nu.has_value());
    CHECK(b.admissible_nu->kind == AdmissibleNu::Kind::AllGE);
    CHECK(b.admissible_nu->bound == 0);
    CHECK(b.admissible_nu->step == 1);
    for (const auto& s : b.sections) {
        CHECK(std::get<PowerProfile>(s.profile).a == *s.nu);
        CHECK(l2_admissible(s.profile, x_to(1)));
    }
    CHECK(b.sections.front().nu == Rational(0));
}

TEST_CASE("cusp tangent cone, maximal domain") {
    auto b = dolbeault_harmonic_basis(Rational(1), lattice(Rational(0), make_rational(1, 2)),
                                      dolbeault(Ideal::Max, BoundaryType::N), x_to(1), std::nullopt, Rational(2));
    CHECK(b.admissible_nu->kind == AdmissibleNu::Kind::AllGE);
    CHECK(b.admissible_nu->bound == make_rational(-1, 2));
    CHECK(b.sections.front().lambda_weight == -1);  // t^{-1}
    auto mn = dolbeault_harmonic_basis(Rational(1), lattice(Rational(0), make_rational(1, 2)),
                                       dolbeault(Ideal::Min, BoundaryType::N), x_to(1), std::nullopt, Rational(2));
    CHECK(mn.admissible_nu->bound == 0);
}

TEST_CASE("disc dual: normal sections") {
    for (Ideal W : {Ideal::Min, Ideal::Max}) {
        auto b = dolbeault_harmonic_basis(Rational(1), lattice(Rational(0), Rational(1)), dolbeault(W, BoundaryType::D),
                                          x_to(-1));
        CHECK(b.admissible_nu->kind == AdmissibleNu::Kind::AllLE);
        CHECK(b.admissible_nu->bound == 0);
        for (const auto& s : b.sections) CHECK(std::get<PowerProfile>(s.profile).a == -*s.nu);
    }
}

TEST_CASE("Serre pairing of N and D admissible sets") {
    NuWindow win{Rational(-6), Rational(6)};
    for (Ideal W : {Ideal::Min, Ideal::Max})
        {
            auto n = dolbeault_harmonic_basis(Rational(1), lattice(Rational(0), Rational(1)),
                                              dolbeault(W, BoundaryType::N), x_to(1), win);
            auto d = dolbeault_harmonic_basis(Rational(1), lattice(Rational(0), Rational(1)),
                                              dolbeault(W, BoundaryType::D), x_to(-1), win);
            std::set<Rational> neg;
            for (const auto& v : admissible_in(d)) neg.insert(-v);
            CHECK(admissible_in(n) == neg);
            CHECK(n.admissible_nu->bound == -d.admissible_nu->bound);
        }
}

TEST_CASE("bounding below gives an AllGE set") {
    for (int a : {1, 2, 3}) {
        CHECK(classify_reeb_bounding(Rational(a)) == ReebBound::BoundingBelow);
        auto b = dolbeault_harmonic_basis(Rational(a), lattice(Rational(0), Rational(1)),
                                          dolbeault(Ideal::Min, BoundaryType::N), x_to(1));
        CHECK(b.admissible_nu->kind == AdmissibleNu::Kind::AllGE);
        CHECK(b.admissible_nu->bound == 0);
        for (const auto& s : b.sections) CHECK(l2_admissible(s.profile, x_to(1)));
    }
}

TEST_CASE("twisted lattices and explicit values") {
    // spin twist: nu in 1/2 + Z, nu_p = nu - 1/2
    auto spin = dolbeault_harmonic_basis(Rational(1), lattice(make_rational(1, 2), Rational(1)),
                                         dolbeault(Ideal::Min, BoundaryType::N, make_rational(1, 2)), x_to(1));
    CHECK(spin.admissible_nu->bound == make_rational(1, 2));
    NuData ex{std::nullopt, {Rational(-2), Rational(-1), Rational(0), Rational(3)}};
    auto fin = dolbeault_harmonic_basis(Rational(1), ex, dolbeault(Ideal::Min, BoundaryType::N), x_to(1),
                                        NuWindow{Rational(-5), Rational(5)});
    CHECK(fin.admissible_nu->kind == AdmissibleNu::Kind::Finite);
    CHECK(fin.admissible_nu->values == std::vector<Rational>{Rational(0), Rational(3)});
    CHECK_THROWS_AS(dolbeault_harmonic_basis(Rational(1), ex, dolbeault(Ideal::Min, BoundaryType::N), x_to(1)), ModelError);
}
