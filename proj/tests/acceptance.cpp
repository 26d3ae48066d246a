// acceptance run: one line per criterion, exit 0 iff the failing set equals --expect-fail
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "conespec/bessel_oracle.hpp"
#include "conespec/character.hpp"
#include "conespec/cohomology.hpp"
#include "conespec/eigensolver.hpp"
#include "conespec/errors.hpp"
#include "conespec/supertrace.hpp"
#include "conespec/verify.hpp"
#include "conespec/witten.hpp"

using namespace conespec;

namespace {

const double pi = 3.14159265358979323846;

struct Outcome {
    bool pass = false;
    std::string summary;
    std::vector<std::string> info;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

Outcome bessel_benchmark() {
    Outcome o;
    o.pass = true;
    Mesh mesh;
    mesh.N = 4000;
    double worst = 0, slowest = 0;
    std::vector<std::pair<double, double>> all;  // (computed, oracle)
    for (int m : {0, 1}) {
        auto t0 = std::chrono::steady_clock::now();
        Spectrum sp = eigenvalues_weighted(
            radial_fixture(Rational(1), Rational(1), m, RobinCondition::dirichlet()), 3, mesh);
        double dt = seconds_since(t0);
        slowest = std::max(slowest, dt);
        for (int k = 0; k < 3; ++k) {
            double z = bessel_zero_oracle(m, k + 1);
            double got = std::sqrt(sp[k].lambda_sq);
            all.push_back({got, z});
            o.info.push_back(fmt("m=%g k=%g: %.9f", m, k + 1, got) + fmt(" oracle %.9f", z));
        }
        o.info.push_back(fmt("m=%g solve time %.2f s", m, dt));
    }
    std::sort(all.begin(), all.end());
    for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(all[i].first - all[i].second));
    o.pass = worst <= 1e-4 && slowest < 5.0;
    o.summary = fmt("lowest three zeros max |err| %.2e (tol 1e-4), slowest mode %.2f s (limit 5)", worst, slowest);
    return o;
}

template <class F>
Outcome fixture_sweep(F verify, double tol, double time_limit) {
    Outcome o;
    o.pass = true;
    double worst = 0;
    auto t0 = std::chrono::steady_clock::now();
    for (int B = 0; B <= 2; ++B)
        for (auto c : {make_rational(1, 2), Rational(1), Rational(2)})
            for (double mu : {0.0, 1.0, 2.0}) {
                VerificationReport r = verify(radial_fixture(Rational(B), c, mu));
                worst = std::max(worst, r.max_discrepancy);
                if (!r.pass) {
                    o.pass = false;
                    o.info.push_back("B=" + std::to_string(B) + " c=" + to_string(c) + fmt(" mu=%g failed: %.2e ", mu, r.max_discrepancy) + r.note);
                }
            }
    double dt = seconds_since(t0);
    if (time_limit > 0 && dt >= time_limit) o.pass = false;
    o.summary = fmt("27 fixtures, max relative gap %.2e (tol %.0e), %.1f s", worst, tol, dt);
    if (time_limit > 0) o.summary += fmt(" (limit %.0f s)", time_limit);
    return o;
}

Outcome star_duality() {
    Outcome o;
    o.pass = true;
    double worst = 0;
    for (auto B : {make_rational(1, 2), Rational(1), Rational(2), Rational(3)})
        for (double mu : {0.0, 1.0}) {
            RealPowerFunction V;
            if (mu != 0.0) V.add_term(mu * mu, Rational(-2));
            auto r = verify_star_duality(B, V);
            worst = std::max(worst, r.max_discrepancy);
            o.pass = o.pass && r.pass;
            o.info.push_back("B=" + to_string(B) + fmt(" mu=%g: %.2e", mu, r.max_discrepancy) + (r.note.empty() ? "" : " " + r.note));
        }
    o.summary = fmt("Neumann/Robin and Dirichlet/Dirichlet identities, max gap %.2e (tol 1e-5)", worst);
    return o;
}

Outcome oracle_2d() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    auto r = verify_2d_oracle(Rational(1), 6);
    o.pass = r.pass && r.details.size() == 12;
    o.summary = fmt("lowest %g eigenvalues, max relative gap %.2e (tol 1e-3), %.1f s", r.details.size(), r.max_discrepancy,
                    seconds_since(t0));
    if (!r.note.empty()) o.info.push_back(r.note);
    // multiplicity pattern of the 2-D spectrum
    std::string groups;
    for (std::size_t i = 0; i < r.details.size();) {
        std::size_t j = i;
        while (j < r.details.size() && std::abs(r.details[j].value - r.details[i].value) < 1e-6 * r.details[i].value) ++j;
        groups += fmt("%.4f", r.details[i].value) + "x" + std::to_string(j - i) + " ";
        i = j;
    }
    o.info.push_back("2-D groups: " + groups);
    return o;
}

SchrodingerProblem flat(Extension ext) {
    SchrodingerProblem sp;
    sp.bc.at_zero = {EndpointClass::LimitCircle, ext};
    sp.bc.at_one = RobinCondition::dirichlet();
    return sp;
}

Outcome witten_hermite() {
    Outcome o;
    o.pass = true;
    auto h = MorseFunction::power_law(Rational(1));
    const std::vector<double> eps{1.0, 2.0, 4.0};
    auto even = semiclassical_sweep(flat(Extension::MaxNonPrincipal), h, -1, eps, 3, 1e-3);
    auto odd = semiclassical_sweep(flat(Extension::MinPrincipal), h, -1, eps, 2, 1e-3);
    double worst = 0;  // in units of eps
    for (std::size_t i = 0; i < eps.size(); ++i) {
        double e = eps[i];
        for (int k = 0; k < 3; ++k) worst = std::max(worst, std::abs(even[i].spectrum[k].lambda_sq - 4 * k * e) / e);
        for (int k = 0; k < 2; ++k) worst = std::max(worst, std::abs(odd[i].spectrum[k].lambda_sq - (4 * k + 2) * e) / e);
        bool ground = std::abs(even[i].spectrum[0].lambda_sq) < 1e-3 * e && even[i].count_below == 1;
        o.pass = o.pass && ground;
        o.info.push_back(fmt("eps=%g: even %.6f %.6f", e, even[i].spectrum[0].lambda_sq, even[i].spectrum[1].lambda_sq) +
                         fmt(" %.6f", even[i].spectrum[2].lambda_sq) +
                         fmt(" odd %.6f %.6f", odd[i].spectrum[0].lambda_sq, odd[i].spectrum[1].lambda_sq));
    }
    o.pass = o.pass && worst <= 1e-3;
    o.summary = fmt("max |err|/eps %.2e (tol 1e-3), zero mode below 1e-3 eps for all eps", worst);
    return o;
}

ComplexSpec dol(Ideal W, BoundaryType B, Rational twist = Rational(0)) {
    return ComplexSpec{ComplexKind::Dolbeault, W, B, twist};
}

PowerFunction x_to(int e) { return PowerFunction::monomial(Rational(1), Rational(e)); }

CohomologyBasis dbasis(Ideal W, BoundaryType B, Rational step, int F, Rational lpn = Rational(1),
                       Rational shift = Rational(0), Rational twist = Rational(0)) {
    return dolbeault_harmonic_basis(Rational(1), NuData{NuLattice{shift, step}, {}}, dol(W, B, twist), x_to(F),
                                    std::nullopt, lpn);
}

Outcome cohomology_reproductions() {
    Outcome o;
    auto check = [&](const std::string& what, const CohomologyBasis& b, AdmissibleNu::Kind kind, Rational bound) {
        bool ok = b.admissible_nu && b.admissible_nu->kind == kind && b.admissible_nu->bound == bound;
        for (const auto& s : b.sections) ok = ok && (kind == AdmissibleNu::Kind::AllGE ? *s.nu >= bound : *s.nu <= bound);
        o.info.push_back(what + ": " + (kind == AdmissibleNu::Kind::AllGE ? "nu >= " : "nu <= ") +
                         to_string(b.admissible_nu ? b.admissible_nu->bound : Rational(0)) + (ok ? "" : " (mismatch)"));
        return ok;
    };
    bool ok = check("disc N", dbasis(Ideal::Min, BoundaryType::N, Rational(1), 1), AdmissibleNu::Kind::AllGE, Rational(0));
    ok &= check("cusp Max", dbasis(Ideal::Max, BoundaryType::N, make_rational(1, 2), 1, Rational(2)),
                AdmissibleNu::Kind::AllGE, make_rational(-1, 2));
    ok &= check("disc D", dbasis(Ideal::Min, BoundaryType::D, Rational(1), -1), AdmissibleNu::Kind::AllLE, Rational(0));
    auto t4 = cone_over_torus(4, Rational(1));
    ComplexSpec abs{ComplexKind::DeRham, Ideal::Min, BoundaryType::N, Rational(0)};
    int rank = derham_harmonic_basis(t4, torus_link_modes(t4, {1, 1}, 0.0), abs).at(1).rank();
    o.info.push_back("C(T^4) degree 1 rank " + std::to_string(rank));
    o.pass = ok && rank == 4;
    o.summary = "exact rational bounds for disc, cusp and dual disc; C(T^4) H^1 rank " + std::to_string(rank);
    return o;
}

Outcome character_identities() {
    Outcome o;
    o.pass = true;
    auto expect = [&](const std::string& what, const Character& got, const Character& want) {
        bool ok = got == want;
        o.pass = o.pass && ok;
        o.info.push_back(what + " = " + got.str() + (ok ? "" : "  expected " + want.str()));
    };
    Character todd = local_character(dbasis(Ideal::Min, BoundaryType::N, Rational(1), 1));
    Character canon = local_character(dbasis(Ideal::Min, BoundaryType::N, Rational(1), 1, Rational(1), Rational(0), Rational(1)));
    Character g0 = Character::geometric(Rational(1), Rational(0), Rational(1));
    Character g1 = Character::geometric(Rational(1), Rational(1), Rational(1));
    for (int y : {-1, 0, 1, 2}) expect("disc chi_" + std::to_string(y), chi_y(todd, canon, Rational(y)), g0 + g1.scaled(Rational(y)));
    expect("disc chi_-1", chi_y(todd, canon, Rational(-1)), Character::constant(Rational(1)));

    Character spin = local_character(dbasis(Ideal::Min, BoundaryType::N, Rational(1), 1, Rational(1), make_rational(1, 2),
                                            make_rational(1, 2)));
    expect("sphere spin", sum_and_simplify({spin, spin.inverted()}), Character());
    expect("sphere Todd", sum_and_simplify({todd, todd.inverted()}), Character::constant(Rational(1)));

    auto cusp = [&](Ideal W, Rational twist) {
        return local_character(dbasis(W, BoundaryType::N, make_rational(1, 2), 1, Rational(2), Rational(0), twist));
    };
    const Rational half = make_rational(1, 2);
    expect("cusp Min chi_-1", chi_y(cusp(Ideal::Min, 0), cusp(Ideal::Min, half), Rational(-1)), Character::constant(Rational(1)));
    expect("cusp Max chi_-1", chi_y(cusp(Ideal::Max, 0), cusp(Ideal::Max, half), Rational(-1)),
           Character::monomial(Rational(1), Rational(-1)));
    o.summary = o.pass ? "all rational identities hold exactly" : "identity mismatch";
    return o;
}

Outcome eta_renormalization() {
    Outcome o;
    Character todd = local_character(dbasis(Ideal::Min, BoundaryType::N, Rational(1), 1));
    double worst = 0;
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) {
            double alpha = 0.3 + 0.55 * i;  // stays inside (0, 2 pi)
            double s = 0.05 + 0.2 * j;
            std::complex<double> lhs = eta_renormalized(alpha, s);
            std::complex<double> rhs = 2.0 * evaluate(todd, s, alpha);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    double at_zero = 0;
    for (double s : {1e-3, 0.01, 0.1, 0.5, 1.0, 2.0, 5.0}) at_zero = std::max(at_zero, std::abs(eta_renormalized(0.0, s) - 1.0));
    double limit = 0;
    for (double alpha = 0.3; alpha < 6.0; alpha += 0.55)
        limit = std::max(limit, std::abs(eta_renormalized(alpha, 1e-9) - 2.0 * evaluate(todd, 1e-9, alpha)));
    double todd_at_zero = 2.0 * evaluate(todd, 0.5, 0.0).real();
    o.pass = worst <= 1e-10 && at_zero <= 1e-10;
    o.summary = fmt("grid max |eta - 2 Todd| %.3e (tol 1e-10); alpha=0 max |eta - 1| %.1e", worst, at_zero);
    o.info.push_back(fmt("s -> 0 limit (s=1e-9): max |eta - 2 Todd| %.2e", limit));
    o.info.push_back(fmt("at alpha=0, s=0.5: 2 Todd = %.6f while eta = 1, so both requirements cannot hold", todd_at_zero));
    o.info.push_back("the identity holds only in the s -> 0 limit");
    return o;
}

Outcome duistermaat_heckman() {
    Outcome o;
    double worst = 0;
    for (double t : {0.1, 1.0, pi, 5.0}) {
        auto r = duistermaat_heckman_sphere(t);
        worst = std::max(worst, r.discrepancy);
        o.info.push_back(fmt("t=%.6f: closed %.12f quadrature %.12f", t, r.closed_form.real(), r.quadrature.real()));
    }
    o.pass = worst <= 1e-8;
    o.summary = fmt("max |closed - quadrature| %.2e (tol 1e-8)", worst);
    return o;
}

Outcome mckean_singer() {
    Outcome o;
    auto r = verify_mckean_singer();
    o.pass = r.pass;
    o.summary = fmt("b=-1 supertrace vs harmonic count, max deviation %.2e (tol 1e-10)", r.max_discrepancy);
    for (const auto& d : r.details) o.info.push_back(d.label + fmt(": %.15f", d.value));
    if (!r.note.empty()) o.info.push_back(r.note);
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance"};
    std::vector<int> expect_fail;
    bool verbose = false;
    app.add_option("--expect-fail", expect_fail, "criteria known to fail");
    app.add_flag("-v,--verbose", verbose, "print detail lines");
    CLI11_PARSE(app, argc, argv);

    std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"Bessel benchmark", bessel_benchmark},
        {"Liouville equivalence",
         [] { return fixture_sweep([](const SLProblem& p) { return verify_liouville(p, 10); }, 1e-6, 120.0); }},
        {"SUSY pairing", [] { return fixture_sweep([](const SLProblem& p) { return verify_susy_pairing(p, 10); }, 1e-5, 0); }},
        {"Star duality", star_duality},
        {"2-D oracle", oracle_2d},
        {"Witten/Hermite", witten_hermite},
        {"Cohomology reproductions", cohomology_reproductions},
        {"Character identities", character_identities},
        {"Eta renormalization", eta_renormalization},
        {"Duistermaat-Heckman", duistermaat_heckman},
        {"Renormalized McKean-Singer", mckean_singer},
    };

    std::set<int> failed;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        int id = static_cast<int>(i) + 1;
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.summary = std::string("exception: ") + e.what();
        }
        if (!o.pass) failed.insert(id);
        std::printf("[%s] %2d %s: %s\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first.c_str(), o.summary.c_str());
        if (verbose || !o.pass)
            for (const auto& line : o.info) std::printf("       %s\n", line.c_str());
        std::fflush(stdout);
    }
    std::set<int> expected(expect_fail.begin(), expect_fail.end());
    std::printf("%zu/%zu criteria pass\n", criteria.size() - failed.size(), criteria.size());
    if (failed != expected) {
        std::printf("failing set differs from the expected one\n");
        return 1;
    }
    return 0;
}
