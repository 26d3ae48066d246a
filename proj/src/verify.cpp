#include "conespec/verify.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include "conespec/cohomology.hpp"
#include "conespec/errors.hpp"
#include "conespec/radial_solver.hpp"
#include "conespec/supertrace.hpp"

namespace conespec {

void VerificationReport::add(std::string label, double reference, double value, double discrepancy) {
    details.push_back({std::move(label), reference, value, discrepancy});
    if (!(discrepancy <= max_discrepancy)) max_discrepancy = std::isnan(discrepancy) ? INFINITY : discrepancy;
}

void VerificationReport::finish() { pass = note.empty() && max_discrepancy <= tolerance; }

double relative_gap(double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

namespace {

std::vector<double> values(const Spectrum& s) {
    std::vector<double> v;
    for (const auto& e : s.entries)
        for (int k = 0; k < e.multiplicity; ++k) v.push_back(e.lambda_sq);
    return v;
}

std::vector<double> drop_zero_modes(std::vector<double> v, double tol = 1e-8) {
    v.erase(std::remove_if(v.begin(), v.end(), [tol](double x) { return std::abs(x) <= tol; }), v.end());
    return v;
}

// greedy sorted matching
void match(VerificationReport& r, std::vector<double> a, std::vector<double> b, const std::string& tag) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::size_t n = std::min(a.size(), b.size());
    if (n == 0) {
        r.note = "no eigenvalues to compare (" + tag + ")";
        return;
    }
    for (std::size_t i = 0; i < n; ++i) r.add(tag + "[" + std::to_string(i) + "]", a[i], b[i], relative_gap(a[i], b[i]));
}

}  // namespace

SLProblem radial_fixture(const Rational& B, const Rational& c, double mu, RobinCondition at_one) {
    SLProblem p;
    p.weight = PowerFunction::monomial(Rational(1), B);
    if (mu != 0.0) p.potential.add_term(mu * mu, -2 * c);
    p.bc.at_one = at_one;
    bool flat = B == 0 && mu == 0.0;
    p.bc.at_zero.extension = flat ? Extension::MaxNonPrincipal : Extension::MinPrincipal;
    p.bc.at_zero.kind = liouville_transform(p).bc.at_zero.kind;
    return p;
}

VerificationReport verify_liouville(const SLProblem& p, int n, const Mesh& mesh) {
    if (n < 1 || n > 20) throw ModelError("verify_liouville takes 1..20 eigenvalues");
    VerificationReport r;
    r.name = "liouville";
    r.tolerance = 1e-6;
    try {
        auto a = values(eigenvalues_weighted(p, n, mesh));
        auto b = values(eigenvalues(liouville_transform(p), n, mesh));
        match(r, a, b, "lambda_sq");
    } catch (const NumericError& e) {
        r.note = e.what();
    }
    r.finish();
    return r;
}

namespace {

// partner of A*A + E0 with A = d/dx - W, W = cot(theta0)/x from the Pruefer angle of u0
radial::Operator partner_operator(const radial::Operator& parent, double E0, bool dirichlet_parent) {
    auto angle = std::make_shared<radial::AngleSamples>(radial::prufer_samples(parent, E0, 20001));
    if (!dirichlet_parent) {
        // nodeless ground state: angle stays in (0, pi)
        for (double th : angle->theta)
            if (!(th > 0 && th < std::numbers::pi)) throw NumericError("factorisation state has a node");
    }
    radial::Operator q;
    q.B = parent.B;
    auto S = parent.scaled_potential;
    double B = parent.B;
    q.scaled_potential = [angle, S, B, E0](double x) {
        double ct = 1.0 / std::tan((*angle)(x));
        return B + 2 * ct * ct + 2 * B * ct - S(x) + 2 * E0 * x * x;
    };
    q.x_right = parent.x_right;
    q.x_min = parent.x_start;
    q.x_start = parent.x_start;
    q.zero = parent.zero;
    if (q.zero.kind == radial::ZeroBehaviour::Kind::Exponent) {
        double tau = parent.zero.exponent;
        double other = -B - tau;
        q.zero.exponent = tau + 1;
        q.zero.root_gap = std::abs(tau + 1 - other);
        q.zero.principal = tau + 1 >= other;
        if (!q.zero.principal) throw NumericError("partner sits on a non-principal branch");
    }
    if (dirichlet_parent) {
        double W = 1.0 / std::tan((*angle)(parent.x_right)) / parent.x_right;
        q.right = {B / parent.x_right + W, 1.0};
    } else {
        q.right = RobinCondition::dirichlet();
    }
    return q;
}

}  // namespace

VerificationReport verify_susy_pairing(const SLProblem& p, int n, const Mesh& mesh) {
    VerificationReport r;
    r.name = "susy_pairing";
    r.tolerance = 1e-5;
    try {
        radial::Operator op = make_operator(p, mesh);
        bool dir = p.bc.at_one.is_dirichlet();
        Spectrum parent = spectrum_of(op, n + 1, mesh);
        double E0 = parent[0].lambda_sq;
        if (dir) E0 -= std::max(1.0, 0.5 * std::abs(E0));
        radial::Operator q = partner_operator(op, E0, dir);
        auto a = values(parent);
        if (dir) a.pop_back();
        else a.erase(a.begin());
        auto b = values(spectrum_of(q, n, mesh));
        match(r, a, b, "lambda_sq");
    } catch (const NumericError& e) {
        r.note = e.what();
    }
    r.finish();
    return r;
}

VerificationReport verify_witten_pairing(const MorseFunction& h, double epsilon, int n, const Mesh& mesh) {
    VerificationReport r;
    r.name = "witten_pairing";
    r.tolerance = 1e-5;
    try {
        SchrodingerProblem base;
        base.x_max = 1.0;
        SchrodingerProblem even = base, odd = base;
        even.bc.at_zero = {EndpointClass::LimitCircle, Extension::MaxNonPrincipal};
        odd.bc.at_zero = {EndpointClass::LimitCircle, Extension::MinPrincipal};
        auto a = solve_half_line(deformed_potential(even, {h, epsilon, -1}, true), n + 1, mesh);
        auto b = solve_half_line(deformed_potential(odd, {h, epsilon, +1}, true), n, mesh);
        auto va = values(a.spectrum);
        double zero_tol = 1e-6 * std::max(1.0, epsilon);
        auto nz = drop_zero_modes(va, zero_tol);
        if (nz.size() + 1 != va.size()) r.note = "expected exactly one zero mode on the Neumann side";
        match(r, nz, values(b.spectrum), "lambda_sq");
    } catch (const NumericError& e) {
        r.note = e.what();
    }
    r.finish();
    return r;
}

VerificationReport verify_star_duality(const Rational& B, const RealPowerFunction& potential, int n,
                                       const Mesh& mesh) {
    VerificationReport r;
    r.name = "star_duality";
    r.tolerance = 1e-5;
    auto problem = [&](const Rational& b, const RealPowerFunction& V, RobinCondition rc) {
        SLProblem p;
        p.weight = PowerFunction::monomial(Rational(1), b);
        p.potential = V;
        p.bc.at_one = rc;
        p.bc.at_zero.extension = Extension::MinPrincipal;
        p.bc.at_zero.kind = liouville_transform(p).bc.at_zero.kind;
        return p;
    };
    RealPowerFunction dual_V = potential;
    if (B != 0) dual_V.add_term(-to_double(B), Rational(-2));
    const double b = to_double(B);
    try {
        auto pn = problem(B, potential, RobinCondition::neumann());
        auto dn = problem(-B, dual_V, RobinCondition{-b, 1.0});
        match(r, values(eigenvalues_weighted(pn, n, mesh)), values(eigenvalues_weighted(dn, n, mesh)), "neumann");
        auto pd = problem(B, potential, RobinCondition::dirichlet());
        auto dd = problem(-B, dual_V, RobinCondition::dirichlet());
        match(r, values(eigenvalues_weighted(pd, n, mesh)), values(eigenvalues_weighted(dd, n, mesh)), "dirichlet");
    } catch (const NumericError& e) {
        r.note = e.what();
    }
    r.finish();
    return r;
}

VerificationReport verify_2d_oracle(const Rational& c, int mode_cutoff, const Grid2d& grid, int n) {
    VerificationReport r;
    r.name = "oracle2d";
    r.tolerance = 1e-3;
    try {
        ModelSpace space = cone_over_circle(c);
        ComplexSpec spec{ComplexKind::DeRham, Ideal::Min, BoundaryType::D, Rational(0)};
        std::vector<SpectrumEntry> uni;
        double bound = INFINITY;
        for (int m = 0; m <= mode_cutoff + 1; ++m) {
            LinkMode mode;
            mode.mu = {static_cast<double>(m)};
            mode.multidegree = {{0}};
            SLProblem p = build_sl(space, mode, m == 0 ? FormType::E : FormType::T1, spec);
            Spectrum s = eigenvalues_weighted(p, m == mode_cutoff + 1 ? 1 : n, {});
            if (m == mode_cutoff + 1) {
                bound = s[0].lambda_sq;
                break;
            }
            for (auto e : s.entries) {
                e.multiplicity = m == 0 ? 1 : 2;
                uni.push_back(e);
            }
        }
        uni = merge_degenerate(uni);
        std::vector<double> per_mode;
        for (const auto& e : uni)
            for (int k = 0; k < e.multiplicity; ++k) per_mode.push_back(e.lambda_sq);
        std::sort(per_mode.begin(), per_mode.end());
        // only the part of the union that higher modes cannot reach
        while (!per_mode.empty() && per_mode.back() >= bound) per_mode.pop_back();
        int want = std::min<int>(n, per_mode.size());
        // fewer than n below the bound: compare what the cutoff resolves
        if (want == 0) throw NumericError("mode cutoff resolves no eigenvalue");
        per_mode.resize(want);

        Grid2d g = grid;
        if (c > 1) g.x_min = std::max(g.x_min, 1e-4);
        std::vector<double> two_d = cone_laplacian_2d(to_double(c), want, g);
        for (int i = 0; i < want; ++i)
            r.add("lambda_sq[" + std::to_string(i) + "]", per_mode[i], two_d[i],
                  std::abs(two_d[i] - per_mode[i]) / std::abs(per_mode[i]));

        // multiplicity pattern of the grid spectrum
        std::vector<SpectrumEntry> grp;
        for (double v : two_d) grp.push_back({v, 1, 0.0});
        grp = merge_degenerate(grp, 1e-6);
        std::vector<SpectrumEntry> ref;
        for (double v : per_mode) ref.push_back({v, 1, 0.0});
        ref = merge_degenerate(ref, 1e-6);
        std::size_t k = std::min(grp.size(), ref.size());
        // the top group may be cut by the count
        for (std::size_t i = 0; i + 1 < k; ++i)
            if (grp[i].multiplicity != ref[i].multiplicity) {
                std::ostringstream os;
                os << "multiplicity mismatch at group " << i << ": " << grp[i].multiplicity << " vs "
                   << ref[i].multiplicity;
                r.note = os.str();
            }
        if (grp.size() != ref.size()) r.note = "different number of eigenvalue groups";
    } catch (const NumericError& e) {
        r.note = e.what();
    }
    r.finish();
    return r;
}

VerificationReport verify_mckean_singer(const McKeanSingerFixture& fx, const Mesh& mesh) {
    VerificationReport r;
    r.name = "mckean_singer";
    r.tolerance = 1e-10;
    ModelSpace space = cone_over_circle(fx.c);
    ComplexSpec spec{ComplexKind::DeRham, Ideal::Min, BoundaryType::N, Rational(0)};
    auto modes = torus_link_modes(space, {0, 1}, fx.mode_cutoff);
    const int n = fx.n_per_type;
    try {
        std::vector<DegreeSpectra> deg(3);
        for (int q = 0; q < 3; ++q) deg[q].degree = q;
        std::vector<LinkMode> harmonic_modes;
        auto weight_of = [&](const LinkMode& m) {
            int k = m.fourier.empty() ? 0 : m.fourier[0];
            return std::polar(static_cast<double>(m.multiplicity), k * fx.rotation);
        };
        auto levels = [&](const Spectrum& s, const LinkMode& m, std::vector<HeatLevel>& out,
                          std::vector<HarmonicLevel>* zero) {
            for (const auto& e : s.entries) {
                if (std::abs(e.lambda_sq) <= 1e-8) {
                    if (!zero) throw SusyFailure("zero mode in an exact or rescaled family");
                    for (int k = 0; k < e.multiplicity; ++k) zero->push_back({m.mu_total(), weight_of(m)});
                    continue;
                }
                for (int k = 0; k < e.multiplicity; ++k) out.push_back({e.lambda_sq, m.mu_total(), weight_of(m)});
            }
        };
        for (const auto& m : modes) {
            bool harmonic = m.mu_total() == 0.0;
            int k = m.multidegree.total();
            if (harmonic) {
                harmonic_modes.push_back(m);
                // E in degree k, O in degree k + 1; the O spectrum through the other pipeline
                SLProblem pe = build_sl(space, m, FormType::E, spec);
                SLProblem po = build_sl(space, m, FormType::O, spec);
                Spectrum se = eigenvalues_weighted(pe, n + 1, mesh);
                Spectrum so = eigenvalues(liouville_transform(po), n + 1, mesh);
                std::vector<HeatLevel> co, ex;
                std::vector<HarmonicLevel> o_zero;
                levels(se, m, co, &deg[k].harmonic);
                levels(so, m, ex, &o_zero);
                // same count on both sides of the pairing
                std::size_t keep = std::min<std::size_t>({static_cast<std::size_t>(n), co.size(), ex.size()});
                deg[k].coexact.insert(deg[k].coexact.end(), co.begin(), co.begin() + keep);
                deg[k + 1].exact.insert(deg[k + 1].exact.end(), ex.begin(), ex.begin() + keep);
                continue;
            }
            if (k != 0) continue;  // link-exact 1-forms are the d of the 0-form modes
            SLProblem t1 = build_sl(space, m, FormType::T1, spec);
            SLProblem t2 = build_sl(space, m, FormType::T2, spec);
            SLProblem t3 = build_sl(space, m, FormType::T3, spec);
            SLProblem t4 = build_sl(space, m, FormType::T4, spec);
            levels(eigenvalues_weighted(t1, n, mesh), m, deg[0].coexact, nullptr);
            levels(eigenvalues(liouville_transform(t2), n, mesh), m, deg[1].exact, nullptr);
            levels(eigenvalues_weighted(t3, n, mesh), m, deg[1].coexact, nullptr);
            levels(eigenvalues(liouville_transform(t4), n, mesh), m, deg[2].exact, nullptr);
        }

        auto basis = derham_harmonic_basis(space, harmonic_modes, spec);
        double count = 0.0;
        for (const auto& [q, b] : basis) count += (q % 2 ? -1.0 : 1.0) * b.rank();
        double numeric_count = 0.0;
        for (const auto& d : deg) numeric_count += (d.degree % 2 ? -1.0 : 1.0) * d.harmonic.size();
        r.add("harmonic count (numerical zero modes)", count, numeric_count, std::abs(count - numeric_count));

        std::vector<double> at_minus_one;
        for (double t : fx.times) {
            HeatSupertrace st = truncated_heat_supertrace(deg, t, fx.s, 1e-5);
            std::complex<double> v = st.at(-1.0);
            at_minus_one.push_back(v.real());
            r.add("b=-1 at t=" + std::to_string(t), count, v.real(), std::abs(v - count));
            // raw alternating sum over the independently solved families
            std::complex<double> raw = 0.0;
            for (const auto& d : deg) {
                double sg = d.degree % 2 ? -1.0 : 1.0;
                for (const auto& h : d.harmonic) raw += sg * std::exp(-fx.s * h.link_mu) * h.weight;
                for (const auto& l : d.coexact) raw += sg * std::exp(-(t + fx.s) * l.lambda_sq - fx.s * l.link_mu) * l.weight;
                for (const auto& l : d.exact) raw += sg * std::exp(-(t + fx.s) * l.lambda_sq - fx.s * l.link_mu) * l.weight;
            }
            r.details.push_back({"raw alternating sum at t=" + std::to_string(t), count, raw.real(), std::abs(raw - count)});
        }
        for (std::size_t i = 1; i < at_minus_one.size(); ++i)
            r.add("t-independence", at_minus_one[0], at_minus_one[i], std::abs(at_minus_one[i] - at_minus_one[0]));
    } catch (const SusyFailure& e) {
        r.note = e.what();
    } catch (const NumericError& e) {
        r.note = e.what();
    }
    r.finish();
    return r;
}

}  // namespace conespec
