#include "conespec/cohomology.hpp"

#include "conespec/errors.hpp"

namespace conespec {

int CohomologyBasis::rank() const {
    int r = 0;
    for (const auto& s : sections) r += s.multiplicity;
    return r;
}

bool l2_admissible(const Profile& profile, const PowerFunction& F) {
    if (!F.is_single_term()) throw ModelError("admissibility needs a single-term weight");
    const Rational B = F.leading_exponent();
    if (const auto* e = std::get_if<ExpPowerProfile>(&profile)) {
        if (e->exponent >= 0) throw ModelError("exp-power profile needs a negative exponent");
        if (e->kappa < 0) return true;
        if (e->kappa > 0) return false;
        return 0 + B > -1;
    }
    const auto& p = std::get<PowerProfile>(profile);
    return 2 * p.a + B > -1;
}

std::map<int, CohomologyBasis> derham_harmonic_basis(const ModelSpace& space, const std::vector<LinkMode>& modes,
                                                     const ComplexSpec& spec) {
    if (spec.kind != ComplexKind::DeRham) throw ModelError("de Rham basis requested for a non de Rham complex");
    if (spec.B == BoundaryType::D)
        throw ModelError("relative basis is the Hodge-star image of the absolute one in complementary degree");
    std::map<int, CohomologyBasis> out;
    for (const auto& m : modes) {
        for (double mu : m.mu)
            if (mu != 0.0) throw ModelError("harmonic basis takes link-harmonic modes only");
        AdjointRescaling ar = adjoint_rescaling(space, m.multidegree);
        int q = m.multidegree.total();
        auto& basis = out[q];
        basis.degree = q;
        Profile prof = PowerProfile{Rational(0)};
        if (!l2_admissible(prof, ar.F)) continue;
        HarmonicSection s;
        s.profile = prof;
        s.mode = m;
        s.degree = q;
        s.weight_exponent = ar.B;
        s.lambda_weight = 0;
        s.multiplicity = m.multiplicity;
        basis.sections.push_back(std::move(s));
    }
    return out;
}

namespace {

struct Rule {
    Rational alpha;
    ComplexSpec spec;
    PowerFunction F;
    Rational B;

    Profile profile(const Rational& nu_p) const {
        bool tangential = spec.B == BoundaryType::N;
        Rational a = tangential ? nu_p : Rational(-nu_p);
        if (alpha == 1) return PowerProfile{a};
        return ExpPowerProfile{to_double(a / (1 - alpha)), 1 - alpha};
    }

    bool admissible(const Rational& nu) const {
        Rational nu_p = nu - spec.twist_shift;
        Profile p = profile(nu_p);
        if (spec.B == BoundaryType::N) {
            if (!l2_admissible(p, F)) return false;
            if (spec.W == Ideal::Min) {
                if (const auto* pp = std::get_if<PowerProfile>(&p)) return pp->a >= 0;
            }
            return true;
        }
        // normal sections: rescaled variable against F^{-1}
        if (!l2_admissible(p, F.reciprocal())) return false;
        if (spec.W == Ideal::Min) {
            // unrescaled F^{-1} v must stay bounded
            if (const auto* pp = std::get_if<PowerProfile>(&p)) return pp->a - B >= 0;
            const auto& ep = std::get<ExpPowerProfile>(p);
            if (ep.kappa == 0.0) return -B >= 0;
        }
        return true;
    }

    // crossover estimate for the lattice scan
    Rational threshold() const {
        Rational t = spec.twist_shift;
        if (alpha != 1) return t;
        if (spec.B == BoundaryType::N) return t + (-1 - B) / 2;
        return t + (1 - B) / 2;
    }

    HarmonicSection section(const Rational& nu, const Rational& lambda_per_nu) const {
        HarmonicSection s;
        s.profile = profile(nu - spec.twist_shift);
        s.nu = nu;
        s.degree = spec.B == BoundaryType::N ? 0 : 1;
        s.weight_exponent = B;
        s.lambda_weight = nu * lambda_per_nu;
        return s;
    }
};

Rational lattice_point(const NuLattice& L, const BigInt& n) { return L.shift + Rational(n) * L.step; }

}  // namespace

CohomologyBasis dolbeault_harmonic_basis(const Rational& alpha, const NuData& nu, const ComplexSpec& spec,
                                         const PowerFunction& F, std::optional<NuWindow> window,
                                         const Rational& lambda_per_nu) {
    if (spec.kind != ComplexKind::Dolbeault) throw ModelError("Dolbeault basis requested for a de Rham complex");
    if (alpha < 1) throw ModelError("Reeb exponent alpha must be >= 1");
    if (!F.is_single_term()) throw ModelError("weight must be a single power of x");
    Rule rule{alpha, spec, F, F.leading_exponent()};
    CohomologyBasis basis;
    basis.lambda_per_nu = lambda_per_nu;
    basis.degree = spec.B == BoundaryType::N ? 0 : 1;

    if (!nu.lattice) {
        if (!window) throw ModelError("non-arithmetic nu data needs an enumeration window");
        AdmissibleNu adm;
        adm.kind = AdmissibleNu::Kind::Finite;
        for (const auto& v : nu.explicit_values) {
            if (v < window->lo || v > window->hi) continue;
            if (!rule.admissible(v)) continue;
            adm.values.push_back(v);
            basis.sections.push_back(rule.section(v, lambda_per_nu));
        }
        basis.admissible_nu = adm;
        return basis;
    }

    const NuLattice& L = *nu.lattice;
    if (L.step <= 0) throw ModelError("nu lattice step must be positive");
    BigInt n0 = floor_big((rule.threshold() - L.shift) / L.step);
    const bool upward = spec.B == BoundaryType::N;
    AdmissibleNu adm;
    adm.step = L.step;
    adm.kind = upward ? AdmissibleNu::Kind::AllGE : AdmissibleNu::Kind::AllLE;
    bool found = false;
    for (int k = -4; k <= 4 && !found; ++k) {
        // first admissible point walking away from the excluded side
        BigInt n = upward ? BigInt(n0 + k) : BigInt(n0 - k);
        BigInt prev = upward ? BigInt(n - 1) : BigInt(n + 1);
        if (rule.admissible(lattice_point(L, n)) && !rule.admissible(lattice_point(L, prev))) {
            adm.bound = lattice_point(L, n);
            found = true;
        }
    }
    if (!found) throw NumericError("could not locate the admissibility threshold on the nu lattice");
    basis.admissible_nu = adm;

    Rational lo, hi;
    if (window) {
        lo = window->lo;
        hi = window->hi;
    } else if (upward) {
        lo = adm.bound;
        hi = adm.bound + 7 * L.step;
    } else {
        lo = adm.bound - 7 * L.step;
        hi = adm.bound;
    }
    for (BigInt n = floor_big((lo - L.shift) / L.step); lattice_point(L, n) <= hi; ++n) {
        Rational v = lattice_point(L, n);
        if (v < lo || !rule.admissible(v)) continue;
        basis.sections.push_back(rule.section(v, lambda_per_nu));
    }
    return basis;
}

}  // namespace conespec
