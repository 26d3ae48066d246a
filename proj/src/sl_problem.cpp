#include "conespec/sl_problem.hpp"

#include <cmath>

#include "conespec/errors.hpp"

namespace conespec {

std::string to_string(FormType t) {
    switch (t) {
        case FormType::T1: return "T1";
        case FormType::T2: return "T2";
        case FormType::T3: return "T3";
        case FormType::T4: return "T4";
        case FormType::E: return "E";
        case FormType::O: return "O";
    }
    return "?";
}

FormType form_type_from_string(const std::string& s) {
    if (s == "T1") return FormType::T1;
    if (s == "T2") return FormType::T2;
    if (s == "T3") return FormType::T3;
    if (s == "T4") return FormType::T4;
    if (s == "E") return FormType::E;
    if (s == "O") return FormType::O;
    throw ConfigError("unknown form type '" + s + "'");
}

Rational SLProblem::weight_exponent() const {
    if (!weight.is_single_term() || weight.terms().front().coefficient <= 0)
        throw ModelError("weight must be a single positive power of x");
    return weight.leading_exponent();
}

IndicialRoots indicial_roots(double c2) {
    double disc = 0.25 + c2;
    if (disc < -1e-14) throw NumericError("complex indicial roots: inverse-square coefficient below -1/4");
    double r = std::sqrt(std::max(disc, 0.0));
    return {c2, 0.5 - r, 0.5 + r};
}

double inverse_square_coefficient(const RealPowerFunction& V) { return V.coefficient_of(Rational(-2)); }

static bool is_rescaled(FormType t) { return t == FormType::T3 || t == FormType::T4; }
static bool is_exactlike_dolbeault(FormType t) {
    return t == FormType::T3 || t == FormType::T4 || t == FormType::O;
}

RobinCondition boundary_condition_for(FormType type, const ComplexSpec& spec, const PowerFunction& F,
                                      std::optional<double> nu_over_f0_at_one, double x_boundary) {
    double logderF = F.derivative()(x_boundary) / F(x_boundary);
    if (spec.kind == ComplexKind::DeRham) {
        if (spec.B == BoundaryType::N)
            return is_rescaled(type) ? RobinCondition::dirichlet() : RobinCondition::neumann();
        if (!is_rescaled(type)) return RobinCondition::dirichlet();
        return {logderF, 1.0};  // (vF)' = 0
    }
    if (!nu_over_f0_at_one) throw ModelError("Dolbeault boundary conditions need nu/f0 at the boundary");
    double k = *nu_over_f0_at_one;
    if (spec.B == BoundaryType::N) {
        if (is_exactlike_dolbeault(type)) return RobinCondition::dirichlet();
        return {-k, 1.0};  // u' = (nu/f0) u
    }
    if (!is_exactlike_dolbeault(type)) return RobinCondition::dirichlet();
    return {logderF - k, 1.0};  // (F u)' = (nu/f0) F u
}

EndpointClass classify_endpoint_zero(const RealPowerFunction& V) {
    if (V.is_zero()) return EndpointClass::LimitCircle;
    const auto& t = V.lowest_term();
    if (t.exponent < -2) {
        if (t.coefficient > 0) return EndpointClass::LimitPoint;
        throw ModelError("potential more singular than x^-2 with negative coefficient");
    }
    if (t.exponent == -2) return t.coefficient >= 0.75 ? EndpointClass::LimitPoint : EndpointClass::LimitCircle;
    return EndpointClass::LimitCircle;
}

EndpointClass classify_endpoint_zero(const SchrodingerProblem& sp) { return classify_endpoint_zero(sp.potential); }

SchrodingerProblem liouville_transform(const SLProblem& p) {
    Rational B = p.weight_exponent();
    double b = to_double(B);
    SchrodingerProblem sp;
    sp.potential = p.potential;
    sp.potential.add_term(to_double(B * (B - 2) / 4), Rational(-2));
    sp.extra_potential = p.extra_potential;
    sp.x_max = p.x_max;
    sp.bc.at_zero = p.bc.at_zero;
    sp.bc.at_one = p.bc.at_one;
    if (!p.bc.at_one.is_dirichlet() && std::isfinite(p.x_max))
        sp.bc.at_one.gamma1 = p.bc.at_one.gamma1 - p.bc.at_one.gamma2 * b / (2.0 * p.x_max);
    sp.weight_exponent = B;
    sp.origin_indicial = indicial_roots(inverse_square_coefficient(sp.potential));
    sp.bc.at_zero.kind = classify_endpoint_zero(sp.potential);
    return sp;
}

SLProblem build_sl(const ModelSpace& space, const LinkMode& mode, FormType type, const ComplexSpec& spec) {
    const auto& fs = space.factors();
    if (mode.mu.size() != fs.size()) throw ModelError("mode has wrong number of mu entries");
    bool all_zero = true;
    for (double m : mode.mu) all_zero = all_zero && m == 0.0;
    bool harmonic_type = type == FormType::E || type == FormType::O;
    if (harmonic_type && !all_zero) throw ModelError("E/O forms need a link-harmonic mode (mu = 0)");
    if (!harmonic_type && all_zero) throw ModelError("T-type forms need a mode with mu > 0");

    AdjointRescaling ar = adjoint_rescaling(space, mode.multidegree);
    SLProblem p;
    p.weight = is_rescaled(type) ? ar.F.reciprocal() : ar.F;
    for (std::size_t j = 0; j < fs.size(); ++j)
        if (mode.mu[j] != 0.0) p.potential.add_term(mode.mu[j] * mode.mu[j], -2 * fs[j].exponent);
    p.x_max = space.x_max();

    std::optional<double> nu_over_f0;
    if (spec.kind == ComplexKind::Dolbeault) {
        if (!mode.nu) throw ModelError("Dolbeault complex needs nu on every mode");
        double alpha = space.reeb_alpha() ? to_double(*space.reeb_alpha()) : 1.0;
        nu_over_f0 = (*mode.nu + to_double(spec.twist_shift)) / std::pow(p.x_max, alpha);
    }
    p.bc.at_one = boundary_condition_for(type, spec, p.weight, nu_over_f0, p.x_max);

    Rational B = p.weight_exponent();
    if (harmonic_type && B == 0) {
        // flat radial factor: E is the Neumann end, O the Dirichlet end
        p.bc.at_zero = {EndpointClass::LimitCircle,
                        type == FormType::E ? Extension::MaxNonPrincipal : Extension::MinPrincipal};
        return p;
    }
    p.bc.at_zero.extension = spec.W == Ideal::Min ? Extension::MinPrincipal : Extension::MaxNonPrincipal;
    p.bc.at_zero.kind = liouville_transform(p).bc.at_zero.kind;
    return p;
}

}  // namespace conespec
