#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>

#include "conespec/model.hpp"
#include "conespec/power_function.hpp"

namespace conespec {

enum class FormType { T1, T2, T3, T4, E, O };
enum class ComplexKind { DeRham, Dolbeault };
enum class Ideal { Min, Max };
enum class BoundaryType { N, D };  // absolute / relative

std::string to_string(FormType t);
FormType form_type_from_string(const std::string& s);

struct ComplexSpec {
    ComplexKind kind = ComplexKind::DeRham;
    Ideal W = Ideal::Min;
    BoundaryType B = BoundaryType::N;
    Rational twist_shift{0};
    bool operator==(const ComplexSpec&) const = default;
};

// gamma1 u + gamma2 u' = 0
struct RobinCondition {
    double gamma1 = 0.0, gamma2 = 1.0;
    static RobinCondition dirichlet() { return {1.0, 0.0}; }
    static RobinCondition neumann() { return {0.0, 1.0}; }
    bool is_dirichlet() const { return gamma2 == 0.0; }
    bool is_neumann() const { return gamma1 == 0.0 && gamma2 != 0.0; }
    bool operator==(const RobinCondition&) const = default;
};

enum class EndpointClass { LimitPoint, LimitCircle };
enum class Extension { MinPrincipal, MaxNonPrincipal };

struct ZeroCondition {
    EndpointClass kind = EndpointClass::LimitCircle;
    std::optional<Extension> extension;
};

struct BoundaryCondition {
    ZeroCondition at_zero;
    RobinCondition at_one;
};

using RadialFunction = std::function<double(double)>;

// -(1/F)(F u')' + V u = lambda^2 u on (0, x_max]
struct SLProblem {
    PowerFunction weight = PowerFunction::constant(Rational(1));
    RealPowerFunction potential;
    RadialFunction extra_potential;  // V beyond the power part, may be empty
    double x_max = 1.0;
    BoundaryCondition bc;

    Rational weight_exponent() const;
};

struct IndicialRoots {
    double c2 = 0.0;
    double minus = 0.0, plus = 1.0;
};

// -v'' + V v = lambda^2 v
struct SchrodingerProblem {
    RealPowerFunction potential;
    RadialFunction extra_potential;
    double x_max = 1.0;  // infinity for the half line
    BoundaryCondition bc;
    Rational weight_exponent{0};  // B of the weighted problem it came from
    std::optional<IndicialRoots> origin_indicial;

    bool half_line() const { return std::isinf(x_max); }
};

IndicialRoots indicial_roots(double c2);
// total inverse-square coefficient of a potential
double inverse_square_coefficient(const RealPowerFunction& V);

SLProblem build_sl(const ModelSpace& space, const LinkMode& mode, FormType type, const ComplexSpec& spec);

RobinCondition boundary_condition_for(FormType type, const ComplexSpec& spec, const PowerFunction& F,
                                      std::optional<double> nu_over_f0_at_one, double x_boundary = 1.0);

SchrodingerProblem liouville_transform(const SLProblem& p);

EndpointClass classify_endpoint_zero(const SchrodingerProblem& sp);
EndpointClass classify_endpoint_zero(const RealPowerFunction& V);

}  // namespace conespec
