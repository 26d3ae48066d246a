#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "conespec/power_function.hpp"
#include "conespec/rational.hpp"

namespace conespec {

struct LinkFactor {
    int link_dim = 1;
    Rational exponent{1};
    std::optional<std::vector<double>> torus_lengths;

    bool operator==(const LinkFactor&) const = default;
};

// model cone or horn (0, x_max] x Z_1 x ... x Z_N, metric dx^2 + sum x^{2 c_j} g_j
class ModelSpace {
public:
    ModelSpace() = default;
    ModelSpace(std::vector<LinkFactor> factors, std::optional<Rational> reeb_alpha = std::nullopt,
               double x_max = 1.0);

    const std::vector<LinkFactor>& factors() const { return factors_; }
    const std::optional<Rational>& reeb_alpha() const { return reeb_alpha_; }
    double x_max() const { return x_max_; }
    int dim() const;  // 1 + sum of link dimensions

    bool operator==(const ModelSpace&) const = default;

private:
    std::vector<LinkFactor> factors_;
    std::optional<Rational> reeb_alpha_;
    double x_max_ = 1.0;
};

ModelSpace cone_over_circle(const Rational& c, double x_max = 1.0);
ModelSpace cone_over_torus(int dim, const Rational& c, double x_max = 1.0);

struct MultiDegree {
    std::vector<int> k;
    int total() const;
    bool operator==(const MultiDegree&) const = default;
};

struct LinkMode {
    std::vector<double> mu;  // per factor
    MultiDegree multidegree;
    std::optional<double> nu;
    int multiplicity = 1;
    std::vector<int> fourier;  // integer lattice vector, concatenated over factors
    std::string key;

    double mu_total() const;
    bool operator==(const LinkMode&) const = default;
};

PowerFunction rescaling_factor(const ModelSpace& space, const MultiDegree& k);
PowerFunction volume_rescaling(const ModelSpace& space);

struct AdjointRescaling {
    PowerFunction F;
    Rational B;
    bool witt_violation = false;  // B == 0, middle-degree obstruction
};
AdjointRescaling adjoint_rescaling(const ModelSpace& space, const MultiDegree& k);

// radial Morse functions

struct PowerLawMorse {
    Rational c{1};
    Rational scale{1};  // h = scale * x^{c+1}/(c+1)
};

struct SampledMorse {
    std::vector<double> x, h1, h2;  // h', h'' on an increasing grid
    double d1(double at) const;
    double d2(double at) const;
};

struct MorseFunction {
    std::variant<PowerLawMorse, SampledMorse> kind;

    static MorseFunction power_law(Rational c, Rational scale = Rational(1));
    static MorseFunction sampled(std::vector<double> x, std::vector<double> h1, std::vector<double> h2);
    static MorseFunction from_derivatives(const std::function<double(double)>& h1,
                                          const std::function<double(double)>& h2, double x_lo,
                                          double x_hi, int samples = 20001);

    bool is_power_law() const { return std::holds_alternative<PowerLawMorse>(kind); }
    double d1(double x) const;
    double d2(double x) const;
    MorseFunction negated() const;
};

struct MorseCheck {
    bool ok = false;
    std::optional<double> witness;  // first failing abscissa
};

MorseCheck check_radial_morse(const MorseFunction& h, double c_check, double x_probe_max = 1e3);

enum class ReebBound { BoundingBelow, Unbounded };
ReebBound classify_reeb_bounding(const Rational& alpha);

struct DegreeRange {
    int lo = 0, hi = 0;
    bool operator==(const DegreeRange&) const = default;
};

std::vector<LinkMode> torus_link_modes(const ModelSpace& space, DegreeRange degrees, double mu_cutoff,
                                       bool with_nu = false);

}  // namespace conespec
