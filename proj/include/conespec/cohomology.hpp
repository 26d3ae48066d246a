#pragma once

#include <map>
#include <optional>
#include <variant>
#include <vector>

#include "conespec/model.hpp"
#include "conespec/sl_problem.hpp"

namespace conespec {

struct PowerProfile {
    Rational a;  // x^a
    bool operator==(const PowerProfile&) const = default;
};

struct ExpPowerProfile {
    double kappa = 0.0;  // exp(kappa x^exponent), exponent < 0
    Rational exponent;
    bool operator==(const ExpPowerProfile&) const = default;
};

using Profile = std::variant<PowerProfile, ExpPowerProfile>;

// square integrability near 0 of the profile against F dx
bool l2_admissible(const Profile& profile, const PowerFunction& F);

struct HarmonicSection {
    Profile profile;
    std::optional<LinkMode> mode;
    std::optional<Rational> nu;
    int degree = 0;
    Rational weight_exponent;  // exponent of the weight it was tested against
    Rational lambda_weight;    // exponent of lambda in the character
    int multiplicity = 1;
};

struct AdmissibleNu {
    enum class Kind { AllGE, AllLE, Finite };
    Kind kind = Kind::Finite;
    Rational bound;  // least (AllGE) or greatest (AllLE) admissible nu
    Rational step;
    std::vector<Rational> values;  // Finite
};

struct CohomologyBasis {
    std::vector<HarmonicSection> sections;
    std::optional<AdmissibleNu> admissible_nu;
    Rational lambda_per_nu{1};
    int degree = 0;
    int rank() const;
};

struct NuLattice {
    Rational shift{0};
    Rational step{1};
    bool operator==(const NuLattice&) const = default;
};

struct NuData {
    std::optional<NuLattice> lattice;
    std::vector<Rational> explicit_values;  // used when no lattice is given
    bool operator==(const NuData&) const = default;
};

struct NuWindow {
    Rational lo, hi;
    bool operator==(const NuWindow&) const = default;
};

// degree -> basis; only B = N, B = D goes through the Hodge star
std::map<int, CohomologyBasis> derham_harmonic_basis(const ModelSpace& space, const std::vector<LinkMode>& modes,
                                                     const ComplexSpec& spec);

CohomologyBasis dolbeault_harmonic_basis(const Rational& alpha, const NuData& nu, const ComplexSpec& spec,
                                         const PowerFunction& F, std::optional<NuWindow> window = std::nullopt,
                                         const Rational& lambda_per_nu = Rational(1));

}  // namespace conespec
