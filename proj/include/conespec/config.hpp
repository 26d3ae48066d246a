#pragma once

#include <optional>
#include <string>
#include <vector>

#include "conespec/cohomology.hpp"
#include "conespec/eigensolver.hpp"
#include "conespec/model.hpp"
#include "conespec/oracle2d.hpp"
#include "conespec/sl_problem.hpp"

namespace conespec {

struct TorusModes {
    DegreeRange degrees;
    double mu_cutoff = 1.0;
    bool with_nu = false;
    bool operator==(const TorusModes&) const = default;
};

struct ModesConfig {
    std::optional<TorusModes> torus;
    std::vector<LinkMode> explicit_modes;
    std::vector<FormType> form_types{FormType::T1};
    bool operator==(const ModesConfig&) const = default;
};

struct WittenConfig {
    Rational c{1};      // h = scale x^{c+1}/(c+1)
    Rational scale{1};
    std::vector<double> epsilons;
    std::optional<int> K;  // default from the form type
    double threshold = 1e-3;
    bool operator==(const WittenConfig&) const = default;
};

struct SolverConfig {
    Mesh mesh;
    int n_eigen = 5;
    double tolerance = 1e-8;
    bool operator==(const SolverConfig&) const = default;
};

struct OutputConfig {
    std::string format = "csv";
    std::string path;  // empty: stdout
    bool operator==(const OutputConfig&) const = default;
};

// one local Dolbeault basis
struct BasisConfig {
    Rational alpha{1};
    Rational F_exponent{1};
    ComplexSpec complex{ComplexKind::Dolbeault, Ideal::Min, BoundaryType::N, Rational(0)};
    NuData nu;
    std::optional<NuWindow> window;
    Rational lambda_per_nu{1};
    bool operator==(const BasisConfig&) const = default;
};

struct CharacterPiece {
    BasisConfig todd;
    std::optional<BasisConfig> canonical;  // chi_y = todd + y canonical
    Rational y{0};
    bool invert = false;  // fixed point with the opposite orientation, lambda -> 1/lambda
    bool operator==(const CharacterPiece&) const = default;
};

struct SupertraceConfig {
    std::vector<CharacterPiece> pieces;
    std::vector<double> s, theta;  // evaluation grid
    bool operator==(const SupertraceConfig&) const = default;
};

struct RadialFixtureConfig {
    Rational B, c{1};
    double mu = 0.0;
    std::string right = "neumann";  // neumann | dirichlet
    bool operator==(const RadialFixtureConfig&) const = default;
};

struct VerifyConfig {
    std::string which = "all";  // liouville | pairing | star | oracle2d | mckean-singer | all
    std::vector<RadialFixtureConfig> fixtures;
    int n = 10;
    std::vector<Rational> star_B;
    std::vector<double> star_mu{0.0, 1.0};
    Rational oracle_c{1};
    int oracle_cutoff = 6;
    Grid2d grid;
    int mckean_cutoff = 6;
    bool operator==(const VerifyConfig&) const = default;
};

struct RunConfig {
    ModelSpace space;
    ComplexSpec complex;
    ModesConfig modes;
    std::optional<WittenConfig> witten;
    SolverConfig solver;
    OutputConfig output;
    std::optional<BasisConfig> cohomology;  // Dolbeault basis request
    std::optional<SupertraceConfig> supertrace;
    std::optional<VerifyConfig> verify;
    bool operator==(const RunConfig&) const = default;
};

RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);
std::string dump_config(const RunConfig& cfg);

std::vector<LinkMode> resolve_modes(const RunConfig& cfg);

struct CommandResult {
    int exit_code = 0;
    std::string text;
};

CommandResult cmd_spectrum(const RunConfig& cfg, int jobs = 1);
CommandResult cmd_cohomology(const RunConfig& cfg);
CommandResult cmd_supertrace(const RunConfig& cfg);
CommandResult cmd_verify(const RunConfig& cfg, int jobs = 1);

// runs a command, mapping exceptions to exit codes 2 (config/model) and 3 (numeric)
CommandResult run_command(const std::string& verb, const RunConfig& cfg, int jobs);

}  // namespace conespec
