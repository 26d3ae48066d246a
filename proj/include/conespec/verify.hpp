#pragma once

#include <string>
#include <vector>

#include "conespec/eigensolver.hpp"
#include "conespec/model.hpp"
#include "conespec/oracle2d.hpp"
#include "conespec/sl_problem.hpp"
#include "conespec/witten.hpp"

namespace conespec {

struct ReportRow {
    std::string label;
    double reference = 0.0;
    double value = 0.0;
    double discrepancy = 0.0;
};

struct VerificationReport {
    std::string name;
    bool pass = false;
    double max_discrepancy = 0.0;
    double tolerance = 0.0;
    std::vector<ReportRow> details;
    std::string note;  // set when the check could not be carried out

    void add(std::string label, double reference, double value, double discrepancy);
    void finish();  // pass <=> max_discrepancy <= tolerance
};

// |a - b| / max(1, |a|, |b|)
double relative_gap(double a, double b);

// weight x^B, potential mu^2 x^{-2c}, Neumann at x_max, Min branch (Neumann end when B = mu = 0)
SLProblem radial_fixture(const Rational& B, const Rational& c, double mu, RobinCondition at_one = RobinCondition::neumann());

VerificationReport verify_liouville(const SLProblem& p, int n, const Mesh& mesh = {});

// first-order factorisation through the ground state (Robin end) or a nodeless solution below the
// spectrum (Dirichlet end); partner AA* is solved with its induced conditions
VerificationReport verify_susy_pairing(const SLProblem& p, int n, const Mesh& mesh = {});

// half-line Witten partners: K = -1 with the Neumann end against K = +1 with the Dirichlet end
VerificationReport verify_witten_pairing(const MorseFunction& h, double epsilon, int n, const Mesh& mesh = {});

// v = F u: (weight F, Neumann) ~ (weight 1/F, Robin v' = B v), (Dirichlet) ~ (Dirichlet)
VerificationReport verify_star_duality(const Rational& B, const RealPowerFunction& potential, int n = 8,
                                       const Mesh& mesh = {});

VerificationReport verify_2d_oracle(const Rational& c, int mode_cutoff, const Grid2d& grid = {}, int n = 12);

struct McKeanSingerFixture {
    Rational c{1};
    int mode_cutoff = 6;
    int n_per_type = 8;
    double s = 0.1;
    double rotation = 0.3;  // angle of the circle action in the weights
    std::vector<double> times{0.5, 1.0, 2.0};
};

VerificationReport verify_mckean_singer(const McKeanSingerFixture& fx = {}, const Mesh& mesh = {});

}  // namespace conespec
