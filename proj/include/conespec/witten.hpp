#pragma once

#include <vector>

#include "conespec/eigensolver.hpp"
#include "conespec/model.hpp"
#include "conespec/sl_problem.hpp"

namespace conespec {

struct WittenDeformation {
    MorseFunction h = MorseFunction::power_law(Rational(1));
    double epsilon = 0.0;
    int K = -1;
};

// V += eps^2 (h')^2 + K eps h''; half_line moves the outer end to infinity
SchrodingerProblem deformed_potential(const SchrodingerProblem& base, const WittenDeformation& d,
                                      bool half_line = false);

int k_sign(bool is_normal_form);

struct SweepRow {
    double epsilon = 0.0;
    Spectrum spectrum;
    double x_truncation = 0.0;
    int count_below = 0;
};

// half-line spectra for each epsilon, truncated where V(x_R) >= 10 max lambda^2 (Dirichlet there)
std::vector<SweepRow> semiclassical_sweep(const SchrodingerProblem& base, const MorseFunction& h, int K,
                                          const std::vector<double>& epsilons, int n_eigen, double threshold,
                                          const Mesh& mesh = {});

// solve a half-line problem by the same confinement rule
SweepRow solve_half_line(const SchrodingerProblem& sp, int n_eigen, const Mesh& mesh = {});

}  // namespace conespec
