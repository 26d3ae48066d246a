#pragma once

#include <utility>
#include <vector>

#include "conespec/radial_solver.hpp"
#include "conespec/sl_problem.hpp"

namespace conespec {

struct Mesh {
    int N = 4000;
    double grading = 2.0;
    double x_min_rel = 1e-6;  // x_min = x_min_rel * x_max
    bool operator==(const Mesh&) const = default;
};

struct SpectrumEntry {
    double lambda_sq = 0.0;
    int multiplicity = 1;
    double residual = 0.0;
    double lambda() const;
};

struct MeshReport {
    int N = 0;
    double grading = 0.0;
    double x_min = 0.0;
    double x_start = 0.0;
};

struct Spectrum {
    std::vector<SpectrumEntry> entries;
    MeshReport mesh;
    std::size_t size() const { return entries.size(); }
    const SpectrumEntry& operator[](std::size_t i) const { return entries[i]; }
};

struct Eigenfunction {
    double lambda_sq = 0.0;
    std::vector<std::pair<double, double>> samples;  // (x, u(x))
};

// radial operator in the u variable of a weighted problem (B = 0 for Schroedinger)
radial::Operator make_operator(const SchrodingerProblem& sp, const Mesh& mesh);
radial::Operator make_operator(const SLProblem& p, const Mesh& mesh);

Spectrum eigenvalues(const SchrodingerProblem& sp, int n_eigen, const Mesh& mesh = {});
Spectrum eigenvalues_weighted(const SLProblem& p, int n_eigen, const Mesh& mesh = {});

std::vector<Eigenfunction> eigenfunctions(const SchrodingerProblem& sp, int n_eigen, const Mesh& mesh = {});
std::vector<Eigenfunction> eigenfunctions_weighted(const SLProblem& p, int n_eigen, const Mesh& mesh = {});

Spectrum spectrum_of(const radial::Operator& op, int n_eigen, const Mesh& mesh);

// merge entries whose lambda^2 agree to rel_tol, summing multiplicities
std::vector<SpectrumEntry> merge_degenerate(std::vector<SpectrumEntry> entries, double rel_tol = 1e-7);

}  // namespace conespec
