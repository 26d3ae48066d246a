#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "conespec/power_function.hpp"
#include "conespec/sl_problem.hpp"
#include "conespec/tridiagonal.hpp"

namespace conespec::radial {

// behaviour of admissible u near the origin
struct ZeroBehaviour {
    enum class Kind { Exponent, Subdominant };
    Kind kind = Kind::Exponent;
    double exponent = 0.0;  // u ~ x^exponent
    double root_gap = 1.0;  // distance to the companion indicial root
    bool principal = true;
};

// -(1/F)(F u')' + V u = lambda^2 u,  F = x^B, on [x_lo, x_right]
struct Operator {
    double B = 0.0;
    std::function<double(double)> scaled_potential;  // x^2 V(x)
    std::optional<RealPowerFunction> power_potential;  // V itself when it is a power function
    double x_right = 1.0;
    RobinCondition right = RobinCondition::dirichlet();
    ZeroBehaviour zero;
    double x_min = 1e-6;    // inner end of the finite-volume mesh
    double x_start = 1e-6;  // where shooting starts
};

struct FdSystem {
    SymTridiagonal T;
    std::vector<double> x;     // full mesh
    std::vector<double> mass;  // weight * trapezoid weight on the full mesh, w variable
    int first = 0;             // first unknown node
    double tau = 0.0;          // u = x^tau w
};

// N intervals on [a, b]: geometric near a, uniform with spacing grading*(b-a)/N in the bulk
std::vector<double> make_mesh(double a, double b, int N, double grading);

FdSystem assemble(const Operator& op, int N, double grading);

// x u'/u at x_start for the admissible branch
double start_log_derivative(const Operator& op, double lambda_sq);

// scaled Pruefer angle at x_right; theta = atan2(u, x u')
double prufer_angle(const Operator& op, double lambda_sq);

struct AngleSamples {
    std::vector<double> t, theta, dtheta;  // t = ln x
    double operator()(double x) const;     // cubic Hermite in t
};
AngleSamples prufer_samples(const Operator& op, double lambda_sq, int samples);

double target_angle(const Operator& op, int k);

struct Refined {
    double lambda_sq = 0.0;
    double residual = 0.0;
};
Refined refine(const Operator& op, int k, double guess);

// lowest n eigenvalues: finite-volume seeds then shooting refinement
std::vector<Refined> solve(const Operator& op, int n, int N, double grading);

}  // namespace conespec::radial
