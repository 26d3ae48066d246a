#pragma once

#include <vector>

namespace conespec {

struct Grid2d {
    int Nx = 600;
    int Ntheta = 64;
    double grading = 2.0;
    double x_min = 1e-6;
    bool operator==(const Grid2d&) const = default;
};

// lowest n eigenvalues of the scalar Laplacian on (0,1] x S^1 with metric dx^2 + x^{2c} dtheta^2,
// Dirichlet at x = 1: finite volumes in x, sixth-order periodic differences in theta
std::vector<double> cone_laplacian_2d(double c, int n, const Grid2d& grid = {});

}  // namespace conespec
