#pragma once

#include <utility>
#include <vector>

namespace conespec {

struct SymTridiagonal {
    std::vector<double> d;  // diagonal, size n
    std::vector<double> e;  // off-diagonal, size n-1
    int size() const { return static_cast<int>(d.size()); }
};

std::pair<double, double> gershgorin_bounds(const SymTridiagonal& T);

// number of eigenvalues strictly below lambda
int sturm_count(const SymTridiagonal& T, double lambda);

// k-th eigenvalue (0-based, ascending) by Sturm bisection
double kth_eigenvalue(const SymTridiagonal& T, int k, double rel_tol = 4e-16);

std::vector<double> lowest_eigenvalues(const SymTridiagonal& T, int n);

// unit eigenvector for an eigenvalue already known to high accuracy
std::vector<double> inverse_iteration(const SymTridiagonal& T, double lambda, int iterations = 4);

}  // namespace conespec
