#include "conespec/oracle2d.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

#include "conespec/errors.hpp"
#include "conespec/radial_solver.hpp"

namespace conespec {

std::vector<double> cone_laplacian_2d(double c, int n, const Grid2d& g) {
    if (g.Nx < 20 || g.Ntheta < 8 || n < 1) throw NumericError("2-D grid too small");
    // c < 1: the admissible m = 0 branch vanishes at 0, pin it there
    const bool pin_origin = c < 1.0;
    const double a = pin_origin ? std::min(g.x_min, 1e-10) : g.x_min;
    std::vector<double> x = radial::make_mesh(a, 1.0, g.Nx, g.grading);
    const int first = pin_origin ? 1 : 0;
    const int nx = g.Nx - first;  // node Nx is Dirichlet
    const int nt = g.Ntheta;

    std::vector<double> w(g.Nx + 1, 0.0), Fh(g.Nx);
    for (int i = 0; i < g.Nx; ++i) {
        double h = x[i + 1] - x[i];
        w[i] += 0.5 * h;
        w[i + 1] += 0.5 * h;
        Fh[i] = std::pow(0.5 * (x[i] + x[i + 1]), c) / h;
    }
    auto mass = [&](int i) { return std::pow(x[i], c) * w[i]; };

    // -d^2/dtheta^2, sixth order
    const double ht = 2.0 * 3.14159265358979323846 / nt;
    const double st[4] = {49.0 / 18.0, -3.0 / 2.0, 3.0 / 20.0, -1.0 / 90.0};

    using Triplet = Eigen::Triplet<double>;
    std::vector<Triplet> trip;
    trip.reserve(static_cast<std::size_t>(nx) * nt * 9);
    auto id = [&](int i, int j) { return (i - first) * nt + j; };
    for (int i = first; i < g.Nx; ++i) {
        double mi = mass(i);
        double diag_x = Fh[i] + (i > 0 ? Fh[i - 1] : 0.0);
        double ang = std::pow(x[i], -2.0 * c) / (ht * ht);
        for (int j = 0; j < nt; ++j) {
            trip.emplace_back(id(i, j), id(i, j), diag_x / mi + ang * st[0]);
            for (int k = 1; k <= 3; ++k) {
                trip.emplace_back(id(i, j), id(i, (j + k) % nt), ang * st[k]);
                trip.emplace_back(id(i, j), id(i, (j - k + nt) % nt), ang * st[k]);
            }
            if (i + 1 < g.Nx) {
                double v = -Fh[i] / std::sqrt(mi * mass(i + 1));
                trip.emplace_back(id(i, j), id(i + 1, j), v);
                trip.emplace_back(id(i + 1, j), id(i, j), v);
            }
        }
    }
    const int dim = nx * nt;
    Eigen::SparseMatrix<double> S(dim, dim);
    S.setFromTriplets(trip.begin(), trip.end());

    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt(S);
    if (ldlt.info() != Eigen::Success) throw NumericError("2-D factorization failed");

    // block Lanczos on S^{-1}, full reorthogonalisation; blocks of 4 catch the m <-> -m pairs
    const int b = 4;
    const int max_blocks = std::max(12, std::min(120, 4 * n));
    Eigen::MatrixXd V(dim, b * (max_blocks + 1)), W(dim, b * max_blocks);
    {
        Eigen::MatrixXd X0(dim, b);
        for (int k = 0; k < b; ++k)
            for (int r = 0; r < dim; ++r) X0(r, k) = std::sin(0.37 * (r + 1) * (k + 1) + 0.3 * k) + 0.1 * ((r * 7 + k) % 13);
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(X0);
        V.leftCols(b) = qr.householderQ() * Eigen::MatrixXd::Identity(dim, b);
    }
    std::vector<double> prev, cur;
    int stable = 0;
    for (int j = 0; j < max_blocks; ++j) {
        const int cols = b * (j + 1);
        W.middleCols(b * j, b) = ldlt.solve(V.middleCols(b * j, b));
        Eigen::MatrixXd R = W.middleCols(b * j, b);
        for (int pass = 0; pass < 2; ++pass) R -= V.leftCols(cols) * (V.leftCols(cols).transpose() * R);
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(R);
        V.middleCols(cols, b) = qr.householderQ() * Eigen::MatrixXd::Identity(dim, b);

        if (cols < n + b) continue;
        Eigen::MatrixXd T = V.leftCols(cols).transpose() * W.leftCols(cols);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (T + T.transpose()), Eigen::EigenvaluesOnly);
        cur.clear();
        for (int k = cols - 1; k >= cols - n; --k) cur.push_back(1.0 / es.eigenvalues()(k));
        if (prev.size() == cur.size()) {
            double worst = 0.0;
            for (int k = 0; k < n; ++k) worst = std::max(worst, std::abs(cur[k] - prev[k]) / std::abs(cur[k]));
            stable = worst < 1e-12 ? stable + 1 : 0;
            if (stable >= 2) return cur;
        }
        prev = cur;
    }
    throw NumericError("2-D Lanczos did not converge");
}

}  // namespace conespec
