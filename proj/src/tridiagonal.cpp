#include "conespec/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "conespec/errors.hpp"

namespace conespec {

std::pair<double, double> gershgorin_bounds(const SymTridiagonal& T) {
    int n = T.size();
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (int i = 0; i < n; ++i) {
        double r = 0;
        if (i > 0) r += std::abs(T.e[i - 1]);
        if (i + 1 < n) r += std::abs(T.e[i]);
        lo = std::min(lo, T.d[i] - r);
        hi = std::max(hi, T.d[i] + r);
    }
    return {lo, hi};
}

int sturm_count(const SymTridiagonal& T, double lambda) {
    int n = T.size(), count = 0;
    double q = 1.0;
    const double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
    for (int i = 0; i < n; ++i) {
        double e2 = i > 0 ? T.e[i - 1] * T.e[i - 1] : 0.0;
        q = T.d[i] - lambda - (i > 0 ? e2 / q : 0.0);
        if (q == 0.0) q = -tiny;
        if (q < 0) ++count;
    }
    return count;
}

double kth_eigenvalue(const SymTridiagonal& T, int k, double rel_tol) {
    if (k < 0 || k >= T.size()) throw NumericError("eigenvalue index out of range");
    auto [lo, hi] = gershgorin_bounds(T);
    double span = hi - lo;
    lo -= 1e-12 * span + 1e-300;
    hi += 1e-12 * span + 1e-300;
    for (int it = 0; it < 400; ++it) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (hi - lo <= rel_tol * std::max(std::abs(lo), std::abs(hi)) + 1e-300) break;
        if (sturm_count(T, mid) > k)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<double> lowest_eigenvalues(const SymTridiagonal& T, int n) {
    std::vector<double> out;
    out.reserve(n);
    for (int k = 0; k < n; ++k) out.push_back(kth_eigenvalue(T, k));
    return out;
}

std::vector<double> inverse_iteration(const SymTridiagonal& T, double lambda, int iterations) {
    int n = T.size();
    double scale = std::max(std::abs(lambda), 1.0);
    double shift = lambda + 1e-10 * scale;
    // LU of tridiagonal T - shift with partial pivoting (bandwidth grows to 2 above)
    std::vector<double> a(n), b(n), c(n), f(n, 0.0);
    std::vector<double> l(n, 0.0);
    std::vector<int> swapped(n, 0);
    // rows: sub (a), diag (b), super (c), super2 (f)
    for (int i = 0; i < n; ++i) {
        b[i] = T.d[i] - shift;
        if (i > 0) a[i] = T.e[i - 1];
        if (i + 1 < n) c[i] = T.e[i];
    }
    for (int i = 0; i + 1 < n; ++i) {
        if (std::abs(a[i + 1]) > std::abs(b[i])) {
            std::swap(a[i + 1], b[i]);
            std::swap(b[i + 1], c[i]);
            std::swap(c[i + 1], f[i]);
            swapped[i] = 1;
        }
        if (b[i] == 0.0) b[i] = 1e-300;
        l[i] = a[i + 1] / b[i];
        b[i + 1] -= l[i] * c[i];
        c[i + 1] -= l[i] * f[i];
    }
    if (b[n - 1] == 0.0) b[n - 1] = 1e-300;

    std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
    for (int i = 0; i < n; ++i) x[i] *= 1.0 + 0.01 * std::sin(1.0 + i);
    for (int it = 0; it < iterations; ++it) {
        std::vector<double> y = x;
        for (int i = 0; i + 1 < n; ++i) {
            if (swapped[i]) std::swap(y[i], y[i + 1]);
            y[i + 1] -= l[i] * y[i];
        }
        for (int i = n - 1; i >= 0; --i) {
            double s = y[i];
            if (i + 1 < n) s -= c[i] * y[i + 1];
            if (i + 2 < n) s -= f[i] * y[i + 2];
            y[i] = s / b[i];
        }
        double norm = 0;
        for (double v : y) norm += v * v;
        norm = std::sqrt(norm);
        if (!(norm > 0) || !std::isfinite(norm)) throw NumericError("inverse iteration broke down");
        for (int i = 0; i < n; ++i) x[i] = y[i] / norm;
    }
    return x;
}

}  // namespace conespec
