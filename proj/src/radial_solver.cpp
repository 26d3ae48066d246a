#include "conespec/radial_solver.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include <boost/math/tools/toms748_solve.hpp>
#include <boost/numeric/odeint.hpp>

#include "conespec/errors.hpp"

namespace conespec::radial {

namespace odeint = boost::numeric::odeint;

namespace {

constexpr double kOdeTol = 1e-13;
constexpr double kAngleError = 1e-11;

// Frobenius plan: u = x^tau sum_e b_e x^e over the additive semigroup of the potential shifts
struct SeriesPlan {
    std::vector<double> e;                  // exponents, ascending, e[0] = 0
    std::vector<double> shift_coeff;        // x^2 V = sum a_i x^{s_i} (inverse square part excluded)
    std::vector<std::vector<int>> pred;     // pred[j][i] = index of e_j - s_i or -1
    int lambda_gen = -1;                    // generator carrying -lambda^2
    double gap = 0.0;                       // e(e + gap) on the left of the recurrence
};

SeriesPlan make_plan(const Operator& op) {
    SeriesPlan plan;
    std::vector<Rational> shifts;
    for (const auto& t : op.power_potential->terms()) {
        if (t.exponent == -2) continue;
        Rational s = t.exponent + 2;
        if (s <= 0) throw NumericError("series start needs a potential no worse than x^-2");
        shifts.push_back(s);
        plan.shift_coeff.push_back(t.coefficient);
    }
    auto it = std::find(shifts.begin(), shifts.end(), Rational(2));
    if (it == shifts.end()) {
        shifts.push_back(Rational(2));
        plan.shift_coeff.push_back(0.0);
        plan.lambda_gen = static_cast<int>(shifts.size()) - 1;
    } else {
        plan.lambda_gen = static_cast<int>(it - shifts.begin());
    }
    plan.gap = 2.0 * op.zero.exponent + op.B - 1.0;

    const Rational emax(64);
    const std::size_t cap = 6000;
    std::map<Rational, int> index;
    std::vector<Rational> frontier{Rational(0)};
    std::map<Rational, bool> seen{{Rational(0), true}};
    while (!frontier.empty() && seen.size() < cap) {
        std::vector<Rational> next;
        for (const auto& a : frontier)
            for (const auto& s : shifts) {
                Rational b = a + s;
                if (b > emax || seen.count(b)) continue;
                seen[b] = true;
                next.push_back(b);
            }
        frontier = std::move(next);
    }
    std::vector<Rational> es;
    for (const auto& kv : seen) es.push_back(kv.first);
    for (std::size_t j = 0; j < es.size(); ++j) index[es[j]] = static_cast<int>(j);
    plan.e.resize(es.size());
    plan.pred.assign(es.size(), std::vector<int>(shifts.size(), -1));
    for (std::size_t j = 0; j < es.size(); ++j) {
        plan.e[j] = to_double(es[j]);
        for (std::size_t i = 0; i < shifts.size(); ++i) {
            auto f = index.find(es[j] - shifts[i]);
            if (f != index.end()) plan.pred[j][i] = f->second;
        }
        if (j > 0 && std::abs(plan.e[j] + plan.gap) < 1e-10)
            throw NumericError("resonant indicial roots: logarithmic branch not supported");
    }
    return plan;
}

double series_log_derivative(const SeriesPlan& plan, double tau, double lambda_sq, double x) {
    std::vector<double> a = plan.shift_coeff;
    a[plan.lambda_gen] -= lambda_sq;
    std::vector<double> b(plan.e.size(), 0.0);
    b[0] = 1.0;
    double s0 = 1.0, s1 = 0.0, last = 0.0;
    double lx = std::log(x);
    for (std::size_t j = 1; j < plan.e.size(); ++j) {
        double rhs = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (plan.pred[j][i] >= 0) rhs += a[i] * b[plan.pred[j][i]];
        double e = plan.e[j];
        b[j] = rhs / (e * (e + plan.gap));
        double term = b[j] * std::exp(e * lx);
        s0 += term;
        s1 += e * term;
        if (e > 0.75 * plan.e.back()) last = std::max(last, std::abs(term));
    }
    if (!std::isfinite(s0) || s0 == 0.0 || last > 1e-13 * std::abs(s0))
        throw NumericError("Frobenius start did not converge at the starting point");
    return tau + s1 / s0;
}

double wkb_log_derivative(const Operator& op, double lambda_sq, double x) {
    double g = op.B * (op.B - 2.0) / 4.0;
    auto Q = [&](double y) { return (op.scaled_potential(y) + g) / (y * y) - lambda_sq; };
    double q = Q(x);
    if (!(q > 0)) throw NumericError("WKB start point is not in the classically forbidden region");
    double h = 1e-5 * x;
    double dq = (Q(x + h) - Q(x - h)) / (2 * h);
    return x * std::sqrt(q) - x * dq / (4 * q) - op.B / 2.0;
}

struct Shooter {
    const Operator& op;
    std::optional<SeriesPlan> plan;

    explicit Shooter(const Operator& o) : op(o) {
        if (op.zero.kind == ZeroBehaviour::Kind::Exponent && op.power_potential) plan = make_plan(op);
        if (op.zero.kind == ZeroBehaviour::Kind::Exponent && !op.zero.principal && !op.power_potential)
            throw NumericError("non-principal branch needs a power-law potential for its series start");
    }

    double rho(double lambda_sq) const {
        if (op.zero.kind == ZeroBehaviour::Kind::Subdominant) return wkb_log_derivative(op, lambda_sq, op.x_start);
        if (plan) return series_log_derivative(*plan, op.zero.exponent, lambda_sq, op.x_start);
        return op.zero.exponent;
    }

    auto rhs(double lambda_sq) const {
        return [this, lambda_sq](const double& th, double& dth, double t) {
            double x = std::exp(t);
            double s = std::sin(th), c = std::cos(th);
            dth = c * c - (1.0 - op.B) * s * c - (op.scaled_potential(x) - lambda_sq * x * x) * s * s;
        };
    }

    double angle(double lambda_sq) const {
        double th = std::atan2(1.0, rho(lambda_sq));
        double t0 = std::log(op.x_start), t1 = std::log(op.x_right);
        auto stepper = odeint::make_controlled(kOdeTol, kOdeTol, odeint::runge_kutta_dopri5<double>());
        odeint::integrate_adaptive(stepper, rhs(lambda_sq), th, t0, t1, 1e-3);
        return th;
    }
};

}  // namespace

double start_log_derivative(const Operator& op, double lambda_sq) { return Shooter(op).rho(lambda_sq); }

double prufer_angle(const Operator& op, double lambda_sq) { return Shooter(op).angle(lambda_sq); }

AngleSamples prufer_samples(const Operator& op, double lambda_sq, int samples) {
    Shooter sh(op);
    AngleSamples out;
    double t0 = std::log(op.x_start), t1 = std::log(op.x_right);
    std::vector<double> times(samples);
    for (int i = 0; i < samples; ++i) times[i] = t0 + (t1 - t0) * i / (samples - 1);
    times.back() = t1;
    double th = std::atan2(1.0, sh.rho(lambda_sq));
    auto f = sh.rhs(lambda_sq);
    auto stepper = odeint::make_dense_output(kOdeTol, kOdeTol, odeint::runge_kutta_dopri5<double>());
    odeint::integrate_times(stepper, f, th, times.begin(), times.end(), 1e-3, [&](const double& v, double t) {
        double d;
        f(v, d, t);
        out.t.push_back(t);
        out.theta.push_back(v);
        out.dtheta.push_back(d);
    });
    return out;
}

double AngleSamples::operator()(double x) const {
    double tt = std::log(x);
    if (tt <= t.front()) return theta.front() + dtheta.front() * (tt - t.front());
    if (tt >= t.back()) return theta.back() + dtheta.back() * (tt - t.back());
    auto it = std::upper_bound(t.begin(), t.end(), tt);
    std::size_t i = static_cast<std::size_t>(it - t.begin()) - 1;
    double h = t[i + 1] - t[i], s = (tt - t[i]) / h;
    double h00 = (1 + 2 * s) * (1 - s) * (1 - s), h10 = s * (1 - s) * (1 - s);
    double h01 = s * s * (3 - 2 * s), h11 = s * s * (s - 1);
    return h00 * theta[i] + h10 * h * dtheta[i] + h01 * theta[i + 1] + h11 * h * dtheta[i + 1];
}

double target_angle(const Operator& op, int k) {
    double g2 = op.right.gamma2 / op.x_right;
    double tb = std::atan2(g2, -op.right.gamma1);
    if (tb <= 0) tb += std::numbers::pi;
    return tb + k * std::numbers::pi;
}

Refined refine(const Operator& op, int k, double guess) {
    Shooter sh(op);
    const double target = target_angle(op, k);
    auto f = [&](double l2) { return sh.angle(l2) - target; };

    double delta = 1e-4 * std::max(1.0, std::abs(guess));
    double lo = guess - delta, hi = guess + delta;
    double flo = f(lo), fhi = f(hi);
    for (int it = 0; flo > 0; ++it) {
        if (it > 200) throw NumericError("could not bracket eigenvalue from below");
        delta *= 2;
        hi = lo;
        fhi = flo;
        lo -= delta;
        flo = f(lo);
    }
    for (int it = 0; fhi < 0; ++it) {
        if (it > 200) throw NumericError("could not bracket eigenvalue from above");
        delta *= 2;
        lo = hi;
        flo = fhi;
        hi += delta;
        fhi = f(hi);
    }
    std::uintmax_t iters = 200;
    auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(42),
                                               iters);
    Refined out;
    out.lambda_sq = 0.5 * (r.first + r.second);
    double h = 1e-6 * std::max(1.0, std::abs(out.lambda_sq));
    double slope = (f(out.lambda_sq + h) - f(out.lambda_sq - h)) / (2 * h);
    if (!(slope > 0)) throw NumericError("Pruefer angle not increasing in the spectral parameter");
    out.residual = (r.second - r.first) + kAngleError / slope;
    return out;
}

std::vector<double> make_mesh(double a, double b, int N, double grading) {
    if (!(grading > 1.0) || !(b > a) || !(a > 0)) throw NumericError("invalid mesh request");
    // geometric spacing kappa*x below the crossover x_c, uniform h_max above it
    const double hmax = grading * (b - a) / N;
    auto count = [&](double kappa) {
        double xc = std::min(hmax / kappa, b);
        double n = std::log(std::max(xc, a) / a) / kappa;
        if (xc < b) n += (b - xc) / hmax;
        return n;
    };
    double lo = 1e-12, hi = 10.0;
    for (int it = 0; it < 200; ++it) {
        double mid = std::sqrt(lo * hi);
        if (count(mid) > N)
            lo = mid;
        else
            hi = mid;
    }
    const double kappa = hi;
    const double xc = std::max(std::min(hmax / kappa, b), a);
    const double phic = std::log(xc / a) / kappa;
    std::vector<double> x(N + 1);
    for (int k = 0; k <= N; ++k) {
        double phi = k * count(kappa) / N;
        x[k] = phi <= phic ? a * std::exp(kappa * phi) : xc + (phi - phic) * hmax;
    }
    x[0] = a;
    x[N] = b;
    return x;
}

FdSystem assemble(const Operator& op, int N, double grading) {
    FdSystem sys;
    const bool sub = op.zero.kind == ZeroBehaviour::Kind::Subdominant;
    const double a = sub ? op.x_start : op.x_min;
    const double b = op.x_right;
    sys.x = make_mesh(a, b, N, grading);
    const auto& x = sys.x;

    // u = x^tau w removes the inverse-square part; w is then natural (Neumann) at a
    const double tau = sub ? 0.0 : op.zero.exponent;
    const double c2 = sub ? 0.0 : tau * (tau - 1.0 + op.B);
    const double Bw = op.B + 2.0 * tau;
    sys.tau = tau;
    auto F = [&](double y) { return std::pow(y, Bw); };

    std::vector<double> h(N), Fh(N), w(N + 1, 0.0);
    for (int i = 0; i < N; ++i) {
        h[i] = x[i + 1] - x[i];
        Fh[i] = F(0.5 * (x[i] + x[i + 1]));
        w[i] += 0.5 * h[i];
        w[i + 1] += 0.5 * h[i];
    }
    sys.mass.resize(N + 1);
    for (int i = 0; i <= N; ++i) sys.mass[i] = F(x[i]) * w[i];

    std::vector<double> diag(N + 1, 0.0), off(N, 0.0);
    for (int i = 0; i <= N; ++i) {
        double V = (op.scaled_potential(x[i]) - c2) / (x[i] * x[i]);
        diag[i] = V * sys.mass[i];
        if (i > 0) diag[i] += Fh[i - 1] / h[i - 1];
        if (i < N) diag[i] += Fh[i] / h[i];
    }
    for (int i = 0; i < N; ++i) off[i] = -Fh[i] / h[i];
    if (!op.right.is_dirichlet()) {
        // gamma1 u + gamma2 u' = 0 written for w
        double g = op.right.gamma1 / op.right.gamma2 + tau / b;
        diag[N] += F(b) * g;
    }

    int first = sub ? 1 : 0;
    int last = op.right.is_dirichlet() ? N - 1 : N;
    sys.first = first;
    int n = last - first + 1;
    sys.T.d.resize(n);
    sys.T.e.resize(std::max(n - 1, 0));
    for (int i = 0; i < n; ++i) sys.T.d[i] = diag[first + i] / sys.mass[first + i];
    for (int i = 0; i + 1 < n; ++i)
        sys.T.e[i] = off[first + i] / std::sqrt(sys.mass[first + i] * sys.mass[first + i + 1]);
    return sys;
}

std::vector<Refined> solve(const Operator& op, int n, int N, double grading) {
    if (n < 1) throw NumericError("need at least one eigenvalue");
    if (N < 16 * (n + 2)) throw NumericError("mesh too coarse for the requested eigenvalue count");
    FdSystem sys = assemble(op, N, grading);
    std::vector<double> seeds = lowest_eigenvalues(sys.T, n);
    std::vector<Refined> out;
    out.reserve(n);
    for (int k = 0; k < n; ++k) out.push_back(refine(op, k, seeds[k]));
    for (int k = 1; k < n; ++k)
        if (!(out[k].lambda_sq > out[k - 1].lambda_sq))
            throw NumericError("refined eigenvalues out of order");
    return out;
}

}  // namespace conespec::radial
