#include "conespec/witten.hpp"

#include <cmath>
#include <limits>

#include "conespec/errors.hpp"

namespace conespec {

SchrodingerProblem deformed_potential(const SchrodingerProblem& base, const WittenDeformation& d,
                                      bool half_line) {
    if (d.epsilon < 0) throw ModelError("Witten parameter must be nonnegative");
    if (d.K != 1 && d.K != -1) throw ModelError("K must be +1 or -1");
    if (half_line && d.epsilon == 0.0) throw ModelError("half-line problem without confinement (epsilon = 0)");
    SchrodingerProblem sp = base;
    if (d.epsilon > 0) {
        const double e = d.epsilon;
        if (const auto* p = std::get_if<PowerLawMorse>(&d.h.kind)) {
            Rational s = p->scale;
            sp.potential.add_term(e * e * to_double(s * s), 2 * p->c);
            sp.potential.add_term(d.K * e * to_double(s * p->c), p->c - 1);
        } else {
            MorseFunction h = d.h;
            RadialFunction prev = base.extra_potential;
            int K = d.K;
            sp.extra_potential = [h, prev, e, K](double x) {
                double a = h.d1(x);
                return (prev ? prev(x) : 0.0) + e * e * a * a + K * e * h.d2(x);
            };
        }
    }
    if (half_line) {
        sp.x_max = std::numeric_limits<double>::infinity();
        sp.bc.at_one = RobinCondition::dirichlet();
    }
    sp.bc.at_zero.kind = classify_endpoint_zero(sp.potential);
    return sp;
}

int k_sign(bool is_normal_form) { return is_normal_form ? 1 : -1; }

static double potential_at(const SchrodingerProblem& sp, double x) {
    return sp.potential(x) + (sp.extra_potential ? sp.extra_potential(x) : 0.0);
}

SweepRow solve_half_line(const SchrodingerProblem& sp, int n_eigen, const Mesh& mesh) {
    if (!sp.half_line()) throw ModelError("solve_half_line needs a half-line problem");
    SchrodingerProblem cut = sp;
    cut.bc.at_one = RobinCondition::dirichlet();
    double xr = 1.0;
    for (int it = 0; it < 12; ++it) {
        cut.x_max = xr;
        Spectrum s = eigenvalues(cut, n_eigen, mesh);
        double top = std::max(std::abs(s.entries.back().lambda_sq), 1.0);
        // smallest x beyond which V >= 10 * top on the scan
        double need = 0.0;
        for (double x = 0.05; x < 1e6; x *= 1.01) {
            if (potential_at(sp, x) >= 10.0 * top) {
                need = x;
                break;
            }
        }
        if (need == 0.0) throw NumericError("truncation radius failed to confine the spectrum");
        if (need <= xr * (1 + 1e-12)) return SweepRow{0.0, s, xr, 0};
        xr = need;
    }
    throw NumericError("truncation radius failed to confine the spectrum");
}

std::vector<SweepRow> semiclassical_sweep(const SchrodingerProblem& base, const MorseFunction& h, int K,
                                          const std::vector<double>& epsilons, int n_eigen, double threshold,
                                          const Mesh& mesh) {
    std::vector<SweepRow> out;
    double prev = 0.0;
    for (double e : epsilons) {
        if (!(e > prev)) throw ModelError("epsilon list must be positive and ascending");
        prev = e;
        SchrodingerProblem sp = deformed_potential(base, WittenDeformation{h, e, K}, true);
        SweepRow row = solve_half_line(sp, n_eigen, mesh);
        row.epsilon = e;
        for (const auto& en : row.spectrum.entries)
            if (en.lambda_sq < threshold) row.count_below += en.multiplicity;
        out.push_back(std::move(row));
    }
    return out;
}

}  // namespace conespec
