#include "conespec/eigensolver.hpp"

#include <algorithm>
#include <cmath>

#include "conespec/errors.hpp"

namespace conespec {

double SpectrumEntry::lambda() const { return std::sqrt(std::max(lambda_sq, 0.0)); }

namespace {

radial::Operator build(double B, const RealPowerFunction& V, const RadialFunction& extra, double x_right,
                       const BoundaryCondition& bc, const Mesh& mesh) {
    if (!std::isfinite(x_right)) throw NumericError("half-line problem must be truncated before solving");
    if (mesh.N < 32 || !(mesh.grading >= 1.0) || !(mesh.x_min_rel > 0 && mesh.x_min_rel < 0.01))
        throw NumericError("invalid mesh parameters");
    radial::Operator op;
    op.B = B;
    op.power_potential = V;
    auto terms = V.numeric_terms();
    auto power_part = [terms](double x) {
        double s = 0.0;
        for (const auto& [c, e] : terms) s += c * std::pow(x, e + 2.0);
        return s;
    };
    if (extra) {
        op.power_potential.reset();
        op.scaled_potential = [power_part, extra](double x) { return power_part(x) + x * x * extra(x); };
    } else {
        op.scaled_potential = power_part;
    }
    op.x_right = x_right;
    op.right = bc.at_one;
    op.x_min = mesh.x_min_rel * x_right;
    op.x_start = op.x_min;

    if (!V.is_zero() && V.lowest_exponent() < -2) {
        const auto& t = V.lowest_term();
        if (!(t.coefficient > 0)) throw ModelError("potential more singular than x^-2 with negative coefficient");
        op.zero.kind = radial::ZeroBehaviour::Kind::Subdominant;
        double p = to_double(t.exponent);
        double xs = std::pow(3600.0 / t.coefficient, 1.0 / (p + 2.0));
        op.x_start = std::clamp(xs, op.x_min, 0.25 * x_right);
        op.zero.principal = true;
        return op;
    }

    double c2 = inverse_square_coefficient(V);
    double disc = (1.0 - B) * (1.0 - B) + 4.0 * c2;
    if (disc < -1e-14) throw NumericError("complex indicial roots at the origin");
    double r = std::sqrt(std::max(disc, 0.0));
    double tp = 0.5 * ((1.0 - B) + r), tm = 0.5 * ((1.0 - B) - r);
    bool limit_point = c2 + B * (B - 2.0) / 4.0 >= 0.75 - 1e-14;
    op.zero.root_gap = r;
    if (limit_point) {
        op.zero.exponent = tp;
        return op;
    }
    if (!bc.at_zero.extension) throw ModelError("limit-circle endpoint needs an extension choice");
    if (*bc.at_zero.extension == Extension::MinPrincipal) {
        op.zero.exponent = tp;
        return op;
    }
    if (r < 1e-12) throw NumericError("degenerate indicial roots: logarithmic branch at the origin");
    op.zero.exponent = tm;
    op.zero.principal = false;
    op.x_start = std::clamp(std::pow(10.0, -6.0 / r), op.x_min, 0.05 * x_right);
    return op;
}

std::vector<Eigenfunction> functions_of(const radial::Operator& op, int n, const Mesh& mesh) {
    Spectrum sp = spectrum_of(op, n, mesh);
    radial::FdSystem sys = radial::assemble(op, mesh.N, mesh.grading);
    std::vector<Eigenfunction> out;
    int unknowns = sys.T.size();
    for (int k = 0; k < n; ++k) {
        double fd = kth_eigenvalue(sys.T, k);
        std::vector<double> y = inverse_iteration(sys.T, fd);
        Eigenfunction ef;
        ef.lambda_sq = sp[k].lambda_sq;
        ef.samples.reserve(sys.x.size());
        for (std::size_t i = 0; i < sys.x.size(); ++i) {
            int j = static_cast<int>(i) - sys.first;
            double u = (j >= 0 && j < unknowns) ? std::pow(sys.x[i], sys.tau) * y[j] / std::sqrt(sys.mass[i]) : 0.0;
            ef.samples.emplace_back(sys.x[i], u);
        }
        // sign: positive near the inner end
        double ref = 0.0;
        for (const auto& s : ef.samples)
            if (std::abs(s.second) > 1e-8) {
                ref = s.second;
                break;
            }
        if (ref < 0)
            for (auto& s : ef.samples) s.second = -s.second;
        out.push_back(std::move(ef));
    }
    return out;
}

}  // namespace

radial::Operator make_operator(const SchrodingerProblem& sp, const Mesh& mesh) {
    return build(0.0, sp.potential, sp.extra_potential, sp.x_max, sp.bc, mesh);
}

radial::Operator make_operator(const SLProblem& p, const Mesh& mesh) {
    return build(to_double(p.weight_exponent()), p.potential, p.extra_potential, p.x_max, p.bc, mesh);
}

Spectrum spectrum_of(const radial::Operator& op, int n_eigen, const Mesh& mesh) {
    auto refined = radial::solve(op, n_eigen, mesh.N, mesh.grading);
    Spectrum s;
    for (const auto& r : refined) s.entries.push_back({r.lambda_sq, 1, r.residual});
    s.mesh = {mesh.N, mesh.grading, op.x_min, op.x_start};
    return s;
}

Spectrum eigenvalues(const SchrodingerProblem& sp, int n_eigen, const Mesh& mesh) {
    return spectrum_of(make_operator(sp, mesh), n_eigen, mesh);
}

Spectrum eigenvalues_weighted(const SLProblem& p, int n_eigen, const Mesh& mesh) {
    return spectrum_of(make_operator(p, mesh), n_eigen, mesh);
}

std::vector<Eigenfunction> eigenfunctions(const SchrodingerProblem& sp, int n_eigen, const Mesh& mesh) {
    return functions_of(make_operator(sp, mesh), n_eigen, mesh);
}

std::vector<Eigenfunction> eigenfunctions_weighted(const SLProblem& p, int n_eigen, const Mesh& mesh) {
    return functions_of(make_operator(p, mesh), n_eigen, mesh);
}

std::vector<SpectrumEntry> merge_degenerate(std::vector<SpectrumEntry> entries, double rel_tol) {
    std::sort(entries.begin(), entries.end(),
              [](const SpectrumEntry& a, const SpectrumEntry& b) { return a.lambda_sq < b.lambda_sq; });
    std::vector<SpectrumEntry> out;
    for (const auto& e : entries) {
        if (!out.empty()) {
            auto& b = out.back();
            double scale = std::max({1.0, std::abs(b.lambda_sq), std::abs(e.lambda_sq)});
            if (std::abs(e.lambda_sq - b.lambda_sq) <= rel_tol * scale) {
                int m = b.multiplicity + e.multiplicity;
                b.lambda_sq = (b.lambda_sq * b.multiplicity + e.lambda_sq * e.multiplicity) / m;
                b.residual = std::max(b.residual, e.residual);
                b.multiplicity = m;
                continue;
            }
        }
        out.push_back(e);
    }
    return out;
}

}  // namespace conespec
