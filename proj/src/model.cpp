#include "conespec/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <tuple>

#include "conespec/errors.hpp"

namespace conespec {

ModelSpace::ModelSpace(std::vector<LinkFactor> factors, std::optional<Rational> reeb_alpha, double x_max)
    : factors_(std::move(factors)), reeb_alpha_(std::move(reeb_alpha)), x_max_(x_max) {
    if (factors_.empty()) throw ModelError("model space needs at least one link factor");
    if (!(x_max_ > 0.0) || !std::isfinite(x_max_)) throw ModelError("x_max must be positive and finite");
    for (const auto& f : factors_) {
        if (f.link_dim < 1) throw ModelError("link dimension must be at least 1");
        if (f.exponent <= 0) throw ModelError("warping exponent must be positive");
        if (f.torus_lengths) {
            if (static_cast<int>(f.torus_lengths->size()) != f.link_dim)
                throw ModelError("torus_lengths must have one entry per circle");
            for (double L : *f.torus_lengths)
                if (!(L > 0.0)) throw ModelError("torus lengths must be positive");
        }
    }
    if (reeb_alpha_ && *reeb_alpha_ < 1) throw ModelError("Reeb exponent alpha must be >= 1");
}

int ModelSpace::dim() const {
    int d = 1;
    for (const auto& f : factors_) d += f.link_dim;
    return d;
}

ModelSpace cone_over_circle(const Rational& c, double x_max) {
    return ModelSpace({LinkFactor{1, c, std::vector<double>{2.0 * std::numbers::pi}}}, std::nullopt, x_max);
}

ModelSpace cone_over_torus(int dim, const Rational& c, double x_max) {
    return ModelSpace({LinkFactor{dim, c, std::vector<double>(dim, 2.0 * std::numbers::pi)}}, std::nullopt,
                      x_max);
}

int MultiDegree::total() const {
    int s = 0;
    for (int v : k) s += v;
    return s;
}

double LinkMode::mu_total() const {
    double s = 0.0;
    for (double m : mu) s += m * m;
    return std::sqrt(s);
}

static void check_degree(const ModelSpace& space, const MultiDegree& k) {
    if (k.k.size() != space.factors().size())
        throw ModelError("multi-degree length does not match the number of link factors");
    for (std::size_t j = 0; j < k.k.size(); ++j)
        if (k.k[j] < 0 || k.k[j] > space.factors()[j].link_dim)
            throw ModelError("link degree out of range for its factor");
}

PowerFunction rescaling_factor(const ModelSpace& space, const MultiDegree& k) {
    check_degree(space, k);
    Rational e = 0;
    for (std::size_t j = 0; j < k.k.size(); ++j) e += space.factors()[j].exponent * k.k[j];
    return PowerFunction::monomial(Rational(1), e);
}

PowerFunction volume_rescaling(const ModelSpace& space) {
    Rational e = 0;
    for (const auto& f : space.factors()) e += f.exponent * f.link_dim;
    return PowerFunction::monomial(Rational(1), e);
}

AdjointRescaling adjoint_rescaling(const ModelSpace& space, const MultiDegree& k) {
    PowerFunction R = rescaling_factor(space, k);
    PowerFunction F = volume_rescaling(space) * R.pow(-2);
    Rational B = F.leading_exponent();
    return AdjointRescaling{F, B, B == 0};
}

// Morse functions

MorseFunction MorseFunction::power_law(Rational c, Rational scale) {
    if (c <= 0) throw ModelError("power-law Morse exponent must be positive");
    if (scale == 0) throw ModelError("power-law Morse scale must be nonzero");
    return MorseFunction{PowerLawMorse{std::move(c), std::move(scale)}};
}

MorseFunction MorseFunction::sampled(std::vector<double> x, std::vector<double> h1, std::vector<double> h2) {
    if (x.size() < 2 || h1.size() != x.size() || h2.size() != x.size())
        throw ModelError("sampled Morse data needs matching grids of length >= 2");
    for (std::size_t i = 1; i < x.size(); ++i)
        if (!(x[i] > x[i - 1])) throw ModelError("sampled Morse grid must be increasing");
    return MorseFunction{SampledMorse{std::move(x), std::move(h1), std::move(h2)}};
}

MorseFunction MorseFunction::from_derivatives(const std::function<double(double)>& h1,
                                              const std::function<double(double)>& h2, double x_lo,
                                              double x_hi, int samples) {
    std::vector<double> x(samples), a(samples), b(samples);
    double r = std::log(x_hi / x_lo);
    for (int i = 0; i < samples; ++i) {
        x[i] = x_lo * std::exp(r * i / (samples - 1));
        a[i] = h1(x[i]);
        b[i] = h2(x[i]);
    }
    x.back() = x_hi;
    return sampled(std::move(x), std::move(a), std::move(b));
}

static double interp(const std::vector<double>& x, const std::vector<double>& y, double at) {
    if (at < x.front() * (1 - 1e-12) || at > x.back() * (1 + 1e-12))
        throw ModelError("sampled Morse function evaluated outside its grid");
    auto it = std::upper_bound(x.begin(), x.end(), at);
    std::size_t i = std::clamp<std::size_t>(it - x.begin(), 1, x.size() - 1);
    double t = (at - x[i - 1]) / (x[i] - x[i - 1]);
    return y[i - 1] + t * (y[i] - y[i - 1]);
}

double SampledMorse::d1(double at) const { return interp(x, h1, at); }
double SampledMorse::d2(double at) const { return interp(x, h2, at); }

double MorseFunction::d1(double x) const {
    if (auto p = std::get_if<PowerLawMorse>(&kind)) return to_double(p->scale) * std::pow(x, to_double(p->c));
    return std::get<SampledMorse>(kind).d1(x);
}

double MorseFunction::d2(double x) const {
    if (auto p = std::get_if<PowerLawMorse>(&kind))
        return to_double(p->scale * p->c) * std::pow(x, to_double(p->c) - 1.0);
    return std::get<SampledMorse>(kind).d2(x);
}

MorseFunction MorseFunction::negated() const {
    if (auto p = std::get_if<PowerLawMorse>(&kind)) return power_law(p->c, -p->scale);
    SampledMorse s = std::get<SampledMorse>(kind);
    for (auto& v : s.h1) v = -v;
    for (auto& v : s.h2) v = -v;
    return MorseFunction{std::move(s)};
}

MorseCheck check_radial_morse(const MorseFunction& h, double c_check, double x_probe_max) {
    if (!(c_check > 0) || !(x_probe_max > c_check)) throw ModelError("need 0 < c_check < x_probe_max");

    if (auto p = std::get_if<PowerLawMorse>(&h.kind)) {
        // (s x^c)^2 > s c x^{c-1}  <=>  x^{c+1} > c/s for s > 0; always for s < 0
        double s = to_double(p->scale), c = to_double(p->c);
        if (s < 0) return {true, std::nullopt};
        double threshold = std::pow(c / s, 1.0 / (c + 1.0));
        if (c_check >= threshold) return {true, std::nullopt};
        return {false, std::nextafter(c_check, threshold)};
    }

    constexpr int probes = 10000;
    std::vector<double> g(probes);
    double r = std::log(x_probe_max / c_check);
    for (int i = 0; i < probes; ++i) {
        double x = c_check * std::exp(r * (i + 1) / probes);
        double a = h.d1(x);
        g[i] = a * a;
        if (!(g[i] > h.d2(x))) return {false, x};
    }
    // tail: last half of the geometric probes, strictly increasing and growing at least 4x
    int start = probes / 2;
    for (int i = start + 1; i < probes; ++i)
        if (!(g[i] > g[i - 1])) return {false, c_check * std::exp(r * (i + 1) / probes)};
    if (!(g.back() >= 4.0 * g[start])) return {false, x_probe_max};
    return {true, std::nullopt};
}

ReebBound classify_reeb_bounding(const Rational& alpha) {
    return alpha >= 1 ? ReebBound::BoundingBelow : ReebBound::Unbounded;
}

// torus link modes

namespace {

struct FactorMode {
    std::vector<int> n;
    double mu;
};

std::vector<FactorMode> factor_modes(const LinkFactor& f, double cutoff) {
    const auto& L = *f.torus_lengths;
    std::vector<int> bound(f.link_dim);
    for (int i = 0; i < f.link_dim; ++i)
        bound[i] = static_cast<int>(std::floor(cutoff * L[i] / (2.0 * std::numbers::pi) + 1e-9));
    std::vector<FactorMode> out;
    std::vector<int> n(f.link_dim);
    for (int i = 0; i < f.link_dim; ++i) n[i] = -bound[i];
    while (true) {
        double s = 0;
        for (int i = 0; i < f.link_dim; ++i) {
            double w = 2.0 * std::numbers::pi * n[i] / L[i];
            s += w * w;
        }
        double mu = std::sqrt(s);
        if (mu <= cutoff * (1 + 1e-12)) out.push_back({n, mu});
        int i = f.link_dim - 1;
        while (i >= 0 && n[i] == bound[i]) {
            n[i] = -bound[i];
            --i;
        }
        if (i < 0) break;
        ++n[i];
    }
    return out;
}

long binomial(int n, int k) {
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

std::string join(const std::vector<int>& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
    os << ')';
    return os.str();
}

}  // namespace

std::vector<LinkMode> torus_link_modes(const ModelSpace& space, DegreeRange degrees, double mu_cutoff,
                                       bool with_nu) {
    if (mu_cutoff < 0) throw ModelError("mu cutoff must be nonnegative");
    for (const auto& f : space.factors())
        if (!f.torus_lengths) throw ModelError("factor has no torus structure");

    const auto& fs = space.factors();
    std::vector<std::vector<FactorMode>> per(fs.size());
    for (std::size_t j = 0; j < fs.size(); ++j) per[j] = factor_modes(fs[j], mu_cutoff);

    // multi-degrees with total in range
    std::vector<MultiDegree> mdegs;
    {
        std::vector<int> k(fs.size(), 0);
        while (true) {
            MultiDegree md{k};
            int t = md.total();
            if (t >= degrees.lo && t <= degrees.hi) mdegs.push_back(md);
            std::size_t i = 0;
            while (i < k.size() && k[i] == fs[i].link_dim) k[i++] = 0;
            if (i == k.size()) break;
            ++k[i];
        }
    }

    std::vector<LinkMode> out;
    std::vector<std::size_t> idx(fs.size(), 0);
    bool empty = false;
    for (const auto& p : per) empty = empty || p.empty();
    if (empty) return out;
    while (true) {
        LinkMode base;
        for (std::size_t j = 0; j < fs.size(); ++j) {
            const auto& fm = per[j][idx[j]];
            base.mu.push_back(fm.mu);
            base.fourier.insert(base.fourier.end(), fm.n.begin(), fm.n.end());
        }
        if (with_nu) base.nu = 2.0 * std::numbers::pi * per[0][idx[0]].n[0] / (*fs[0].torus_lengths)[0];
        for (const auto& md : mdegs) {
            LinkMode m = base;
            m.multidegree = md;
            long mult = 1;
            for (std::size_t j = 0; j < fs.size(); ++j) mult *= binomial(fs[j].link_dim, md.k[j]);
            m.multiplicity = static_cast<int>(mult);
            m.key = "n=" + join(m.fourier) + ";k=" + join(md.k);
            out.push_back(std::move(m));
        }
        std::size_t j = 0;
        while (j < idx.size() && idx[j] + 1 == per[j].size()) idx[j++] = 0;
        if (j == idx.size()) break;
        ++idx[j];
    }
    std::stable_sort(out.begin(), out.end(), [](const LinkMode& a, const LinkMode& b) {
        double ma = a.mu_total(), mb = b.mu_total();
        if (std::abs(ma - mb) > 1e-12 * (1 + ma)) return ma < mb;
        if (a.fourier != b.fourier) return a.fourier < b.fourier;
        return a.multidegree.k < b.multidegree.k;
    });
    return out;
}

}  // namespace conespec
