#include "conespec/supertrace.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "conespec/errors.hpp"

namespace conespec {

std::complex<double> eta_renormalized(double alpha, double s) {
    if (!(s > 0)) throw NumericError("eta renormalization needs s > 0");
    std::complex<double> a = std::exp(std::complex<double>(-s, -alpha));
    std::complex<double> b = std::exp(std::complex<double>(-s, alpha));
    return -a / (1.0 - a) + 1.0 / (1.0 - b);
}

DhResult duistermaat_heckman_sphere(double t) {
    DhResult r;
    r.closed_form = std::abs(t) < 1e-8 ? 2.0 - t * t / 3.0 : 2.0 * std::sin(t) / t;
    using boost::math::quadrature::gauss_kronrod;
    auto re = [t](double phi) { return std::cos(t * std::cos(phi)) * std::sin(phi); };
    auto im = [t](double phi) { return std::sin(t * std::cos(phi)) * std::sin(phi); };
    const double pi = 3.14159265358979323846;
    double a = gauss_kronrod<double, 61>::integrate(re, 0.0, pi, 15, 1e-12);
    double b = gauss_kronrod<double, 61>::integrate(im, 0.0, pi, 15, 1e-12);
    r.quadrature = {a, b};
    r.discrepancy = std::abs(r.closed_form - r.quadrature);
    return r;
}

std::complex<double> HeatSupertrace::at(double b) const {
    std::complex<double> s = 0.0, p = 1.0;
    for (const auto& c : assembled) {
        s += c * p;
        p *= b;
    }
    return s;
}

std::complex<double> HeatSupertrace::harmonic_at(double b) const {
    std::complex<double> s = 0.0, p = 1.0;
    for (const auto& c : harmonic) {
        s += c * p;
        p *= b;
    }
    return s;
}

namespace {

bool less_level(const HeatLevel& a, const HeatLevel& b) {
    if (a.lambda_sq != b.lambda_sq) return a.lambda_sq < b.lambda_sq;
    if (a.weight.real() != b.weight.real()) return a.weight.real() < b.weight.real();
    return a.weight.imag() < b.weight.imag();
}

void check_pairing(std::vector<HeatLevel> co, std::vector<HeatLevel> ex, double tol, int degree) {
    if (co.size() != ex.size())
        throw SusyFailure("unpaired eigenvalues between degree " + std::to_string(degree) + " and " +
                          std::to_string(degree + 1));
    std::sort(co.begin(), co.end(), less_level);
    std::sort(ex.begin(), ex.end(), less_level);
    for (std::size_t i = 0; i < co.size(); ++i) {
        double scale = std::max({1.0, std::abs(co[i].lambda_sq), std::abs(ex[i].lambda_sq)});
        if (std::abs(co[i].lambda_sq - ex[i].lambda_sq) > tol * scale ||
            std::abs(co[i].weight - ex[i].weight) > tol * std::max(1.0, std::abs(co[i].weight)) ||
            std::abs(co[i].link_mu - ex[i].link_mu) > tol * std::max(1.0, co[i].link_mu))
            throw SusyFailure("co-exact eigenvalue " + std::to_string(co[i].lambda_sq) + " in degree " +
                              std::to_string(degree) + " has no exact partner");
    }
}

}  // namespace

HeatSupertrace truncated_heat_supertrace(const std::vector<DegreeSpectra>& spectra, double t, double s,
                                         double pairing_tol) {
    std::map<int, const DegreeSpectra*> by_degree;
    int top = 0;
    for (const auto& d : spectra) {
        if (d.degree < 0) throw NumericError("negative form degree");
        by_degree[d.degree] = &d;
        top = std::max(top, d.degree);
    }
    for (const auto& [q, d] : by_degree) {
        auto next = by_degree.find(q + 1);
        std::vector<HeatLevel> ex = next == by_degree.end() ? std::vector<HeatLevel>{} : next->second->exact;
        check_pairing(d->coexact, ex, pairing_tol, q);
    }
    if (auto first = by_degree.find(0); first != by_degree.end() && !first->second->exact.empty())
        throw SusyFailure("exact eigenvalues in degree 0");

    HeatSupertrace out;
    out.harmonic.assign(top + 1, 0.0);
    out.S.assign(top + 1, 0.0);
    for (const auto& [q, d] : by_degree) {
        for (const auto& h : d->harmonic) out.harmonic[q] += std::exp(-s * h.link_mu) * h.weight;
        for (const auto& c : d->coexact) out.S[q] += std::exp(-(t + s) * c.lambda_sq - s * c.link_mu) * c.weight;
    }
    // exact terms in degree q+1 are the paired co-exact terms of degree q
    out.assembled.assign(top + 2, 0.0);
    for (int q = 0; q <= top; ++q) {
        out.assembled[q] += out.harmonic[q] + out.S[q];
        out.assembled[q + 1] += out.S[q];
    }
    while (out.assembled.size() > 1 && out.assembled.back() == 0.0) out.assembled.pop_back();
    return out;
}

}  // namespace conespec
