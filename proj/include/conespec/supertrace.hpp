#pragma once

#include <complex>
#include <vector>

namespace conespec {

// -e^{-s-i alpha}/(1-e^{-s-i alpha}) + 1/(1-e^{-s+i alpha})
std::complex<double> eta_renormalized(double alpha, double s);

struct DhResult {
    std::complex<double> closed_form;
    std::complex<double> quadrature;
    double discrepancy = 0.0;
};
DhResult duistermaat_heckman_sphere(double t);

struct HeatLevel {
    double lambda_sq = 0.0;
    double link_mu = 0.0;
    std::complex<double> weight = 1.0;  // <T psi, psi> times multiplicity
};

struct HarmonicLevel {
    double link_mu = 0.0;
    std::complex<double> weight = 1.0;
};

struct DegreeSpectra {
    int degree = 0;
    std::vector<HarmonicLevel> harmonic;
    std::vector<HeatLevel> coexact;  // paired with exact in degree + 1
    std::vector<HeatLevel> exact;
};

struct HeatSupertrace {
    std::vector<std::complex<double>> harmonic;   // coefficients of b^q
    std::vector<std::complex<double>> S;          // S_k
    std::vector<std::complex<double>> assembled;  // L(b) + (1+b) sum b^k S_k
    std::complex<double> at(double b) const;
    std::complex<double> harmonic_at(double b) const;
};

// pairing of coexact(q) with exact(q+1) is checked to pairing_tol (relative) first
HeatSupertrace truncated_heat_supertrace(const std::vector<DegreeSpectra>& spectra, double t, double s,
                                         double pairing_tol = 1e-5);

}  // namespace conespec
