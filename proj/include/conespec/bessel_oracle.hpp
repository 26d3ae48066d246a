#pragma once

namespace conespec {

// k-th positive zero (k >= 1) of J_m, m a nonnegative integer or half-integer
double bessel_zero_oracle(double m, int k);

// Gamma(m+1) (2/x)^m J_m(x) from the ascending series, 50-digit arithmetic
double bessel_j_normalized(double m, double x);

}  // namespace conespec
