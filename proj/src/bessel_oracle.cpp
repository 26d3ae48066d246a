#include "conespec/bessel_oracle.hpp"

#include <cmath>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "conespec/errors.hpp"

namespace conespec {

using Big = boost::multiprecision::cpp_bin_float_50;

static Big series(double m, double x) {
    Big q = Big(x) * Big(x) / 4;
    Big term = 1, sum = 1, peak = 1;
    for (int k = 1; k < 2000; ++k) {
        term *= -q / (Big(k) * (Big(m) + k));
        sum += term;
        if (abs(term) > peak) peak = abs(term);
        if (abs(term) < peak * Big("1e-48") && Big(k) > q) return sum;
    }
    throw NumericError("Bessel series did not converge");
}

double bessel_j_normalized(double m, double x) { return static_cast<double>(series(m, x)); }

double bessel_zero_oracle(double m, int k) {
    if (k < 1 || m < 0 || std::abs(2 * m - std::round(2 * m)) > 1e-12)
        throw NumericError("Bessel oracle needs m in Z/2, m >= 0, and k >= 1");
    const double step = 0.05;
    double a = 1e-3, fa = static_cast<double>(series(m, a));
    int found = 0;
    for (double b = a + step; b < 400.0; b += step) {
        Big fb_big = series(m, b);
        double fb = static_cast<double>(fb_big);
        if ((fa < 0) != (fb < 0)) {
            if (++found == k) {
                double lo = a, hi = b;
                Big flo = series(m, lo);
                for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
                    double mid = 0.5 * (lo + hi);
                    Big fm = series(m, mid);
                    if ((fm < 0) == (flo < 0)) {
                        lo = mid;
                        flo = fm;
                    } else {
                        hi = mid;
                    }
                }
                return 0.5 * (lo + hi);
            }
        }
        a = b;
        fa = fb;
    }
    throw NumericError("Bessel zero not found below the scan limit");
}

}  // namespace conespec
