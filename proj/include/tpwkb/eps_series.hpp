#pragma once
#include <complex>
#include <vector>

namespace tpwkb {

// Formal power series in the small parameter at a fixed evaluation point:
// coeffs[m] multiplies eps^m.  Truncation order is explicit.
struct EpsSeries {
    std::vector<std::complex<double>> coeffs;

    int order() const { return static_cast<int>(coeffs.size()) - 1; }

    std::complex<double> eval(double eps) const {  // Horner
        std::complex<double> acc = 0.0;
        for (size_t j = coeffs.size(); j-- > 0;) acc = acc * eps + coeffs[j];
        return acc;
    }
};

// Superasymptotic evaluation of a (typically Gevrey-1) series: sum up to the
// smallest term (capped at `cap`), then close the tail with the geometric
// terminant t_{k+1}/(1 - t_{k+2}/t_{k+1}).  For series whose coefficients
// rotate in phase this beats plain half-term averaging by ~1 digit.
std::complex<double> optimal_truncation_eval(const EpsSeries& s, double eps, int cap);

} // namespace tpwkb
