#ifndef CABINCO2_REGRESSION_HPP
#define CABINCO2_REGRESSION_HPP

#include <cmath>
#include <span>
#include <vector>

#include "cabinco2/types.hpp"

namespace cabinco2 {

struct LineFit {
    double intercept = 0.0;
    double slope = 0.0;
    double r_squared = 0.0;
    std::vector<double> residuals;
};

// Ordinary least squares y = a + b x, computed about the means.
inline LineFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw DomainError("fit_line: x and y differ in length");
    if (x.size() < 2) throw DomainError("fit_line: need at least two points");
    const auto n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    if (!(sxx > 0.0)) throw DomainError("fit_line: degenerate design (all x equal)");

    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double sse = 0.0;
    f.residuals.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (f.intercept + f.slope * x[i]);
        f.residuals.push_back(r);
        sse += r * r;
    }
    f.r_squared = syy > 0.0 ? 1.0 - sse / syy : 1.0;
    return f;
}

}  // namespace cabinco2

#endif  // CABINCO2_REGRESSION_HPP
