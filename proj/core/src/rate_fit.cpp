#include "displab/rate_fit.hpp"

#include <cmath>

#include "displab/error.hpp"

namespace displab {
namespace {

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) throw DomainError("rate fit needs distinct abscissae");
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (f.intercept + f.slope * x[i]);
        ss_res += r * r;
    }
    // Constant data is fitted exactly by a flat line.
    f.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
    return f;
}

}  // namespace

LineFit fit_line_loglog(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw DomainError("rate fit needs matching inputs of length >= 2");
    std::vector<double> lx, ly;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw DomainError("log-log fit needs positive data");
        lx.push_back(std::log(x[i]));
        ly.push_back(std::log(y[i]));
    }
    return least_squares(lx, ly);
}

RateFit fit_rate(const std::vector<double>& h_values, const std::vector<double>& errors) {
    if (h_values.size() != errors.size() || h_values.size() < 3) throw DomainError("rate fit needs at least 3 points");
    const LineFit power = fit_line_loglog(h_values, errors);
    RateFit out;
    out.slope = power.slope;
    out.r_squared = power.r_squared;
    if (power.r_squared < 0.9) {
        out.note = "no clean rate: R^2 below 0.9";
        return out;
    }
    bool log_defined = true;
    std::vector<double> logs;
    for (double h : h_values) {
        const double l = std::abs(std::log(h));
        if (!(l > 0.0)) log_defined = false;
        logs.push_back(l);
    }
    if (log_defined) {
        const LineFit logfit = fit_line_loglog(logs, errors);
        if (logfit.r_squared > power.r_squared) {
            out.note = "no clean rate: a logarithmic law fits better than a power law";
            return out;
        }
    }
    out.clean = true;
    return out;
}

}  // namespace displab
