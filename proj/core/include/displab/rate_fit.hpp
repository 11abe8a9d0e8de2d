#pragma once

#include <string>
#include <vector>

namespace displab {

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

// Least squares of log y against log x.
LineFit fit_line_loglog(const std::vector<double>& x, const std::vector<double>& y);

struct RateFit {
    double slope = 0.0;
    double r_squared = 0.0;
    bool clean = false;
    std::string note;  // why the fit is not clean
};

// Power-law fit err ~ C h^slope. A fit is clean when R^2 >= 0.9 and a power law explains
// the data at least as well as a logarithmic law err ~ C |log h|^{-a}; over long h ranges
// a log law alone reaches R^2 > 0.9 in the power-law fit, so R^2 by itself does not
// separate them.
RateFit fit_rate(const std::vector<double>& h_values, const std::vector<double>& errors);

}  // namespace displab
