#pragma once

#include <memory>
#include <vector>

#include "displab/profile.hpp"
#include "displab/quadrature.hpp"

namespace displab {

// J_{h,phi}(g) = 1/2 ||phi - g||^2 + (h/2) exp(||g||_{H^1}^2), all norms written as
// int ... d xi over the transform (no 1/2pi factor) through a SpectralMeasure.
struct JProblem {
    JProblem(SpectralProfile phi, double h, double s);
    JProblem(SpectralProfile phi, double h, double s, std::shared_ptr<const SpectralMeasure> measure);

    SpectralProfile phi;
    double h;
    double s;
    std::shared_ptr<const SpectralMeasure> measure;
};

struct ChSolution {
    double c = 0.0;         // c_h
    double x = 0.0;         // c_h^2
    double residual = 0.0;  // |c - rhs(c)|
    double bracket_lo = 0.0;  // final bisection bracket in x
    double bracket_hi = 0.0;
    double g_lo = 0.0;  // x - rhs(x)^2 at the bracket ends: certificate g_lo <= 0 <= g_hi
    double g_hi = 0.0;
    int iterations = 0;
};

// F(y) = int (1+xi^2) |phi^|^2 / (1 + y (1+xi^2))^2 d xi, so c^2 = F(h e^{c^2}).
double ch_rhs(const JProblem& prob, double y);

// Unique root of c = ||(I-Delta)^{1/2} [I + h e^{c^2}(I-Delta)]^{-1} phi|| by bisection in
// x = c^2 on [0, 2|log h| + 10].
ChSolution solve_ch(const JProblem& prob);

struct MinJResult {
    double value = 0.0;   // from the closed-form reduction
    double direct = 0.0;  // J evaluated at g_h
    ChSolution ch;
};

MinJResult min_J(const JProblem& prob);

// J at g = m(xi) phi^ for a real Fourier multiplier m.
double evaluate_J(const JProblem& prob, const std::function<double(double)>& m, double hint = 1.0);

// J at the member g_X = [I + h e^X (I-Delta)]^{-1} phi of the minimizer family.
double J_on_family(const JProblem& prob, double X);

// Grid search of J_on_family over X in [0, x_max] with spacing `resolution`.
struct BruteForceResult {
    double X = 0.0;
    double value = 0.0;
};
BruteForceResult brute_force_min_J(const JProblem& prob, double x_max, double resolution);

// Root of q_h(x) = h x^beta e^x - c on x > 0.
double q_root(double h, double beta, double c);

struct LogRateReport {
    std::vector<double> h_values;
    std::vector<double> min_j;
    std::vector<double> c_h;
    double alpha = 0.0;      // fitted min J ~ |log h|^{-alpha}
    double r_squared = 0.0;
    double band_ratio = 0.0;  // max/min of min J |log h|^{s/(1-s)}
};

LogRateReport log_rate_study(double s, double eps, const std::vector<double>& h_list);

}  // namespace displab
