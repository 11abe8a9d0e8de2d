#pragma once

#include <functional>
#include <memory>
#include <vector>

namespace displab {

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

GaussRule gauss_legendre(int n);

using RealFn = std::function<double(double)>;

struct QuadResult {
    double value = 0.0;
    double error = 0.0;  // estimated absolute error
};

// Integral of f over R. The line is split at `center`; each half is integrated over the
// distance pieces [0,b1],[b1,b2],...,[bn,inf) with adaptive Gauss-Kronrod on the finite
// pieces and exp-sinh on the tail.
//
// tail_decay > 0 declares |f(xi)| ~ |xi|^{-1-tail_decay}. The tail is then integrated in
// the variable w = tail_decay log(xi/bn), where the integrand decays like e^{-w}; plain
// exp-sinh stalls on such slowly decaying tails.
QuadResult integrate_line(const RealFn& f, double center = 0.0, std::vector<double> breaks = {1.0},
                          double rel_tol = 1e-12, double tail_decay = 0.0);

// Integral of f over [a, inf).
QuadResult integrate_halfline(const RealFn& f, double a, std::vector<double> breaks = {1.0},
                              double rel_tol = 1e-12, double tail_decay = 0.0);

// Spectral integration in xi: a continuous line integral or a weighted sum over a finite
// set of modes. The J-functional is written against this so the same code runs on the
// continuous spectrum and on truncated discrete spectra.
class SpectralMeasure {
public:
    virtual ~SpectralMeasure() = default;
    // integral of f(xi) d xi; `hint` is a scale where the integrand changes regime
    virtual double integrate(const RealFn& f, double hint = 1.0) const = 0;
};

class ContinuousMeasure final : public SpectralMeasure {
public:
    explicit ContinuousMeasure(double center = 0.0, double rel_tol = 1e-13) : center_(center), tol_(rel_tol) {}
    double integrate(const RealFn& f, double hint = 1.0) const override;

private:
    double center_;
    double tol_;
};

class DiscreteMeasure final : public SpectralMeasure {
public:
    DiscreteMeasure(std::vector<double> nodes, double weight) : nodes_(std::move(nodes)), weight_(weight) {}
    // modes k * dxi for k = -n/2 .. n/2 - 1
    static DiscreteMeasure uniform(int n, double dxi);
    double integrate(const RealFn& f, double hint = 1.0) const override;
    const std::vector<double>& nodes() const { return nodes_; }
    double weight() const { return weight_; }

private:
    std::vector<double> nodes_;
    double weight_;
};

}  // namespace displab
