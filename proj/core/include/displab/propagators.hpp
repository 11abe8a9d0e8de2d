#pragma once

#include <functional>
#include <limits>

#include "displab/grid.hpp"
#include "displab/norms.hpp"
#include "displab/symbols.hpp"

namespace displab {

// Fourier-diagonal semigroup of i u_t + A_h u = 0 in the sign convention where
// dissipative symbols (Im a_h <= 0) contract: c_k -> exp(t g_k) c_k, g = Im a + i Re a.
class LinearPropagator {
public:
    LinearPropagator(SchemeSymbol symbol, GridSpec grid);

    const SchemeSymbol& symbol() const { return symbol_; }
    const GridSpec& grid() const { return grid_; }
    const cvec& generator() const { return gen_; }

    cvec multiplier(double t) const;
    FieldState evolve(const FieldState& u, double t) const;
    SpectrumState evolve(const SpectrumState& c, double t) const;

private:
    SchemeSymbol symbol_;
    GridSpec grid_;
    cvec gen_;
};

FieldState evolve_linear(const LinearPropagator& P, const FieldState& u0, double t);

// || (S_A(t) - S_B(t)) phi - int_0^t S_B(t-s) S_A(s) (A - B) phi ds ||_{l2}, the
// s-integral by Gauss-Legendre with `quad_nodes` nodes on each of `panels` panels.
double semigroup_difference_check(const SchemeSymbol& A, const SchemeSymbol& B, const FieldState& phi, double t,
                                  int quad_nodes, int panels = 1);

struct NseProblem {
    NseProblem(SchemeSymbol scheme, FieldState phi, double p = 2.0, double T = 1.0, double dt = 1e-3);

    SchemeSymbol scheme;
    FieldState phi;
    double p;
    double T;
    double dt;
    bool coupling = true;        // false drops the nonlinearity
    std::size_t sample_every = 1;  // observer stride in steps
};

// Called at t = 0, every `sample_every` steps, and at the final time.
using NseObserver = std::function<void(double t, const FieldState& u)>;

// Strang splitting of i u_t + A_h u = |u|^p u: exact pointwise phase rotation for the
// nonlinear half steps, exact Fourier step for the linear part. For FourierFiltered
// schemes the data and every nonlinear increment are filtered.
FieldState integrate_nse(const NseProblem& prob, const NseObserver& observe = {});
SpaceTimeTrace evolve_nse(const NseProblem& prob);

// Relative change of the final l2 norm when dt is halved.
double nse_dt_self_check(const NseProblem& prob);

struct RestartSchedule {
    double T0 = std::numeric_limits<double>::infinity();
    double c_p = 1.0;

    // T0 = c_p ||phi||_{l2}^{-4p/(4-p)}
    static RestartSchedule for_data(double p, double l2_norm, double c_p = 1.0);
    static RestartSchedule never() { return {}; }
};

// Orthogonal projection onto the two-grid class {Pi psi}: Pi (Pi* Pi)^{-1} Pi* u.
// The coarse trace it uses solves the normal equations Pi* Pi psi = Pi* u.
FieldState twogrid_project(const FieldState& fine);

// Two-grid NSE: i u_t + Delta_h u = Pi f(Pi* u). The nonlinear half steps use the
// implicit midpoint rule (exactly l2 conservative); at each restart time k T0 the state
// is projected back onto the two-grid class. prob.phi lives on the fine grid.
FieldState integrate_nse_twogrid(const NseProblem& prob, const RestartSchedule& sched,
                                 const NseObserver& observe = {});
SpaceTimeTrace evolve_nse_twogrid(const NseProblem& prob, const RestartSchedule& sched);

}  // namespace displab
