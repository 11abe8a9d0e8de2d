#pragma once

#include <functional>
#include <string>
#include <vector>

#include "displab/config.hpp"
#include "displab/grid.hpp"
#include "displab/norms.hpp"
#include "displab/profile.hpp"
#include "displab/rate_fit.hpp"
#include "displab/symbols.hpp"

namespace displab {

// Run fn(0..n-1) on at most `jobs` threads (0 = hardware concurrency).
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn);

struct LinearRunOptions {
    std::size_t time_samples = 400;  // uniform samples on [0, T], endpoints included
};

// L^q(0,T; l^r) norm of exp(itA_h) T_h phi - T_h exp(it d_x^2) phi on g.
double lse_error(const SchemeSymbol& scheme, const SpectralProfile& phi, double T, const Exponent& q,
                 const Exponent& r, const GridSpec& g, const LinearRunOptions& opt = {});

// Same with two-grid data exp(it Delta_h) Pi T_{4h} phi on the fine grid g.
double twogrid_lse_error(const SpectralProfile& phi, double T, const Exponent& q, const Exponent& r,
                         const GridSpec& g, const LinearRunOptions& opt = {});

struct StrichartzOptions {
    std::size_t n_points = 8192;    // L = N h per level
    double width_factor = 8.0;      // packet width sigma = width_factor * h
    std::size_t time_samples = 1500;  // log-spaced on [t_min, T], plus t = 0
    double t_min = 1e-7;
    double T = 1.0;
};

// Data actually evolved at one level of the Strichartz sweep: a unit packet at pi/(2h),
// its Fourier filter for FourierFiltered schemes, or the two-grid filter of its coarse
// samples for TwoGridCarrier.
FieldState strichartz_data(const SchemeSymbol& scheme, const GridSpec& g, const StrichartzOptions& opt);

// ||exp(itA_h) phi_h||_{L^q(0,T; l^r)} / ||phi_h||_{l2} per level.
std::vector<double> strichartz_sweep(const SchemeSymbol& scheme, const std::vector<double>& h_list,
                                     const Exponent& q, const Exponent& r, const StrichartzOptions& opt = {});

struct ValidityCheck {
    std::string name;
    double relative_change = 0.0;
    bool pass = false;
};

struct NormSeries {
    std::string norm_id;
    std::vector<double> errors;
    RateFit fit;
};

struct RateReport {
    std::string scheme;
    std::string profile;
    std::string reference;  // descriptor of what errors are measured against
    std::vector<double> h_values;
    std::vector<NormSeries> series;
    std::vector<double> runtime_seconds;
    std::vector<std::string> point_errors;  // empty string when the point succeeded
    std::vector<ValidityCheck> checks;
    bool degenerate = false;  // exact scheme: all errors vanish

    bool valid() const;
    const NormSeries& series_for(const std::string& norm_id) const;
};

struct NseStudyOptions {
    std::vector<double> h_list{0.2, 0.1, 0.05, 0.025};
    double length = 25.6;
    int ref_divisor = 16;  // h_ref = h_min / ref_divisor
    double dt = 1e-3;
    double sample_interval = 0.01;
    double T = 1.0;
    double p = 2.0;
    double c_p = 1.0;  // restart constant for the two-grid scheme
    std::vector<std::string> norms{"Lq0-lp2", "Linf-l2"};
    bool run_checks = true;
    unsigned jobs = 0;
};

// Self-convergence study of the NSE: errors of each level against a reference run at
// h_min/ref_divisor, restricted spectrally to the level's band. Checks, each at the 1%
// threshold: reference resolution doubling, domain doubling and dt halving compare the
// space-time norms of the reference restricted to the h_min band; sample spacing halving
// compares the errors themselves.
RateReport nse_rate_study(const SchemeSymbol& scheme, const SpectralProfile& phi, const NseStudyOptions& opt);

// Linear counterpart: errors against the exact-symbol evolution of T_h phi. Checks: domain
// doubling and time-sample doubling on the coarsest level.
struct LseStudyOptions {
    std::vector<double> h_list{0.2, 0.1, 0.05, 0.025};
    double length = 51.2;
    double T = 1.0;
    std::size_t time_samples = 400;
    std::vector<std::string> norms{"Linf-l2", "L6-l6"};
    bool run_checks = true;
    unsigned jobs = 0;
};
RateReport lse_rate_study(const SchemeSymbol& scheme, const SpectralProfile& phi, const LseStudyOptions& opt);

// Conservative 3-point scheme on smooth data, L^inf(0,T; l2) errors of the NSE.
RateReport h1_baseline(const SpectralProfile& phi, NseStudyOptions opt);

struct ProjectorStudyOptions {
    std::vector<double> h_list{0.2, 0.1, 0.05, 0.025};
    double length = 51.2;
    int ref_divisor = 16;  // fine grid for T_h f(phi) in the nonlinear study
    double eps = 0.05;     // regularity margin of the rough profile
};

// ||T_h phi - E_h phi||_{l2} for the rough profile of regularity s > 1/2.
RateReport th_eh_study(double s, const ProjectorStudyOptions& opt = {});

// ||f(T_h phi) - T_h f(phi)||_{l^{4/3}} with f(u) = |u|^2 u and the rough profile of
// regularity s; T_h f(phi) is the band truncation of f evaluated on a grid ref_divisor
// times finer.
RateReport nonlinear_projector_study(double s, const ProjectorStudyOptions& opt = {});

// Dispatch a config to the linear or nonlinear study.
RateReport run_experiment(const ExperimentConfig& cfg, unsigned jobs = 0);

}  // namespace displab
