#pragma once

#include <functional>
#include <string>
#include <vector>

#include "displab/grid.hpp"

namespace displab {

enum class SchemeKind { Exact, Conservative3pt, FourierFiltered, Viscous, HigherViscous, TwoGridCarrier };

// alpha(h) for the viscous scheme a(h) = h^{2 - 1/alpha(h)}; must tend to 1/2 from above
// slowly enough that a(h) -> 0.
using AlphaSchedule = std::function<double(double h)>;

// 1/2 + 1/sqrt|log h|, so a(h) = exp(-4 sqrt|log h| (1 + O(1/sqrt|log h|))).
double default_alpha_schedule(double h);

struct SchemeSymbol {
    SchemeKind kind = SchemeKind::Conservative3pt;
    double h = 0.1;
    double gamma = 0.25;  // FourierFiltered cutoff fraction of pi/h
    int m = 2;            // HigherViscous order
    AlphaSchedule alpha = default_alpha_schedule;

    static SchemeSymbol exact(double h);
    static SchemeSymbol fd3(double h);
    static SchemeSymbol filtered(double h, double gamma = 0.25);
    static SchemeSymbol viscous(double h, AlphaSchedule alpha = default_alpha_schedule);
    static SchemeSymbol hyperviscous(double h, int m);
    static SchemeSymbol twogrid(double h);

    std::string id() const;  // config string, e.g. "hyperviscous:2"
    bool conservative() const;
    SchemeSymbol with_step(double new_h) const;
};

// "exact", "fd3", "filtered:g", "viscous", "hyperviscous:m", "twogrid".
SchemeSymbol parse_scheme(const std::string& id, double h);

// (4/h^2) sin^2(xi h / 2), the magnitude of the 3-point Laplacian symbol.
double fd3_magnitude(double xi, double h);

// a(h) for the viscous scheme.
double viscous_coefficient(const SchemeSymbol& s);

// a_h(xi); throws DomainError for |xi| > pi/h.
cplx eval_symbol(const SchemeSymbol& s, double xi);

// Generator of the semigroup in our sign convention: u_t = g u, g = Im a + i Re a.
// Re a gives the phase, Im a <= 0 gives decay.
cplx semigroup_generator(const SchemeSymbol& s, double xi);
cvec semigroup_generator(const SchemeSymbol& s, const GridSpec& g);

struct BoundTerm {
    double k;   // power of |xi|
    double mu;  // coefficient mu(k,h)
};

// |a_h(xi) + xi^2| <= sum mu(k,h) |xi|^k on [-pi/h, pi/h].
struct SymbolBound {
    std::vector<BoundTerm> terms;
    double at(double xi) const;
};

SymbolBound declared_bound(const SchemeSymbol& s);

// max over a uniform grid of `samples` points in [-pi/h, pi/h] of
// |a_h + xi^2| / sum mu |xi|^k (xi = 0 skipped).
double verify_bound(const SchemeSymbol& s, int samples);

// c(gamma) for the filtered bound {(4, c h^2)}, measured on a dense grid.
double filtered_bound_constant(double gamma, double h, int samples = 200001);

// epsilon(s,h) = sum mu(k,h)^{min(s/k,1)}.
double epsilon_rate(const SymbolBound& b, double s);

}  // namespace displab
