#pragma once

#include <string>
#include <vector>

#include "displab/grid.hpp"
#include "displab/profile.hpp"

namespace displab {

// Lebesgue exponent, kept rational so admissibility is decided exactly.
struct Exponent {
    long num = 2;
    long den = 1;
    bool inf = false;

    static Exponent infinity() { return {1, 0, true}; }
    static Exponent of(long n, long d = 1);
    static Exponent parse(const std::string& text);  // "inf", "8", "4/3", "1.5"
    double value() const;
    std::string str() const;
};

bool operator==(const Exponent& a, const Exponent& b);

// 1/q = 1/4 - 1/(2r), decided in integer arithmetic.
bool is_admissible(const Exponent& q, const Exponent& r);

// (h sum |u_j|^r)^{1/r}, max |u_j| for r = inf.
double norm_lr(const cvec& values, double h, double r);
double norm_lr(const FieldState& u, double r);
double norm_lr(const FieldState& u, const Exponent& r);

struct SpaceTimeTrace {
    std::vector<double> times;
    std::vector<FieldState> states;

    void push(double t, FieldState u);
    std::size_t size() const { return times.size(); }
};

// Streaming L^q(0,T) norm by composite trapezoid over the supplied samples (max for
// q = inf). Feed the spatial norm at strictly increasing times.
class TimeNormAccumulator {
public:
    explicit TimeNormAccumulator(Exponent q) : q_(q) {}
    void add(double t, double spatial_norm);
    double value() const;
    std::size_t count() const { return count_; }

private:
    Exponent q_;
    std::size_t count_ = 0;
    double last_t_ = 0.0;
    double last_f_ = 0.0;
    double integral_ = 0.0;
    double max_ = 0.0;
};

double norm_spacetime(const SpaceTimeTrace& tr, const Exponent& q, const Exponent& r);

// "Linf-l2", "L6-l6", "L8-l4", and "Lq0-lp2" (the pair q0 = 4(p+2)/p, r = p+2).
struct NormSelector {
    std::string id;
    Exponent q;
    Exponent r;
};
NormSelector parse_norm_selector(const std::string& id, double p = 2.0);

// ||P_0 u||_{l^p} + (sum_{j>=1} 2^{2js} ||P_j u||_{l^p}^2)^{1/2}, j up to lp_max_level(h).
double norm_besov_discrete(const FieldState& u, double s, double p);

// ((1/2pi) int (1+xi^2)^s |phi^|^2 d xi)^{1/2}; throws NotInSpaceError when the
// integral diverges.
double norm_profile_sobolev(const SpectralProfile& phi, double s);

}  // namespace displab
