#include "displab/propagators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "displab/error.hpp"
#include "displab/fft.hpp"
#include "displab/fourier.hpp"
#include "displab/projectors.hpp"
#include "displab/quadrature.hpp"

namespace displab {

LinearPropagator::LinearPropagator(SchemeSymbol symbol, GridSpec grid)
    : symbol_(std::move(symbol)), grid_(grid), gen_(semigroup_generator(symbol_, grid_)) {}

cvec LinearPropagator::multiplier(double t) const {
    cvec m(gen_.size());
    for (std::size_t k = 0; k < m.size(); ++k) m[k] = std::exp(gen_[k] * t);
    return m;
}

SpectrumState LinearPropagator::evolve(const SpectrumState& c, double t) const {
    if (!c.grid.same_as(grid_)) throw DomainError("state grid does not match propagator grid");
    SpectrumState out = c;
    for (std::size_t k = 0; k < gen_.size(); ++k) out.coeffs[k] *= std::exp(gen_[k] * t);
    return out;
}

FieldState LinearPropagator::evolve(const FieldState& u, double t) const {
    if (t == 0.0) return u;
    return inverse_dft(evolve(forward_dft(u), t));
}

FieldState evolve_linear(const LinearPropagator& P, const FieldState& u0, double t) { return P.evolve(u0, t); }

double semigroup_difference_check(const SchemeSymbol& A, const SchemeSymbol& B, const FieldState& phi, double t,
                                  int quad_nodes, int panels) {
    if (panels < 1) throw DomainError("need at least one quadrature panel");
    const cvec ga = semigroup_generator(A, phi.grid);
    const cvec gb = semigroup_generator(B, phi.grid);
    const SpectrumState c = forward_dft(phi);
    const GaussRule rule = gauss_legendre(quad_nodes);
    const double width = t / panels;
    double acc = 0.0;
    for (std::size_t k = 0; k < c.coeffs.size(); ++k) {
        const cplx lhs = (std::exp(ga[k] * t) - std::exp(gb[k] * t)) * c.coeffs[k];
        cplx integral = 0.0;
        for (int p = 0; p < panels; ++p) {
            const double a = p * width;
            for (std::size_t n = 0; n < rule.nodes.size(); ++n) {
                const double s = a + 0.5 * width * (rule.nodes[n] + 1.0);
                integral += 0.5 * width * rule.weights[n] * std::exp(gb[k] * (t - s) + ga[k] * s);
            }
        }
        integral *= (ga[k] - gb[k]) * c.coeffs[k];
        acc += std::norm(lhs - integral);
    }
    return std::sqrt(acc / phi.grid.length());
}

NseProblem::NseProblem(SchemeSymbol scheme_, FieldState phi_, double p_, double T_, double dt_)
    : scheme(std::move(scheme_)), phi(std::move(phi_)), p(p_), T(T_), dt(dt_) {}

namespace {

void validate(const NseProblem& prob) {
    if (!(prob.p > 0.0 && prob.p < 4.0)) throw DomainError("nonlinearity power p must lie in (0, 4)");
    if (!(prob.dt > 0.0) || !(prob.T >= 0.0)) throw DomainError("need dt > 0 and T >= 0");
    if (prob.sample_every == 0) throw DomainError("sample stride must be positive");
}

std::size_t step_count(const NseProblem& prob) {
    const double n = prob.T / prob.dt;
    const auto steps = static_cast<std::size_t>(std::llround(n));
    if (std::abs(n - static_cast<double>(steps)) > 1e-9 * std::max(1.0, n))
        throw DomainError("T must be an integer multiple of dt");
    return steps;
}

// Phase rotation u -> u exp(-i |u|^p tau): the exact flow of i u_t = |u|^p u.
void rotate(cvec& u, double p, double tau) {
    for (auto& z : u) z *= std::polar(1.0, -std::pow(std::abs(z), p) * tau);
}

class BlowUpGuard {
public:
    explicit BlowUpGuard(const cvec& u0) {
        for (const auto& z : u0) limit_ = std::max(limit_, std::abs(z));
        limit_ = std::max(limit_, 1e-300) * 1e6;
    }
    void check(const cvec& u, double t) const {
        for (const auto& z : u) {
            const double a = std::abs(z);
            if (!std::isfinite(a) || a > limit_) {
                std::ostringstream os;
                os << "solution left the admissible range at t = " << t << " (|u| = " << a << ")";
                throw BlowUpError(os.str());
            }
        }
    }

private:
    double limit_ = 0.0;
};

// Fourier step through the unnormalized FFT pair; the multiplier absorbs 1/N.
void linear_step(cvec& u, const cvec& scaled_mult) {
    fft::forward(u);
    for (std::size_t k = 0; k < u.size(); ++k) u[k] *= scaled_mult[k];
    fft::backward(u);
}

cvec scaled_multiplier(const LinearPropagator& P, double dt) {
    cvec m = P.multiplier(dt);
    const double inv = 1.0 / static_cast<double>(m.size());
    for (auto& z : m) z *= inv;
    return m;
}

cvec filter_mask(const GridSpec& g, double gamma) {
    cvec m(g.n());
    const double cut = gamma * g.nyquist();
    const double inv = 1.0 / static_cast<double>(g.n());
    for (std::size_t k = 0; k < g.n(); ++k) m[k] = std::abs(g.frequency(k)) <= cut ? inv : 0.0;
    return m;
}

}  // namespace

FieldState integrate_nse(const NseProblem& prob, const NseObserver& observe) {
    validate(prob);
    const std::size_t steps = step_count(prob);
    const GridSpec& g = prob.phi.grid;
    const LinearPropagator P(prob.scheme.with_step(g.h()), g);
    const cvec mult = scaled_multiplier(P, prob.dt);
    const bool filtered = prob.scheme.kind == SchemeKind::FourierFiltered;
    const cvec mask = filtered ? filter_mask(g, prob.scheme.gamma) : cvec{};

    cvec u = prob.phi.values;
    if (filtered) linear_step(u, mask);
    const BlowUpGuard guard(u);
    const double half = 0.5 * prob.dt;

    auto nonlinear = [&](cvec& v) {
        if (!prob.coupling) return;
        if (!filtered) {
            rotate(v, prob.p, half);
            return;
        }
        cvec inc = v;
        rotate(inc, prob.p, half);
        for (std::size_t j = 0; j < v.size(); ++j) inc[j] -= v[j];
        linear_step(inc, mask);
        for (std::size_t j = 0; j < v.size(); ++j) v[j] += inc[j];
    };

    if (observe) observe(0.0, FieldState(g, u));
    for (std::size_t n = 1; n <= steps; ++n) {
        nonlinear(u);
        linear_step(u, mult);
        nonlinear(u);
        const double t = static_cast<double>(n) * prob.dt;
        guard.check(u, t);
        if (observe && (n % prob.sample_every == 0 || n == steps)) observe(t, FieldState(g, u));
    }
    return FieldState(g, std::move(u));
}

SpaceTimeTrace evolve_nse(const NseProblem& prob) {
    SpaceTimeTrace tr;
    integrate_nse(prob, [&](double t, const FieldState& u) { tr.push(t, u); });
    return tr;
}

double nse_dt_self_check(const NseProblem& prob) {
    const double a = norm_lr(integrate_nse(prob), 2.0);
    NseProblem fine = prob;
    fine.dt = 0.5 * prob.dt;
    const double b = norm_lr(integrate_nse(fine), 2.0);
    return std::abs(a - b) / std::max(b, 1e-300);
}

RestartSchedule RestartSchedule::for_data(double p, double l2_norm, double c_p) {
    if (!(p > 0.0 && p < 4.0)) throw DomainError("nonlinearity power p must lie in (0, 4)");
    RestartSchedule s;
    s.c_p = c_p;
    s.T0 = l2_norm > 0.0 ? c_p * std::pow(l2_norm, -4.0 * p / (4.0 - p)) : std::numeric_limits<double>::infinity();
    return s;
}

namespace {

// Fine-grid stencils of Pi and Pi* on raw arrays (coarse size nc, fine size 4 nc).
void interp_raw(const cvec& coarse, cvec& fine) {
    const std::size_t nc = coarse.size();
    for (std::size_t i = 0; i < nc; ++i) {
        const cplx a = coarse[i];
        const cplx b = coarse[(i + 1) % nc];
        fine[4 * i] = a;
        fine[4 * i + 1] = 0.75 * a + 0.25 * b;
        fine[4 * i + 2] = 0.5 * (a + b);
        fine[4 * i + 3] = 0.25 * a + 0.75 * b;
    }
}

void adjoint_raw(const cvec& fine, cvec& coarse) {
    const std::size_t nf = fine.size();
    for (std::size_t i = 0; i < coarse.size(); ++i) {
        const std::size_t c = 4 * i;
        auto at = [&](long r) { return fine[(c + nf + static_cast<std::size_t>(r + 3) - 3) % nf]; };
        coarse[i] = 0.25 * (fine[c] + 0.75 * (at(1) + at(-1)) + 0.5 * (at(2) + at(-2)) + 0.25 * (at(3) + at(-3)));
    }
}

}  // namespace

FieldState twogrid_project(const FieldState& fine) {
    const GridSpec& g = fine.grid;
    const long n = static_cast<long>(g.n());
    const long nc = n / 4;
    if (nc < 2) throw DomainError("fine grid too small for a two-grid pair");
    const SpectrumState c = forward_dft(fine);
    std::vector<double> m(g.n());
    for (std::size_t k = 0; k < g.n(); ++k) m[k] = twogrid_multiplier(g.h() * g.frequency(k));
    SpectrumState out = SpectrumState::zeros(g);
    for (long kc = -nc / 2; kc < nc / 2; ++kc) {
        // fine signed indices kc + l nc inside [-n/2, n/2)
        cplx proj = 0.0;
        double gram = 0.0;
        std::size_t idx[4];
        int count = 0;
        for (long l = -2; l <= 2; ++l) {
            const long kp = kc + l * nc;
            if (kp < -n / 2 || kp >= n / 2) continue;
            const std::size_t k = static_cast<std::size_t>(kp < 0 ? kp + n : kp);
            idx[count++] = k;
            proj += m[k] * c.coeffs[k];
            gram += m[k] * m[k];
        }
        const cplx coarse = proj / gram;
        for (int i = 0; i < count; ++i) out.coeffs[idx[i]] = m[idx[i]] * coarse;
    }
    return inverse_dft(out);
}

FieldState integrate_nse_twogrid(const NseProblem& prob, const RestartSchedule& sched, const NseObserver& observe) {
    validate(prob);
    const std::size_t steps = step_count(prob);
    const GridSpec& g = prob.phi.grid;
    if (g.n() < 8) throw DomainError("fine grid too small for a two-grid pair");
    const LinearPropagator P(SchemeSymbol::twogrid(g.h()), g);
    const cvec mult = scaled_multiplier(P, prob.dt);
    const double half = 0.5 * prob.dt;
    const std::size_t nc = g.n() / 4;

    cvec u = prob.phi.values;
    const BlowUpGuard guard(u);
    cvec u0(u.size()), mid(u.size()), force(u.size()), coarse(nc);

    // i u_t = Pi f(Pi* u) over tau by implicit midpoint, solved by fixed-point iteration.
    auto nonlinear = [&](cvec& v) {
        if (!prob.coupling) return;
        u0 = v;
        mid = v;
        double scale = 0.0;
        for (const auto& z : v) scale = std::max(scale, std::abs(z));
        for (int it = 0; it < 100; ++it) {
            adjoint_raw(mid, coarse);
            for (auto& z : coarse) z *= std::pow(std::abs(z), prob.p);
            interp_raw(coarse, force);
            double change = 0.0;
            for (std::size_t j = 0; j < v.size(); ++j) {
                v[j] = u0[j] - cplx(0.0, half) * force[j];
                const cplx next = 0.5 * (u0[j] + v[j]);
                change = std::max(change, std::abs(next - mid[j]));
                mid[j] = next;
            }
            if (change <= 2e-15 * std::max(scale, 1e-300)) break;
        }
    };

    double next_restart = sched.T0;
    if (observe) observe(0.0, FieldState(g, u));
    for (std::size_t n = 1; n <= steps; ++n) {
        nonlinear(u);
        linear_step(u, mult);
        nonlinear(u);
        const double t = static_cast<double>(n) * prob.dt;
        if (t >= next_restart - 1e-12 * prob.dt) {
            u = twogrid_project(FieldState(g, std::move(u))).values;
            while (next_restart <= t + 1e-12 * prob.dt) next_restart += sched.T0;
        }
        guard.check(u, t);
        if (observe && (n % prob.sample_every == 0 || n == steps)) observe(t, FieldState(g, u));
    }
    return FieldState(g, std::move(u));
}

SpaceTimeTrace evolve_nse_twogrid(const NseProblem& prob, const RestartSchedule& sched) {
    SpaceTimeTrace tr;
    integrate_nse_twogrid(prob, sched, [&](double t, const FieldState& u) { tr.push(t, u); });
    return tr;
}

}  // namespace displab
