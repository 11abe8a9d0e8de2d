#include "displab/quadrature.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/legendre.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "displab/error.hpp"

namespace displab {

GaussRule gauss_legendre(int n) {
    if (n < 1) throw DomainError("Gauss-Legendre rule needs n >= 1");
    static std::mutex mu;
    static std::map<int, GaussRule> cache;
    std::lock_guard lock(mu);
    if (auto it = cache.find(n); it != cache.end()) return it->second;

    // legendre_p_zeros returns the nonnegative zeros in increasing order
    const std::vector<double> pos = boost::math::legendre_p_zeros<double>(n);
    GaussRule r;
    auto weight = [n](double x) {
        const double d = boost::math::legendre_p_prime<double>(n, x);
        return 2.0 / ((1.0 - x * x) * d * d);
    };
    for (auto it = pos.rbegin(); it != pos.rend(); ++it) {
        if (*it == 0.0) continue;
        r.nodes.push_back(-*it);
        r.weights.push_back(weight(*it));
    }
    for (double x : pos) {
        r.nodes.push_back(x);
        r.weights.push_back(weight(x));
    }
    cache.emplace(n, r);
    return r;
}

QuadResult integrate_halfline(const RealFn& f, double a, std::vector<double> breaks, double rel_tol,
                              double tail_decay) {
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::remove_if(breaks.begin(), breaks.end(), [](double b) { return !(b > 0.0); }), breaks.end());
    QuadResult out;
    double lo = 0.0;
    for (double b : breaks) {
        double err = 0.0;
        out.value += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
            [&](double t) { return f(a + t); }, lo, b, 25, rel_tol, &err);
        out.error += err;
        lo = b;
    }
    boost::math::quadrature::exp_sinh<double> tail(12);
    double err = 0.0;
    const double shift = a + lo;
    if (tail_decay > 0.0 && lo > 0.0) {
        // t = lo e^{w/k}, dt = t/k dw, up to t_far; beyond t_far the integrand is a pure
        // power to double precision and its integral is f(t_far) t_far / k.
        const double t_far = std::max(1e100, 1e6 * lo);
        const double w_far = tail_decay * std::log(t_far / lo);
        out.value += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(
            [&](double w) {
                const double t = lo * std::exp(w / tail_decay);
                return f(a + t) * t / tail_decay;
            },
            0.0, w_far, 30, rel_tol, &err);
        out.value += f(a + t_far) * t_far / tail_decay;
    } else {
        out.value += tail.integrate([&](double t) { return f(shift + t); }, rel_tol, &err);
    }
    out.error += err;
    return out;
}

QuadResult integrate_line(const RealFn& f, double center, std::vector<double> breaks, double rel_tol,
                          double tail_decay) {
    QuadResult right = integrate_halfline(f, center, breaks, rel_tol, tail_decay);
    QuadResult left =
        integrate_halfline([&](double t) { return f(2.0 * center - t); }, center, breaks, rel_tol, tail_decay);
    return {right.value + left.value, right.error + left.error};
}

double ContinuousMeasure::integrate(const RealFn& f, double hint) const {
    std::vector<double> breaks{1.0};
    if (hint > 1.0) breaks.push_back(hint);
    if (hint > 4.0) breaks.push_back(4.0 * hint);
    const QuadResult r = integrate_line(f, center_, breaks, tol_);
    if (!std::isfinite(r.value)) throw QuadratureError("spectral integral is not finite");
    return r.value;
}

DiscreteMeasure DiscreteMeasure::uniform(int n, double dxi) {
    std::vector<double> xs;
    xs.reserve(static_cast<std::size_t>(n));
    for (int k = -n / 2; k < n - n / 2; ++k) xs.push_back(k * dxi);
    return DiscreteMeasure(std::move(xs), dxi);
}

double DiscreteMeasure::integrate(const RealFn& f, double) const {
    double s = 0.0;
    for (double x : nodes_) s += f(x);
    return s * weight_;
}

}  // namespace displab
