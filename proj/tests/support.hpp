#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>

#include "displab/grid.hpp"

namespace support {

// Seeds live in test names; DISPERSE_LAB_SEED overrides all of them at once.
inline std::mt19937_64 rng(unsigned long long seed) {
    if (const char* v = std::getenv("DISPERSE_LAB_SEED")) {
        char* end = nullptr;
        const unsigned long long s = std::strtoull(v, &end, 10);
        if (end != v && *end == '\0') seed = s;
    }
    return std::mt19937_64(seed);
}

inline displab::cvec random_cvec(std::mt19937_64& g, std::size_t n) {
    std::normal_distribution<double> nd;
    displab::cvec v(n);
    for (auto& z : v) z = {nd(g), nd(g)};
    return v;
}

inline double max_abs(const displab::cvec& a) {
    double m = 0.0;
    for (const auto& z : a) m = std::max(m, std::abs(z));
    return m;
}

inline double max_diff(const displab::cvec& a, const displab::cvec& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double rel_diff(const displab::cvec& a, const displab::cvec& b) {
    return max_diff(a, b) / std::max(max_abs(b), 1e-300);
}

inline displab::cplx inner(const displab::FieldState& a, const displab::FieldState& b) {
    displab::cplx s = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) s += a.values[i] * std::conj(b.values[i]);
    return a.grid.h() * s;
}

inline double l2_diff(const displab::FieldState& a, const displab::FieldState& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.values.size(); ++i) s += std::norm(a.values[i] - b.values[i]);
    return std::sqrt(a.grid.h() * s);
}

}  // namespace support
