#include "displab/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "displab/error.hpp"

namespace displab {

bool is_power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

GridSpec::GridSpec(double h, std::size_t n) : h_(h), n_(n) {
    if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("grid step must be positive");
    if (n < 2 || !is_power_of_two(n))
        throw DomainError("grid point count must be a power of two >= 2, got " + std::to_string(n));
}

GridSpec GridSpec::from_length(double length, std::size_t n) {
    return GridSpec(length / static_cast<double>(n), n);
}

double GridSpec::node(std::size_t j) const {
    return -0.5 * length() + h_ * static_cast<double>(j);
}

long GridSpec::signed_index(std::size_t k) const {
    const long kk = static_cast<long>(k);
    const long nn = static_cast<long>(n_);
    return kk < nn / 2 ? kk : kk - nn;
}

double GridSpec::frequency(std::size_t k) const {
    return 2.0 * std::numbers::pi * static_cast<double>(signed_index(k)) / length();
}

double GridSpec::nyquist() const { return std::numbers::pi / h_; }

std::vector<double> GridSpec::frequencies() const {
    std::vector<double> xi(n_);
    for (std::size_t k = 0; k < n_; ++k) xi[k] = frequency(k);
    return xi;
}

bool GridSpec::same_as(const GridSpec& o) const {
    return n_ == o.n_ && std::abs(h_ - o.h_) <= 1e-13 * h_;
}

FieldState::FieldState(GridSpec g, cvec v) : grid(g), values(std::move(v)) {
    if (values.size() != grid.n()) throw DomainError("field size does not match grid");
}

FieldState FieldState::zeros(const GridSpec& g) { return FieldState(g, cvec(g.n())); }

SpectrumState::SpectrumState(GridSpec g, cvec c) : grid(g), coeffs(std::move(c)) {
    if (coeffs.size() != grid.n()) throw DomainError("spectrum size does not match grid");
}

SpectrumState SpectrumState::zeros(const GridSpec& g) { return SpectrumState(g, cvec(g.n())); }

}  // namespace displab
