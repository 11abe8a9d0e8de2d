#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace displab {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

// Periodic truncation of hZ: nodes x_j = -L/2 + j h, j = 0..N-1, L = N h.
// Frequencies xi_k = 2 pi k'/L with signed index k' in [-N/2, N/2), stored in
// natural FFT order (k' = k for k < N/2, k - N otherwise).
class GridSpec {
public:
    GridSpec(double h, std::size_t n);
    static GridSpec from_length(double length, std::size_t n);

    double h() const { return h_; }
    std::size_t n() const { return n_; }
    double length() const { return h_ * static_cast<double>(n_); }
    double node(std::size_t j) const;
    long signed_index(std::size_t k) const;
    double frequency(std::size_t k) const;
    double nyquist() const;  // pi / h
    std::vector<double> frequencies() const;

    // Same step and point count up to rounding.
    bool same_as(const GridSpec& o) const;

private:
    double h_;
    std::size_t n_;
};

bool is_power_of_two(std::size_t n);

struct FieldState {
    GridSpec grid;
    cvec values;

    FieldState(GridSpec g, cvec v);
    static FieldState zeros(const GridSpec& g);
};

struct SpectrumState {
    GridSpec grid;
    cvec coeffs;

    SpectrumState(GridSpec g, cvec c);
    static SpectrumState zeros(const GridSpec& g);
};

}  // namespace displab
