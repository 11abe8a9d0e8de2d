#pragma once

#include <string>
#include <vector>

namespace displab::criteria {

struct Result {
    int id = 0;
    std::string title;
    bool pass = false;
    double seconds = 0.0;
    double limit_seconds = 0.0;  // wall-clock budget; exceeding it fails the criterion
    std::vector<std::string> details;
};

inline constexpr int kCount = 11;

// Criteria 4, 5, 7 and 8 are the long sweeps; the rest make up the verify suite.
bool is_slow(int id);

Result run(int id, unsigned jobs = 0);

struct Invariant {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Round trip, Parseval, two-grid adjoint and multiplier, Littlewood-Paley partition.
// Random data is drawn from `seed`.
std::vector<Invariant> core_invariants(unsigned long long seed);

// Seed for randomized checks: DISPERSE_LAB_SEED if set, otherwise `fallback`.
unsigned long long seed_from_env(unsigned long long fallback);

}  // namespace displab::criteria
