#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace displab {

inline constexpr const char* kSpecVersion = "1";
inline constexpr const char* kToolVersion = "0.3.0";

// key = value text, '#' starts a comment. Required keys: spec_version, scheme, profile.
struct ExperimentConfig {
    std::string spec_version;
    std::string scheme;
    std::string profile;
    double s = 0.0;
    double p = 0.0;  // 0 selects the linear equation
    double T = 1.0;
    std::vector<std::string> norms{"Linf-l2"};
    std::vector<double> h_list{0.2, 0.1, 0.05, 0.025};
    double dt = 1e-3;
    double length = 51.2;
    int ref_divisor = 16;
    double sample_interval = 0.01;
    std::size_t time_samples = 400;  // linear runs
    double c_p = 1.0;
    unsigned long long seed = 0;
    std::optional<double> expect_slope;
    double slope_tol = 0.15;
    std::string output = "out";

    // Canonical key = value lines in a fixed order, used for provenance echo.
    std::vector<std::pair<std::string, std::string>> entries() const;
};

// Throws ConfigError naming the line and field at fault.
ExperimentConfig parse_config(const std::string& text,
                              const std::vector<std::pair<std::string, std::string>>& overrides = {});
ExperimentConfig load_config(const std::string& path,
                             const std::vector<std::pair<std::string, std::string>>& overrides = {});

std::vector<double> parse_number_list(const std::string& text);

}  // namespace displab
