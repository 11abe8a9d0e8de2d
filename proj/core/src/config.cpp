#include "displab/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "displab/data_gen.hpp"
#include "displab/error.hpp"
#include "displab/norms.hpp"
#include "displab/symbols.hpp"

namespace displab {
namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

template <class T>
std::string join(const std::vector<T>& xs, const std::function<std::string(const T&)>& f) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + f(xs[i]);
    return out;
}

double to_double(const std::string& v, int line, const std::string& key) {
    std::size_t used = 0;
    double d = 0.0;
    try {
        d = std::stod(v, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != v.size() || !std::isfinite(d))
        throw ConfigError("field '" + key + "' expects a number, got '" + v + "'", line, key);
    return d;
}

}  // namespace

std::vector<double> parse_number_list(const std::string& text) {
    std::vector<double> out;
    std::string item;
    std::stringstream ss(text);
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        std::size_t used = 0;
        const double v = std::stod(item, &used);
        if (used != item.size()) throw std::invalid_argument(item);
        out.push_back(v);
    }
    return out;
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::entries() const {
    std::vector<std::pair<std::string, std::string>> e{
        {"spec_version", spec_version},
        {"scheme", scheme},
        {"profile", profile},
        {"s", fmt(s)},
        {"p", fmt(p)},
        {"T", fmt(T)},
        {"norms", join<std::string>(norms, [](const std::string& x) { return x; })},
        {"h_list", join<double>(h_list, [](const double& x) { return fmt(x); })},
        {"dt", fmt(dt)},
        {"length", fmt(length)},
        {"ref_divisor", std::to_string(ref_divisor)},
        {"sample_interval", fmt(sample_interval)},
        {"time_samples", std::to_string(time_samples)},
        {"c_p", fmt(c_p)},
        {"seed", std::to_string(seed)},
        {"slope_tol", fmt(slope_tol)},
        {"output", output},
    };
    if (expect_slope) e.emplace_back("expect_slope", fmt(*expect_slope));
    return e;
}

ExperimentConfig parse_config(const std::string& text, const std::vector<std::pair<std::string, std::string>>& overrides) {
    ExperimentConfig cfg;
    std::map<std::string, std::pair<std::string, int>> kv;

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("expected 'key = value'", lineno, "");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("empty key", lineno, "");
        if (kv.count(key)) throw ConfigError("duplicate field '" + key + "'", lineno, key);
        kv[key] = {val, lineno};
    }
    for (const auto& [k, v] : overrides) kv[k] = {v, 0};

    for (const char* req : {"spec_version", "scheme", "profile"}) {
        if (!kv.count(req) || kv[req].first.empty())
            throw ConfigError(std::string("missing required field '") + req + "'", 0, req);
    }

    for (const auto& [key, entry] : kv) {
        const auto& [val, line] = entry;
        if (key == "spec_version") {
            if (val != kSpecVersion)
                throw ConfigError("unsupported spec_version '" + val + "' (expected " + kSpecVersion + ")", line, key);
            cfg.spec_version = val;
        } else if (key == "scheme") {
            try {
                parse_scheme(val, 0.1);
            } catch (const DomainError& e) {
                throw ConfigError(e.what(), line, key);
            }
            cfg.scheme = val;
        } else if (key == "profile") {
            try {
                parse_profile(val);
            } catch (const DomainError& e) {
                throw ConfigError(e.what(), line, key);
            }
            cfg.profile = val;
        } else if (key == "s") {
            cfg.s = to_double(val, line, key);
        } else if (key == "p") {
            cfg.p = to_double(val, line, key);
            if (cfg.p != 0.0 && !(cfg.p > 0.0 && cfg.p < 4.0))
                throw ConfigError("p must be 0 (linear) or lie in (0, 4)", line, key);
        } else if (key == "T") {
            cfg.T = to_double(val, line, key);
            if (!(cfg.T > 0.0)) throw ConfigError("T must be positive", line, key);
        } else if (key == "norms") {
            cfg.norms.clear();
            std::stringstream ss(val);
            std::string item;
            while (std::getline(ss, item, ',')) {
                item = trim(item);
                if (!item.empty()) cfg.norms.push_back(item);
            }
            if (cfg.norms.empty()) throw ConfigError("norms list is empty", line, key);
        } else if (key == "h_list") {
            try {
                cfg.h_list = parse_number_list(val);
            } catch (const std::exception&) {
                throw ConfigError("h_list expects comma separated numbers", line, key);
            }
            if (cfg.h_list.size() < 3) throw ConfigError("h_list needs at least 3 values", line, key);
            for (std::size_t i = 0; i < cfg.h_list.size(); ++i) {
                if (!(cfg.h_list[i] > 0.0)) throw ConfigError("grid steps must be positive", line, key);
                if (i > 0 && !(cfg.h_list[i] < cfg.h_list[i - 1]))
                    throw ConfigError("h_list must be strictly decreasing", line, key);
            }
        } else if (key == "dt") {
            cfg.dt = to_double(val, line, key);
            if (!(cfg.dt > 0.0)) throw ConfigError("dt must be positive", line, key);
        } else if (key == "length") {
            cfg.length = to_double(val, line, key);
            if (!(cfg.length > 0.0)) throw ConfigError("length must be positive", line, key);
        } else if (key == "ref_divisor") {
            const double d = to_double(val, line, key);
            if (d < 2 || d != std::floor(d)) throw ConfigError("ref_divisor must be an integer >= 2", line, key);
            cfg.ref_divisor = static_cast<int>(d);
        } else if (key == "sample_interval") {
            cfg.sample_interval = to_double(val, line, key);
            if (!(cfg.sample_interval > 0.0)) throw ConfigError("sample_interval must be positive", line, key);
        } else if (key == "time_samples") {
            const double d = to_double(val, line, key);
            if (d < 2 || d != std::floor(d)) throw ConfigError("time_samples must be an integer >= 2", line, key);
            cfg.time_samples = static_cast<std::size_t>(d);
        } else if (key == "c_p") {
            cfg.c_p = to_double(val, line, key);
            if (!(cfg.c_p > 0.0)) throw ConfigError("c_p must be positive", line, key);
        } else if (key == "seed") {
            try {
                std::size_t used = 0;
                if (val.empty() || val[0] == '-') throw std::invalid_argument(val);
                cfg.seed = std::stoull(val, &used);
                if (used != val.size()) throw std::invalid_argument(val);
            } catch (const std::exception&) {
                throw ConfigError("seed expects a non-negative integer", line, key);
            }
        } else if (key == "expect_slope") {
            cfg.expect_slope = to_double(val, line, key);
        } else if (key == "slope_tol") {
            cfg.slope_tol = to_double(val, line, key);
        } else if (key == "output") {
            cfg.output = val;
        } else {
            throw ConfigError("unknown field '" + key + "'", line, key);
        }
    }
    // Norm selectors may depend on p, which is only known once every key is read.
    const int norms_line = kv.count("norms") ? kv["norms"].second : 0;
    for (const auto& n : cfg.norms) {
        try {
            const NormSelector sel = parse_norm_selector(n, cfg.p > 0.0 ? cfg.p : 2.0);
            if (!is_admissible(sel.q, sel.r))
                throw DomainError("norm '" + n + "' is not an admissible pair (1/q = 1/4 - 1/(2r))");
        } catch (const DomainError& e) {
            throw ConfigError(e.what(), norms_line, "norms");
        }
    }
    return cfg;
}

ExperimentConfig load_config(const std::string& path, const std::vector<std::pair<std::string, std::string>>& overrides) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'", 0, "");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), overrides);
}

}  // namespace displab
