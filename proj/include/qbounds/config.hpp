#pragma once

// Sweep configuration: a flat `key = value` text file with '#' comments.
// Command-line flags override file values, which override the defaults.

#include <filesystem>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qbounds {

class ConfigError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct SweepConfig {
    std::vector<double> alpha_list{0.0, 0.5, 1.0, 2.0};
    double eta = 0.01;
    double t_min = 0.0;
    double t_max = 2.0 * std::numbers::pi;
    int t_steps = 512;
    int dim = 64;
    double a2 = 1.0;
    double hbar = 1.0;
    double tail_tol = 1e-10;
    std::string output_path;

    // Throws ConfigError naming the offending key.
    void validate() const;
    // t_steps points from t_min to t_max inclusive.
    std::vector<double> times() const;
    // "# key = value" lines in declaration order. output_path is left out so
    // that identical settings echo identically wherever the file is written.
    std::string echo() const;
};

inline const std::vector<std::string> &config_keys() {
    static const std::vector<std::string> keys{"alpha_list", "eta",  "t_min", "t_max",    "t_steps",
                                               "dim",        "a2",   "hbar",  "tail_tol", "output_path"};
    return keys;
}

void set_config_key(SweepConfig &cfg, std::string_view key, std::string_view value);
// Errors carry "line N:" prefixes.
SweepConfig parse_config_text(std::string_view text, SweepConfig base = {});
SweepConfig load_config_file(const std::filesystem::path &path, SweepConfig base = {});

// 17 significant digits, '.' decimal separator regardless of locale.
std::string format_double(double v);
double parse_double(std::string_view text);
int parse_int(std::string_view text);
std::vector<double> parse_double_list(std::string_view text);

std::string trim(std::string_view s);

} // namespace qbounds
