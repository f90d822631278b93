#include "qbounds/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qbounds {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::string format_double(double v) {
    // %g honours LC_NUMERIC; the library never calls setlocale, so the C locale applies
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(std::string_view text) {
    std::string s = trim(text);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw ConfigError("not a number: '" + s + "'");
    return v;
}

int parse_int(std::string_view text) {
    std::string s = trim(text);
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
        throw ConfigError("not an integer: '" + s + "'");
    return v;
}

std::vector<double> parse_double_list(std::string_view text) {
    std::vector<double> out;
    std::string s(text);
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        out.push_back(parse_double(item));
    if (out.empty())
        throw ConfigError("empty list");
    return out;
}

void set_config_key(SweepConfig &cfg, std::string_view key, std::string_view value) {
    if (key == "alpha_list")
        cfg.alpha_list = parse_double_list(value);
    else if (key == "eta")
        cfg.eta = parse_double(value);
    else if (key == "t_min")
        cfg.t_min = parse_double(value);
    else if (key == "t_max")
        cfg.t_max = parse_double(value);
    else if (key == "t_steps")
        cfg.t_steps = parse_int(value);
    else if (key == "dim")
        cfg.dim = parse_int(value);
    else if (key == "a2")
        cfg.a2 = parse_double(value);
    else if (key == "hbar")
        cfg.hbar = parse_double(value);
    else if (key == "tail_tol")
        cfg.tail_tol = parse_double(value);
    else if (key == "output_path")
        cfg.output_path = trim(value);
    else
        throw ConfigError("unknown key '" + std::string(key) + "'");
}

SweepConfig parse_config_text(std::string_view text, SweepConfig base) {
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        std::string body = trim(std::string_view(line).substr(0, hash));
        if (body.empty())
            continue;
        auto eq = body.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
        try {
            set_config_key(base, trim(std::string_view(body).substr(0, eq)), std::string_view(body).substr(eq + 1));
        } catch (const ConfigError &e) {
            throw ConfigError("line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return base;
}

SweepConfig load_config_file(const std::filesystem::path &path, SweepConfig base) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot read config file " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_config_text(buf.str(), std::move(base));
    } catch (const ConfigError &e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

void SweepConfig::validate() const {
    auto fail = [](const std::string &msg) { throw ConfigError(msg); };
    if (alpha_list.empty())
        fail("alpha_list must not be empty");
    for (double a : alpha_list)
        if (!(a >= 0.0) || !std::isfinite(a))
            fail("alpha_list entries must be finite and >= 0");
    if (!std::isfinite(eta))
        fail("eta must be finite");
    if (!std::isfinite(t_min) || !std::isfinite(t_max) || !(t_min < t_max))
        fail("t_min must be below t_max");
    if (t_steps < 2)
        fail("t_steps must be >= 2");
    if (dim < 8)
        fail("dim must be >= 8");
    if (!std::isfinite(a2))
        fail("a2 must be finite");
    if (!(hbar > 0.0) || !std::isfinite(hbar))
        fail("hbar must be positive");
    if (!(tail_tol > 0.0))
        fail("tail_tol must be positive");
}

std::vector<double> SweepConfig::times() const {
    std::vector<double> ts(t_steps);
    const double step = (t_max - t_min) / (t_steps - 1);
    for (int i = 0; i < t_steps; ++i)
        ts[i] = t_min + step * i;
    ts.back() = t_max;
    return ts;
}

std::string SweepConfig::echo() const {
    std::ostringstream out;
    out << "# alpha_list = ";
    for (std::size_t i = 0; i < alpha_list.size(); ++i)
        out << (i ? "," : "") << format_double(alpha_list[i]);
    out << "\n# eta = " << format_double(eta) << "\n# t_min = " << format_double(t_min)
        << "\n# t_max = " << format_double(t_max) << "\n# t_steps = " << t_steps << "\n# dim = " << dim
        << "\n# a2 = " << format_double(a2) << "\n# hbar = " << format_double(hbar)
        << "\n# tail_tol = " << format_double(tail_tol) << "\n";
    return out.str();
}

} // namespace qbounds
