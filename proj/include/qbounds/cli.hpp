#pragma once

// Command-line front end: fig1, bounds and audit subcommands.
//
// Exit codes: 0 success, 2 configuration or parse error, 3 numeric
// precondition error, 4 I/O error.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qbounds/bounds.hpp"
#include "qbounds/config.hpp"

namespace qbounds {

enum ExitCode : int { exit_ok = 0, exit_config = 2, exit_numeric = 3, exit_io = 4 };

class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Operator spec for `bounds`. Text layout:
//
//   model = oscillator | nonlocal | explicit
//   state = vacuum | coherent:<alpha> | probs:<p0>,<p1>,...
//   probs1 = <q0>,<q1>,...      optional first-order probability shifts
//   t = <time>                  coherent states are evolved to time t
//   nu = <repetitions>
//   dim = <truncation>          overrides the config dim
//   matrix K                    explicit model only; also K1, basis, basis1
//   <re> <im> <re> <im> ...     one row per line, dim pairs per row
//   end
//
// '#' starts a comment. Errors carry "line N:" prefixes.
struct OperatorSpec {
    enum class Model { oscillator, nonlocal, explicit_matrices };
    enum class State { vacuum, coherent, probs };

    Model model = Model::oscillator;
    State state = State::vacuum;
    double alpha = 0.0;
    std::vector<double> probs;
    std::vector<double> probs1;
    double t = 0.0;
    int nu = 1;
    std::optional<int> dim;
    std::optional<Matrix> K, K1, basis, basis1;

    // Content-derived summary used in report headers.
    std::string describe() const;
};

OperatorSpec parse_operator_spec(std::string_view text);

struct BoundsRun {
    BoundReport report;
    std::string description;
};

// Builds the deformed operator and density the spec names and evaluates every bound.
BoundsRun run_bounds(const OperatorSpec &spec, const SweepConfig &cfg);

void write_bounds_csv(std::ostream &out, const SweepConfig &cfg, const BoundsRun &run);

// args excludes the program name.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace qbounds
