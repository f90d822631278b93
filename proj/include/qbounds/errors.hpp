#pragma once

#include <stdexcept>
#include <string>

namespace qbounds {

enum class ErrorCode {
    InvalidDimension,
    DimensionMismatch,
    TruncationInsufficient,
    NotHermitian,
    NotOrthonormal,
    InvalidProbabilities,
    Degenerate,
    InvalidEta,
    UndefinedBound,
    EnergyConvention,
    NoInformation,
    NotNormalized,
};

const char *to_string(ErrorCode code);

// Every failure raised by the library carries a code so the CLI can map it to an exit status.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string &what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

class TruncationError : public Error {
  public:
    TruncationError(const std::string &what, double tail_mass)
        : Error(ErrorCode::TruncationInsufficient, what), tail_mass_(tail_mass) {}
    double tail_mass() const noexcept { return tail_mass_; }

  private:
    double tail_mass_;
};

} // namespace qbounds
