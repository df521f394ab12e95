#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace specinv {

enum class ErrorCode {
  domain,
  range,
  unsupported_model,
  no_bound_state,
  numerical_instability,
  unbounded_search,
  invariant_violation,
  boundary_extremum,
  partial_curve,
  basis_unsuitable,
  tangency,
  no_certificate,
  iterate_unsolvable,
  divergence,
  bad_input,
  io,
};

const char* to_string(ErrorCode code) noexcept;

/// Base exception for every library failure. `detail()` carries structured
/// evidence (bracketing energies, boundary locations, ...) for diagnostics.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, nlohmann::json detail = nlohmann::json::object());

  ErrorCode code() const noexcept { return code_; }
  const nlohmann::json& detail() const noexcept { return detail_; }

  nlohmann::json to_json() const;

 private:
  ErrorCode code_;
  nlohmann::json detail_;
};

/// An extremum search whose optimum sits on the edge of the admissible
/// parameter interval. `location()` is the offending boundary value.
class BoundaryError : public Error {
 public:
  enum class Side { lower, upper };

  BoundaryError(const std::string& message, double location, Side side, nlohmann::json detail = nlohmann::json::object());

  double location() const noexcept { return location_; }
  Side side() const noexcept { return side_; }

 private:
  double location_;
  Side side_;
};

/// Raised by curve sampling when some couplings admit no bound state.
/// The successfully solved samples are kept so callers may continue.
class PartialCurveError : public Error {
 public:
  struct Sample {
    double v;
    double value;
    double derivative;
  };

  PartialCurveError(std::vector<Sample> solved, std::vector<double> failed);

  const std::vector<Sample>& solved() const noexcept { return solved_; }
  const std::vector<double>& failed() const noexcept { return failed_; }

 private:
  std::vector<Sample> solved_;
  std::vector<double> failed_;
};

}  // namespace specinv
