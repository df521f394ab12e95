#include "specinv/error.hpp"

#include <utility>

namespace specinv {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::domain: return "domain";
    case ErrorCode::range: return "range";
    case ErrorCode::unsupported_model: return "unsupported_model";
    case ErrorCode::no_bound_state: return "no_bound_state";
    case ErrorCode::numerical_instability: return "numerical_instability";
    case ErrorCode::unbounded_search: return "unbounded_search";
    case ErrorCode::invariant_violation: return "invariant_violation";
    case ErrorCode::boundary_extremum: return "boundary_extremum";
    case ErrorCode::partial_curve: return "partial_curve";
    case ErrorCode::basis_unsuitable: return "basis_unsuitable";
    case ErrorCode::tangency: return "tangency";
    case ErrorCode::no_certificate: return "no_certificate";
    case ErrorCode::iterate_unsolvable: return "iterate_unsolvable";
    case ErrorCode::divergence: return "divergence";
    case ErrorCode::bad_input: return "bad_input";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message, nlohmann::json detail)
    : std::runtime_error(message), code_(code), detail_(std::move(detail)) {}

nlohmann::json Error::to_json() const {
  nlohmann::json j;
  j["error"] = to_string(code_);
  j["message"] = what();
  if (!detail_.empty()) j["detail"] = detail_;
  return j;
}

BoundaryError::BoundaryError(const std::string& message, double location, Side side, nlohmann::json detail)
    : Error(ErrorCode::boundary_extremum, message, std::move(detail)), location_(location), side_(side) {}

namespace {

nlohmann::json partial_detail(const std::vector<PartialCurveError::Sample>& solved, const std::vector<double>& failed) {
  nlohmann::json j;
  j["failed_v"] = failed;
  j["solved"] = solved.size();
  return j;
}

}  // namespace

PartialCurveError::PartialCurveError(std::vector<Sample> solved, std::vector<double> failed)
    : Error(ErrorCode::partial_curve, "no bound state at " + std::to_string(failed.size()) + " coupling(s)",
            partial_detail(solved, failed)),
      solved_(std::move(solved)),
      failed_(std::move(failed)) {}

}  // namespace specinv
