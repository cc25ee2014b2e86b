#ifndef NOMASEC_ERRORS_HPP
#define NOMASEC_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace nomasec {

enum class ErrorCode {
  Q1Infeasible,
  SecrecyInfeasible,
  InfeasibleEpsilon,
  NonFinite,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Q1Infeasible: return "Q1_INFEASIBLE";
    case ErrorCode::SecrecyInfeasible: return "SECRECY_INFEASIBLE";
    case ErrorCode::InfeasibleEpsilon: return "INFEASIBLE_EPSILON";
    case ErrorCode::NonFinite: return "NONFINITE";
  }
  return "UNKNOWN";
}

// Raised by single-quantity operations that have no meaningful value for the
// given input. The full solvers report infeasibility through SolveReport
// instead of throwing.
class SolveError : public std::runtime_error {
 public:
  SolveError(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace nomasec

#endif  // NOMASEC_ERRORS_HPP
