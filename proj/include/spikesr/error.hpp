#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spikesr {

enum class ErrorKind {
  InvalidArgument,
  DegenerateSystem,
  RepeatedRoots,
  RankDeficiency,
  EigenFailure,
  NearCoincidentNodes,
  EmptyAdmissibleSet,
  EpsilonTooLarge,
  InsufficientData,
  DegenerateFit,
  Parse,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every failure raised by the library carries a kind so callers (the CLI in
// particular) can map it to an exit status without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "invalid argument";
    case ErrorKind::DegenerateSystem: return "degenerate system";
    case ErrorKind::RepeatedRoots: return "repeated roots";
    case ErrorKind::RankDeficiency: return "rank deficiency";
    case ErrorKind::EigenFailure: return "eigen failure";
    case ErrorKind::NearCoincidentNodes: return "near-coincident nodes";
    case ErrorKind::EmptyAdmissibleSet: return "empty admissible set";
    case ErrorKind::EpsilonTooLarge: return "epsilon too large";
    case ErrorKind::InsufficientData: return "insufficient data";
    case ErrorKind::DegenerateFit: return "degenerate fit";
    case ErrorKind::Parse: return "parse error";
  }
  return "unknown";
}

inline void require(bool cond, const std::string& what) {
  if (!cond) throw Error(ErrorKind::InvalidArgument, what);
}

}  // namespace spikesr
