// Failure taxonomy. Every named failure mode maps to one exception type so
// the CLI can translate them into distinct, stable exit codes.
#pragma once

#include <stdexcept>
#include <string>

namespace hcps {

struct Error : std::runtime_error {
  int exit_code;
  Error(const std::string& msg, int code) : std::runtime_error(msg), exit_code(code) {}
};

namespace exit_codes {
// 0 = success, 1 = unclassified failure.
inline constexpr int config = 2;
inline constexpr int activity_too_small = 3;
inline constexpr int cap_exceeded = 4;
inline constexpr int window_too_small = 5;
inline constexpr int validation = 6;
}  // namespace exit_codes

#define HCPS_DEFINE_ERROR(Name, code)                                  \
  struct Name : Error {                                                \
    explicit Name(const std::string& m) : Error(#Name ": " + m, code) {} \
  };

HCPS_DEFINE_ERROR(ConfigError, exit_codes::config)
HCPS_DEFINE_ERROR(UnsupportedFamily, exit_codes::config)
HCPS_DEFINE_ERROR(ActivityTooSmall, exit_codes::activity_too_small)
HCPS_DEFINE_ERROR(CapExceeded, exit_codes::cap_exceeded)
HCPS_DEFINE_ERROR(WindowTooSmall, exit_codes::window_too_small)

HCPS_DEFINE_ERROR(NonBipartite, exit_codes::validation)
HCPS_DEFINE_ERROR(FrameDisconnected, exit_codes::validation)
HCPS_DEFINE_ERROR(NotBasisConnected, exit_codes::validation)
HCPS_DEFINE_ERROR(ParityViolation, exit_codes::validation)
HCPS_DEFINE_ERROR(IncompatiblePair, exit_codes::validation)
HCPS_DEFINE_ERROR(NotIndependent, exit_codes::validation)
HCPS_DEFINE_ERROR(BoundaryViolation, exit_codes::validation)
HCPS_DEFINE_ERROR(InvalidFamily, exit_codes::validation)
HCPS_DEFINE_ERROR(WeightBoundViolated, exit_codes::validation)
HCPS_DEFINE_ERROR(NotCertified, exit_codes::validation)
HCPS_DEFINE_ERROR(MissingLowerClass, exit_codes::validation)
HCPS_DEFINE_ERROR(NoRootInBracket, exit_codes::validation)

#undef HCPS_DEFINE_ERROR

}  // namespace hcps
