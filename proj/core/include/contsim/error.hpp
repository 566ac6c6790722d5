#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace contsim {

/// Error categories surfaced by the library. The CLI maps these to
/// machine-readable error records; tests assert on them.
enum class Errc {
  DuplicateNode,
  UnknownNode,
  DuplicateLink,
  InvalidCapacity,
  InvalidLatency,
  InvalidBandwidth,
  UnknownOwner,
  NoRoute,
  UnknownPod,
  Unschedulable,
  PinnedInfeasible,
  InvalidRequest,
  DuplicateKpi,
  NegativeDuration,
  EmptyGroup,
  MissingBaseline,
  ParseError,
  UnknownKey,
  MissingField,
  InvalidValue,
  UnknownParameter,
  IoError,
};

std::string_view errc_name(Errc code);

class SimError : public std::runtime_error {
 public:
  SimError(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace contsim
