#pragma once

#include <stdexcept>
#include <string>

namespace att {

enum class Errc {
  NotSkewSymmetric,
  AxisNotUnit,
  DegenerateFrame,
  CollinearObservations,
  DegenerateGain,
  SingularInnovation,
  SingularMB,
  FunnelViolation,
  UnstableSetProximity,
  GainSingularity,
  GimbalLock,
  EmptyWindow,
  ConfigError,
  IoError,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);
  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace att
