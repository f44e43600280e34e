#include "attitude/errors.hpp"

namespace att {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NotSkewSymmetric: return "NotSkewSymmetric";
    case Errc::AxisNotUnit: return "AxisNotUnit";
    case Errc::DegenerateFrame: return "DegenerateFrame";
    case Errc::CollinearObservations: return "CollinearObservations";
    case Errc::DegenerateGain: return "DegenerateGain";
    case Errc::SingularInnovation: return "SingularInnovation";
    case Errc::SingularMB: return "SingularMB";
    case Errc::FunnelViolation: return "FunnelViolation";
    case Errc::UnstableSetProximity: return "UnstableSetProximity";
    case Errc::GainSingularity: return "GainSingularity";
    case Errc::GimbalLock: return "GimbalLock";
    case Errc::EmptyWindow: return "EmptyWindow";
    case Errc::ConfigError: return "ConfigError";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

}  // namespace att
