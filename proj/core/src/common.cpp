#include <brp/error.hpp>
#include <brp/types.hpp>

#include <sstream>

namespace brp {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonHyperbolic: return "NonHyperbolic";
    case ErrorKind::NearSingular: return "NearSingular";
    case ErrorKind::Ambiguous: return "Ambiguous";
    case ErrorKind::EmptyInterval: return "EmptyInterval";
    case ErrorKind::ContinuationStall: return "ContinuationStall";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::LeftRegion: return "LeftRegion";
    case ErrorKind::FixedPointDiverged: return "FixedPointDiverged";
    case ErrorKind::NoConnection: return "NoConnection";
    case ErrorKind::BlowUp: return "BlowUp";
    case ErrorKind::NewtonDiverged: return "NewtonDiverged";
    case ErrorKind::DataTooLarge: return "DataTooLarge";
    case ErrorKind::CFLViolation: return "CFLViolation";
    case ErrorKind::DomainEscape: return "DomainEscape";
    case ErrorKind::WindowMismatch: return "WindowMismatch";
    case ErrorKind::PoorFit: return "PoorFit";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

bool Box::contains(const State& u, double slack) const {
  if (u.size() != lower.size()) return false;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (!(u[i] >= lower[i] - slack && u[i] <= upper[i] + slack)) return false;
  }
  return true;
}

Box Box::around(const State& u, double radius) const {
  Box b;
  b.lower = (u.array() - radius).max(lower.array()).matrix();
  b.upper = (u.array() + radius).min(upper.array()).matrix();
  return b;
}

Box make_box(const State& lower, const State& upper) {
  if (lower.size() != upper.size()) fail(ErrorKind::InvalidArgument, "box bounds differ in size");
  for (Eigen::Index i = 0; i < lower.size(); ++i) {
    if (!(lower[i] <= upper[i])) fail(ErrorKind::InvalidArgument, "box lower bound exceeds upper");
  }
  return Box{lower, upper};
}

std::string format_state(const State& u) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    if (i) os << ", ";
    os << u[i];
  }
  os << ')';
  return os.str();
}

}  // namespace brp
