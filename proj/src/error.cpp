#include "wavesym/error.hpp"

namespace wavesym {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MultiplePoint: return "MultiplePoint";
    case ErrorKind::OutOfDomain: return "OutOfDomain";
    case ErrorKind::DegenerateField: return "DegenerateField";
    case ErrorKind::RankZero: return "RankZero";
    case ErrorKind::LiftFailure: return "LiftFailure";
    case ErrorKind::ZeroOnVertex: return "ZeroOnVertex";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::NotBiaxial: return "NotBiaxial";
    case ErrorKind::GluingMismatch: return "GluingMismatch";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::NotConnected: return "NotConnected";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace wavesym
