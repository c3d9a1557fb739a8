#include "hquot/errors.hpp"

namespace hquot {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NotInvertible: return "NotInvertible";
    case Errc::RangeTooLarge: return "RangeTooLarge";
    case Errc::VacuousSum: return "VacuousSum";
    case Errc::InvalidPrime: return "InvalidPrime";
    case Errc::BaseNotCoprime: return "BaseNotCoprime";
    case Errc::MethodUnavailable: return "MethodUnavailable";
    case Errc::Overflow: return "Overflow";
    case Errc::CeilingExceeded: return "CeilingExceeded";
    case Errc::CheckpointMismatch: return "CheckpointMismatch";
    case Errc::CheckpointCorrupt: return "CheckpointCorrupt";
    case Errc::IoFailure: return "IoFailure";
    case Errc::NotPrime: return "NotPrime";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "UnknownError";
}

}  // namespace hquot
