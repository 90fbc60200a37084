#include "sndg/errors.h"

namespace sndg {

const char* ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kIo: return "io";
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kValidation: return "validation";
    case ErrorKind::kBudget: return "budget";
    case ErrorKind::kDomain: return "domain";
    case ErrorKind::kStructure: return "structure";
    case ErrorKind::kPrecondition: return "precondition";
    case ErrorKind::kVerification: return "verification";
    case ErrorKind::kGeneration: return "generation";
    case ErrorKind::kDegenerate: return "degenerate";
    case ErrorKind::kInternal: return "internal";
  }
  return "unknown";
}

}  // namespace sndg
