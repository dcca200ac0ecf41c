#include "focal/error.h"

namespace focal {

std::string_view ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidProfile: return "invalid-profile";
    case ErrorKind::kCapacity: return "capacity";
    case ErrorKind::kUndefinedMetric: return "undefined-metric";
    case ErrorKind::kEmptyDomain: return "empty-domain";
    case ErrorKind::kInvalidParameter: return "invalid-parameter";
    case ErrorKind::kAmbiguousFocal: return "ambiguous-focal";
    case ErrorKind::kInvalidSymmetry: return "invalid-symmetry";
    case ErrorKind::kInvalidSalience: return "invalid-salience";
    case ErrorKind::kMissingLabel: return "missing-label";
    case ErrorKind::kInvalidBoard: return "invalid-board";
    case ErrorKind::kInvalidAssignment: return "invalid-assignment";
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kLoad: return "load";
    case ErrorKind::kTemplate: return "template";
    case ErrorKind::kTransport: return "transport";
    case ErrorKind::kProvider: return "provider";
    case ErrorKind::kPolicy: return "policy";
    case ErrorKind::kIngestion: return "ingestion";
    case ErrorKind::kEmptyInput: return "empty-input";
    case ErrorKind::kConfig: return "config";
  }
  return "unknown";
}

}  // namespace focal
