#ifndef FOCAL_ERROR_H_
#define FOCAL_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace focal {

// Every failure raised by the library carries one of these kinds so callers
// (and the CLI exit-code mapping) can branch without string matching.
enum class ErrorKind {
  kInvalidProfile,
  kCapacity,
  kUndefinedMetric,
  kEmptyDomain,
  kInvalidParameter,
  kAmbiguousFocal,
  kInvalidSymmetry,
  kInvalidSalience,
  kMissingLabel,
  kInvalidBoard,
  kInvalidAssignment,
  kParse,
  kLoad,
  kTemplate,
  kTransport,
  kProvider,
  kPolicy,
  kIngestion,
  kEmptyInput,
  kConfig,
};

std::string_view ErrorKindName(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace focal

#endif  // FOCAL_ERROR_H_
