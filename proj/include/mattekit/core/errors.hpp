#ifndef MATTEKIT_CORE_ERRORS_HPP_
#define MATTEKIT_CORE_ERRORS_HPP_

#include <optional>
#include <stdexcept>
#include <string>

namespace mattekit {

enum class ErrorCode {
  OutOfRangeValue,
  ShapeMismatch,
  NonBinaryValue,
  ZeroDimension,
  EmptyMask,
  EmptyBackground,
  ChannelMismatch,
  OddSplit,
  ImageTooSmall,
  MissingPrediction,
  ParseError,
  IoError,
};

const char* to_string(ErrorCode code);

/// Thrown by constructors and operations when a contract is violated.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

/// Result of a non-throwing validation. `code` is empty when all invariants hold;
/// otherwise it names the first violated one and `detail` says where.
struct Status {
  std::optional<ErrorCode> code;
  std::string detail;

  bool ok() const { return !code.has_value(); }

  static Status good() { return {}; }
  static Status fail(ErrorCode c, std::string d) { return {c, std::move(d)}; }

  /// Throws Error if not ok.
  void check() const {
    if (code) throw Error(*code, detail);
  }
};

/// Non-fatal conditions surfaced by losses and metrics.
enum class Warning {
  EmptyUnknown,          // unknown-region mask has no pixels; value defined as 0
  NoFullyOpaqueRegion,   // connectivity source region is empty; value defined as 0
};

const char* to_string(Warning warning);

}  // namespace mattekit

#endif  // MATTEKIT_CORE_ERRORS_HPP_
