#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace agree {

enum class ErrorCode {
  None,
  Overlap,
  Coverage,
  Index,
  SizeMismatch,
  EmptyList,
  EmptyBlock,
  UndefinedUtility,
  ZeroMassBlock,
  SizeLimitExceeded,
  LabelMismatch,
  SelfLoop,
  DuplicateEdge,
  BudgetExceeded,
  Residue,
  Malformed,
  CertificateInvalid,
  OrdinalBudgetExceeded,
  NoCertificateFound,
  Mismatch,
  UnknownFamily,
  UnknownSuite,
  Parse,
  Validation,
  Kind,
  Io,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library. `cause` is set when a ValidationError
// wraps a lower-level failure (e.g. Validation caused by Overlap).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        ErrorCode cause = ErrorCode::None)
      : std::runtime_error(message), m_code(code), m_cause(cause) {}

  ErrorCode code() const { return m_code; }
  ErrorCode cause() const { return m_cause; }

 private:
  ErrorCode m_code;
  ErrorCode m_cause;
};

}  // namespace agree
