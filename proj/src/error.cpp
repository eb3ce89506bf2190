#include "agree/error.hpp"

namespace agree {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::None: return "None";
    case ErrorCode::Overlap: return "OverlapError";
    case ErrorCode::Coverage: return "CoverageError";
    case ErrorCode::Index: return "IndexError";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::EmptyList: return "EmptyList";
    case ErrorCode::EmptyBlock: return "EmptyBlock";
    case ErrorCode::UndefinedUtility: return "UndefinedUtility";
    case ErrorCode::ZeroMassBlock: return "ZeroMassBlock";
    case ErrorCode::SizeLimitExceeded: return "SizeLimitExceeded";
    case ErrorCode::LabelMismatch: return "LabelMismatch";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::Residue: return "ResidueError";
    case ErrorCode::Malformed: return "Malformed";
    case ErrorCode::CertificateInvalid: return "CertificateInvalid";
    case ErrorCode::OrdinalBudgetExceeded: return "OrdinalBudgetExceeded";
    case ErrorCode::NoCertificateFound: return "NoCertificateFound";
    case ErrorCode::Mismatch: return "MismatchError";
    case ErrorCode::UnknownFamily: return "UnknownFamily";
    case ErrorCode::UnknownSuite: return "UnknownSuite";
    case ErrorCode::Parse: return "ParseError";
    case ErrorCode::Validation: return "ValidationError";
    case ErrorCode::Kind: return "KindError";
    case ErrorCode::Io: return "IoError";
  }
  return "Unknown";
}

}  // namespace agree
