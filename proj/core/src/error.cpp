#include "trustrev/error.hpp"

namespace trustrev {

namespace {

std::string format_what(ErrorCode code, const std::string& message,
                        std::optional<std::size_t> line) {
  std::string out;
  if (line) out += "line " + std::to_string(*line) + ": ";
  out += error_code_name(code);
  out += ": ";
  out += message;
  return out;
}

}  // namespace

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownAtom: return "UnknownAtom";
    case ErrorCode::InvalidSignature: return "InvalidSignature";
    case ErrorCode::SignatureTooLarge: return "SignatureTooLarge";
    case ErrorCode::SignatureMismatch: return "SignatureMismatch";
    case ErrorCode::InvalidStateLiteral: return "InvalidStateLiteral";
    case ErrorCode::InconsistentBeliefs: return "InconsistentBeliefs";
    case ErrorCode::OverlappingCells: return "OverlappingCells";
    case ErrorCode::NotExhaustive: return "NotExhaustive";
    case ErrorCode::EmptyCell: return "EmptyCell";
    case ErrorCode::FaithfulnessViolation: return "FaithfulnessViolation";
    case ErrorCode::IncompleteRanking: return "IncompleteRanking";
    case ErrorCode::DuplicateRank: return "DuplicateRank";
    case ErrorCode::UnsatisfiableInput: return "UnsatisfiableInput";
    case ErrorCode::ConflictingReports: return "ConflictingReports";
    case ErrorCode::EmptyReportSet: return "EmptyReportSet";
    case ErrorCode::MissingPair: return "MissingPair";
    case ErrorCode::DuplicatePair: return "DuplicatePair";
    case ErrorCode::AxiomViolation: return "AxiomViolation";
    case ErrorCode::NonzeroDiagonal: return "NonzeroDiagonal";
    case ErrorCode::ThresholdNotTransitive: return "ThresholdNotTransitive";
    case ErrorCode::MalformedLine: return "MalformedLine";
    case ErrorCode::UnknownAgent: return "UnknownAgent";
    case ErrorCode::DuplicateAgent: return "DuplicateAgent";
    case ErrorCode::NotABeliever: return "NotABeliever";
    case ErrorCode::UnknownTrust: return "UnknownTrust";
    case ErrorCode::MixedTrustKinds: return "MixedTrustKinds";
    case ErrorCode::StaleExplicitOrder: return "StaleExplicitOrder";
    case ErrorCode::IoError: return "IoError";
  }
  return "UnknownError";
}

Error::Error(ErrorCode code, std::string message, std::optional<std::size_t> line)
    : std::runtime_error(format_what(code, message, line)),
      code_(code),
      message_(std::move(message)),
      line_(line) {}

Error Error::at_line(std::size_t line) const { return Error(code_, message_, line); }

}  // namespace trustrev
