#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace trustrev {

enum class ErrorCode {
  // logic
  SyntaxError,
  UnknownAtom,
  InvalidSignature,
  SignatureTooLarge,
  SignatureMismatch,
  InvalidStateLiteral,
  InconsistentBeliefs,
  // partition
  OverlappingCells,
  NotExhaustive,
  EmptyCell,
  // revision
  FaithfulnessViolation,
  IncompleteRanking,
  DuplicateRank,
  UnsatisfiableInput,
  ConflictingReports,
  EmptyReportSet,
  // pseudometric
  MissingPair,
  DuplicatePair,
  AxiomViolation,
  NonzeroDiagonal,
  ThresholdNotTransitive,
  // scenario
  MalformedLine,
  UnknownAgent,
  DuplicateAgent,
  NotABeliever,
  UnknownTrust,
  MixedTrustKinds,
  StaleExplicitOrder,
  IoError,
};

std::string_view error_code_name(ErrorCode code);

// Every failure raised by the engine. `line` is set when the error was
// raised while reading a line-oriented file.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, std::optional<std::size_t> line = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  const std::string& message() const noexcept { return message_; }
  std::optional<std::size_t> line() const noexcept { return line_; }

  // Same error, attributed to a line of an input file.
  Error at_line(std::size_t line) const;

 private:
  ErrorCode code_;
  std::string message_;
  std::optional<std::size_t> line_;
};

}  // namespace trustrev
