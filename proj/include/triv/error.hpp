#ifndef TRIV_ERROR_HPP
#define TRIV_ERROR_HPP

#include <optional>
#include <stdexcept>
#include <string>

namespace triv {

// Byte range in an input text, for parse diagnostics.
struct SourceSpan {
  std::size_t start = 0;
  std::size_t end = 0;
  int line = 1;
  int column = 1;
};

enum class ErrorKind {
  Syntax,
  Signature,
  Schema,
  Arity,
  Domain,
  Capture,
  UnboundVariable,
  VariableBudgetExceeded,
  CarrierBudgetExceeded,
  AssignmentBudgetExceeded,
  BudgetExceeded,
  NotModal,
  NotCongruence,
  Partition,
  NotSemisimple,
  MeetUndefined,
  Precondition,
};

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, std::string message)
      : std::runtime_error(std::move(message)), kind_(kind) {}
  Error(ErrorKind kind, std::string message, SourceSpan span)
      : std::runtime_error(std::move(message)), kind_(kind), span_(span) {}

  ErrorKind kind() const { return kind_; }
  const std::optional<SourceSpan>& span() const { return span_; }

private:
  ErrorKind kind_;
  std::optional<SourceSpan> span_;
};

const char* errorKindName(ErrorKind kind);

} // namespace triv

#endif
