#include "triv/error.hpp"
#include "triv/truth.hpp"

namespace triv {

std::string tvName(Tv v) {
  switch (v) {
    case Tv::F: return "0";
    case Tv::H: return "1/2";
    default: return "1";
  }
}

const char* errorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Syntax: return "SyntaxError";
    case ErrorKind::Signature: return "SignatureError";
    case ErrorKind::Schema: return "SchemaError";
    case ErrorKind::Arity: return "ArityError";
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::Capture: return "CaptureError";
    case ErrorKind::UnboundVariable: return "UnboundVariable";
    case ErrorKind::VariableBudgetExceeded: return "VariableBudgetExceeded";
    case ErrorKind::CarrierBudgetExceeded: return "CarrierBudgetExceeded";
    case ErrorKind::AssignmentBudgetExceeded: return "AssignmentBudgetExceeded";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NotModal: return "NotModal";
    case ErrorKind::NotCongruence: return "NotCongruence";
    case ErrorKind::Partition: return "PartitionError";
    case ErrorKind::NotSemisimple: return "NotSemisimpleWitness";
    case ErrorKind::MeetUndefined: return "MeetUndefined";
    case ErrorKind::Precondition: return "PreconditionError";
  }
  return "Error";
}

} // namespace triv
