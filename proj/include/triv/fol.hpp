#ifndef TRIV_FOL_HPP
#define TRIV_FOL_HPP

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "triv/algebra.hpp"
#include "triv/formula.hpp"

namespace triv {

struct ThetaSignature {
  std::set<std::string> consts;
  std::map<std::string, int> funcs; // symbol -> arity
  std::map<std::string, int> preds; // symbol -> arity

  bool knowsConst(const std::string& s) const { return consts.count(s) != 0; }
};

// Finite first-order structure: a verified Sup algebra of truth values,
// a finite domain, and total interpretation tables. Function and
// predicate tables are mixed-radix in the argument tuple.
struct Structure {
  FiniteAlgebra algebra;
  std::vector<std::string> domain;
  ThetaSignature theta;
  std::map<std::string, int> constInterp;
  std::map<std::string, std::vector<int>> funcInterp;
  std::map<std::string, std::vector<int>> predInterp;

  int domainSize() const { return static_cast<int>(domain.size()); }
};

using Assignment = std::map<std::string, int>; // variable -> domain index

int evalTerm(const Structure& s, const Assignment& v, const TermPtr& t);

// Structural recursion; quantifiers fold the join (exists) or the
// order-meet (forall) over the domain. A missing meet raises
// MeetUndefined with the offending pair in the message.
int evalFormula(const Structure& s, const Assignment& v, const FormulaPtr& phi);

struct TruthReport {
  bool holds = false;
  std::optional<Assignment> witness; // least failing assignment
  long long assignmentsScanned = 0;
};

TruthReport isTrue(const Structure& s, const FormulaPtr& phi,
                   long long maxAssignments = 1000000);

struct StructuralConsequence {
  bool holds = true;
  int failingStructure = -1;
  std::optional<Assignment> witness;
};

// Whether the structure interprets every symbol of the formula at the
// right arity.
bool interprets(const Structure& s, const FormulaPtr& phi);

// Gamma |= phi checked structure-by-structure over the given corpus;
// structures that do not interpret all the symbols involved are skipped.
StructuralConsequence semanticConsequence(const std::vector<Structure>& corpus,
                                          const std::vector<FormulaPtr>& gamma,
                                          const FormulaPtr& phi);

struct DeltaAudit {
  bool ok = true;
  long long joinsChecked = 0;
  long long meetsChecked = 0;
  std::vector<std::string> violations;
};

// For every carrier subset whose join (meet) exists: # distributes over
// it. Exhaustive up to the given carrier size, sampled beyond.
DeltaAudit auditDeltaDistribution(const FiniteAlgebra& a, int exhaustiveMax = 9,
                                  int samples = 2000);

struct FolAxiomAudit {
  bool ok = true;
  int axiomInstances = 0;
  int ruleInstances = 0;
  int nonVacuousRules = 0;
  std::vector<std::string> violations;
};

// Generates quantifier-axiom instances (side conditions enforced) and
// rule instances over each structure's own signature and checks truth.
FolAxiomAudit auditFirstOrderAxioms(const std::vector<Structure>& corpus);

// Built-in family of small structures over the Sup chain; used by the
// audits and available to the command line.
std::vector<Structure> defaultStructureCorpus();

} // namespace triv

#endif
