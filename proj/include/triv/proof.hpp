#ifndef TRIV_PROOF_HPP
#define TRIV_PROOF_HPP

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "triv/formula.hpp"

namespace triv {

enum class CalculusId { iH3, H3sup, QH3sup };

enum class RuleKind { MP, Nec, RAnd, R3, R4 };

// Axiom schemas plus the admitted rules. The two substitution axioms of
// the first-order calculus are matched structurally, not by pattern.
struct Calculus {
  CalculusId id = CalculusId::H3sup;
  Signature sig;
  std::vector<SchemaPattern> axioms;
  std::set<RuleKind> rules;
  bool substitutionAxioms = false; // Ax11 / Ax12
};

const Calculus& calculus(CalculusId id);
std::string calculusName(CalculusId id);
std::optional<CalculusId> calculusByName(const std::string& name);

struct Justification {
  enum class Kind { Axiom, Premise, MP, Nec, RAnd, R3, R4 };
  Kind kind = Kind::Axiom;
  std::string axiomId; // optional restriction for Axiom lines
  int i = -1;          // line of the minor premise / rule input
  int j = -1;          // line of the implication for MP
  std::string var;     // quantified variable for R3/R4
};

struct DerivationLine {
  FormulaPtr formula;
  Justification just;
};

struct Derivation {
  CalculusId calc = CalculusId::H3sup;
  std::vector<FormulaPtr> premises;
  std::vector<DerivationLine> lines;

  FormulaPtr conclusion() const { return lines.empty() ? nullptr : lines.back().formula; }
};

struct LineVerdict {
  bool ok = true;
  std::string reason;
  std::string matchedAxiom;
};

struct CheckReport {
  bool ok = true;
  int firstFailure = -1;
  std::vector<LineVerdict> lines;
};

// Verifies every line against its stated justification. Line-local:
// verdicts depend only on earlier lines, and checking continues past a
// failure so the report covers the whole derivation.
CheckReport checkDerivation(const Derivation& d);

struct SearchResult {
  std::optional<Derivation> derivation;
  int depth = 0;        // proof depth at which the goal appeared
  long long facts = 0;  // saturated fact count
  bool truncated = false;

  bool found() const { return derivation.has_value(); }
};

// Forward saturation over axiom instances whose metavariables range over
// the subformula closure of goal and premises, closed one level under #,
// plus seeded identity lemmas. Propositional calculi only; a miss is a
// NotFound outcome, never a refutation claim.
SearchResult searchDerivation(const FormulaPtr& goal, const std::vector<FormulaPtr>& premises,
                              CalculusId calc, int depthBudget,
                              long long factBudget = 400000);

// Convenience for building corpus derivations; every step recomputes the
// implied conclusion so stated justifications cannot drift.
class DerivationBuilder {
public:
  DerivationBuilder(CalculusId calc, std::vector<FormulaPtr> premises = {});

  int axiom(const std::string& id, const std::vector<FormulaPtr>& metas);
  int axiomRaw(const std::string& id, FormulaPtr instance);
  int premise(int index);
  int mp(int minor, int implication);
  int nec(int from);
  int rAnd(int from);
  int r3(int from, const std::string& var);
  int r4(int from, const std::string& var);

  // x -> z out of x -> y and y -> z, via A1/A2 and two detachments
  int chain(int xy, int yz);
  // the five-line derivation of f -> f
  int identity(const FormulaPtr& f);

  const FormulaPtr& at(int line) const { return d_.lines[line].formula; }
  Derivation take() { return std::move(d_); }

private:
  Derivation d_;
  const Calculus& calc_;
  int push(FormulaPtr f, Justification j);
};

struct NamedDerivation {
  std::string name;
  std::string statement;
  Derivation derivation;
};

// Bundled machine-checked derivations and derived-rule witnesses.
std::vector<NamedDerivation> lemmaCorpus();

} // namespace triv

#endif
