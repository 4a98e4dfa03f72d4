#ifndef TRIV_FORMULA_HPP
#define TRIV_FORMULA_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "triv/error.hpp"

namespace triv {

// Propositional signatures: {->, /\, #} (Inf) and {->, \/, #} (Sup).
enum class SigKind : std::uint8_t { Inf, Sup };

struct Signature {
  SigKind kind = SigKind::Sup;
  bool firstOrder = false;
};

enum class TermKind : std::uint8_t { Var, Const, Func };

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  TermKind kind;
  std::string name;
  std::vector<TermPtr> args;
  std::size_t hash;
};

TermPtr mkTermVar(std::string name);
TermPtr mkConst(std::string name);
TermPtr mkFunc(std::string name, std::vector<TermPtr> args);

bool equal(const TermPtr& a, const TermPtr& b);

// Formula nodes. Nabla is not here: it is a macro, expanded on sight.
// Meta occurs only inside schema patterns, never in object formulas.
enum class NodeKind : std::uint8_t { Var, Meta, Imp, And, Or, Nec, Pred, Forall, Exists };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  NodeKind kind;
  std::string name;          // Var/Meta name, Pred symbol, quantified variable
  FormulaPtr lhs, rhs;       // binary children; unary body lives in lhs
  std::vector<TermPtr> args; // Pred arguments
  std::size_t hash;
};

FormulaPtr mkVar(std::string name);
FormulaPtr mkMeta(std::string name);
FormulaPtr mkImp(FormulaPtr a, FormulaPtr b);
FormulaPtr mkAnd(FormulaPtr a, FormulaPtr b);
FormulaPtr mkOr(FormulaPtr a, FormulaPtr b);
FormulaPtr mkNec(FormulaPtr a);
FormulaPtr mkPred(std::string symbol, std::vector<TermPtr> args);
FormulaPtr mkForall(std::string var, FormulaPtr body);
FormulaPtr mkExists(std::string var, FormulaPtr body);

// nabla a := (a -> #a) -> #a
FormulaPtr nabla(FormulaPtr a);

// The defined supremum ((a->b)->b) /\ ((b->a)->a), used under Inf.
FormulaPtr orAsInf(FormulaPtr a, FormulaPtr b);

bool equal(const FormulaPtr& a, const FormulaPtr& b);

struct FormulaPtrHash {
  std::size_t operator()(const FormulaPtr& f) const { return f ? f->hash : 0; }
};
struct FormulaPtrEq {
  bool operator()(const FormulaPtr& a, const FormulaPtr& b) const { return equal(a, b); }
};

// Free variables, propositional and individual alike.
std::set<std::string> freeVars(const FormulaPtr& phi);

// Only individual variables (those that occur free inside terms).
std::set<std::string> freeTermVars(const FormulaPtr& phi);

bool isPropositional(const FormulaPtr& phi);

// True when no variable of t would get caught by a quantifier at a free
// occurrence of x in phi.
bool isFreeFor(const TermPtr& t, const std::string& x, const FormulaPtr& phi);

// phi(x/t). Bound occurrences untouched; throws Capture when t is not
// free for x in phi. No automatic renaming.
FormulaPtr substitute(const FormulaPtr& phi, const std::string& x, const TermPtr& t);

// Quantifies the free individual variables, lexicographically, outermost
// first. Sentences and propositional formulas come back unchanged.
FormulaPtr universalClosure(const FormulaPtr& phi);

// Normalizes a formula into the given signature: under Inf every \/ is
// replaced by its /\,-> definition; under Sup a /\ is a Signature error,
// as is any first-order node under a propositional signature.
FormulaPtr definedConnectives(const FormulaPtr& phi, const Signature& sig);

// Validation part of definedConnectives, for already-normal formulas.
void checkSignature(const FormulaPtr& phi, const Signature& sig);

// Axiom schema over formula metavariables; binderMetas lists pattern
// quantifier binders that stand for an arbitrary object variable.
struct SchemaPattern {
  std::string id;
  FormulaPtr pattern;
  std::set<std::string> binderMetas;
};

struct MatchResult {
  std::map<std::string, FormulaPtr> formulas;
  std::map<std::string, std::string> binders;
};

// Uniform-substitution matching; never recurses into metavariable positions.
std::optional<MatchResult> matchSchema(const SchemaPattern& pattern, const FormulaPtr& phi);

FormulaPtr instantiate(const SchemaPattern& pattern, const MatchResult& binding);

// ASCII concrete syntax with minimal parentheses: `->`, `/\`, `\/`, `#`,
// `forall x.`, `exists x.`. Parsing this output returns the same tree.
std::string printFormula(const FormulaPtr& phi);
std::string printTerm(const TermPtr& t);

} // namespace triv

#endif
