#include "triv/fol.hpp"

#include <algorithm>
#include <functional>

#include "triv/error.hpp"

namespace triv {

namespace {

int tableIndex(const Structure& s, const std::vector<int>& args) {
  int idx = 0;
  for (int a : args) idx = idx * s.domainSize() + a;
  return idx;
}

} // namespace

int evalTerm(const Structure& s, const Assignment& v, const TermPtr& t) {
  switch (t->kind) {
    case TermKind::Var: {
      auto it = v.find(t->name);
      if (it == v.end())
        throw Error(ErrorKind::UnboundVariable, "no value for variable '" + t->name + "'");
      return it->second;
    }
    case TermKind::Const: {
      auto it = s.constInterp.find(t->name);
      if (it == s.constInterp.end())
        throw Error(ErrorKind::Domain, "constant '" + t->name + "' is not interpreted");
      return it->second;
    }
    case TermKind::Func: {
      auto it = s.funcInterp.find(t->name);
      if (it == s.funcInterp.end())
        throw Error(ErrorKind::Domain, "function '" + t->name + "' is not interpreted");
      std::vector<int> args;
      args.reserve(t->args.size());
      for (const auto& a : t->args) args.push_back(evalTerm(s, v, a));
      return it->second[tableIndex(s, args)];
    }
  }
  throw Error(ErrorKind::Precondition, "bad term");
}

int evalFormula(const Structure& s, const Assignment& v, const FormulaPtr& phi) {
  const FiniteAlgebra& a = s.algebra;
  switch (phi->kind) {
    case NodeKind::Pred: {
      auto it = s.predInterp.find(phi->name);
      if (it == s.predInterp.end())
        throw Error(ErrorKind::Domain, "predicate '" + phi->name + "' is not interpreted");
      std::vector<int> args;
      args.reserve(phi->args.size());
      for (const auto& t : phi->args) args.push_back(evalTerm(s, v, t));
      return it->second[tableIndex(s, args)];
    }
    case NodeKind::Imp: return a.impAt(evalFormula(s, v, phi->lhs), evalFormula(s, v, phi->rhs));
    case NodeKind::Or: return a.latAt(evalFormula(s, v, phi->lhs), evalFormula(s, v, phi->rhs));
    case NodeKind::Nec: return a.necAt(evalFormula(s, v, phi->lhs));
    case NodeKind::Forall:
    case NodeKind::Exists: {
      std::vector<int> values;
      values.reserve(s.domain.size());
      Assignment inner = v;
      for (int d = 0; d < s.domainSize(); ++d) {
        inner[phi->name] = d;
        values.push_back(evalFormula(s, inner, phi->lhs));
      }
      if (phi->kind == NodeKind::Exists) return joinOfSet(a, values);
      FoldMeet m = meetOfSet(a, values);
      if (!m.value)
        throw Error(ErrorKind::MeetUndefined,
                    "no meet for the pair (" + std::to_string(m.failX) + "," +
                        std::to_string(m.failY) + ") while evaluating a universal quantifier");
      return *m.value;
    }
    case NodeKind::And:
      throw Error(ErrorKind::Signature, "/\\ is not part of the first-order signature");
    default:
      throw Error(ErrorKind::Precondition,
                  "propositional atoms have no interpretation in a structure");
  }
}

TruthReport isTrue(const Structure& s, const FormulaPtr& phi, long long maxAssignments) {
  std::set<std::string> fv = freeTermVars(phi);
  std::vector<std::string> vars(fv.begin(), fv.end());
  long long total = 1;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    total *= s.domainSize();
    if (total > maxAssignments)
      throw Error(ErrorKind::AssignmentBudgetExceeded,
                  "assignment space exceeds " + std::to_string(maxAssignments));
  }
  TruthReport rep;
  std::vector<int> digits(vars.size(), 0);
  while (true) {
    Assignment v;
    for (std::size_t i = 0; i < vars.size(); ++i) v[vars[i]] = digits[i];
    ++rep.assignmentsScanned;
    if (evalFormula(s, v, phi) != s.algebra.one) {
      rep.holds = false;
      rep.witness = std::move(v);
      return rep;
    }
    int i = static_cast<int>(vars.size()) - 1;
    while (i >= 0 && digits[i] == s.domainSize() - 1) digits[i--] = 0;
    if (i < 0) break;
    ++digits[i];
  }
  rep.holds = true;
  return rep;
}

namespace {

bool termInterpreted(const Structure& s, const TermPtr& t) {
  if (t->kind == TermKind::Const && !s.constInterp.count(t->name)) return false;
  if (t->kind == TermKind::Func) {
    auto it = s.theta.funcs.find(t->name);
    if (it == s.theta.funcs.end() || it->second != static_cast<int>(t->args.size()))
      return false;
  }
  for (const auto& a : t->args)
    if (!termInterpreted(s, a)) return false;
  return true;
}

} // namespace

bool interprets(const Structure& s, const FormulaPtr& phi) {
  switch (phi->kind) {
    case NodeKind::Pred: {
      auto it = s.theta.preds.find(phi->name);
      if (it == s.theta.preds.end() || it->second != static_cast<int>(phi->args.size()))
        return false;
      for (const auto& t : phi->args)
        if (!termInterpreted(s, t)) return false;
      return true;
    }
    case NodeKind::Var:
    case NodeKind::And:
    case NodeKind::Meta:
      return false;
    case NodeKind::Imp:
    case NodeKind::Or:
      return interprets(s, phi->lhs) && interprets(s, phi->rhs);
    case NodeKind::Nec:
    case NodeKind::Forall:
    case NodeKind::Exists:
      return interprets(s, phi->lhs);
  }
  return false;
}

StructuralConsequence semanticConsequence(const std::vector<Structure>& corpus,
                                          const std::vector<FormulaPtr>& gamma,
                                          const FormulaPtr& phi) {
  StructuralConsequence out;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    bool applicable = interprets(corpus[i], phi);
    for (const auto& g : gamma) applicable = applicable && interprets(corpus[i], g);
    if (!applicable) continue;
    bool premisesHold = true;
    for (const auto& g : gamma)
      if (!isTrue(corpus[i], g).holds) {
        premisesHold = false;
        break;
      }
    if (!premisesHold) continue;
    TruthReport t = isTrue(corpus[i], phi);
    if (!t.holds) {
      out.holds = false;
      out.failingStructure = static_cast<int>(i);
      out.witness = t.witness;
      return out;
    }
  }
  return out;
}

namespace {

void auditSubset(const FiniteAlgebra& a, const std::vector<int>& subset, DeltaAudit& audit) {
  std::vector<int> necs;
  necs.reserve(subset.size());
  for (int x : subset) necs.push_back(a.necAt(x));

  std::optional<int> join;
  for (int x : subset) {
    if (!join) {
      join = x;
      continue;
    }
    std::optional<int> next = orderJoin(a, *join, x);
    if (!next) {
      join.reset();
      break;
    }
    join = next;
  }
  if (join) {
    ++audit.joinsChecked;
    std::optional<int> necJoin;
    for (int x : necs) necJoin = necJoin ? orderJoin(a, *necJoin, x) : std::optional<int>(x);
    if (!necJoin || *necJoin != a.necAt(*join)) {
      audit.ok = false;
      audit.violations.push_back("# does not distribute over the join of a subset");
    }
  }

  FoldMeet meet = meetOfSet(a, subset);
  if (meet.value) {
    ++audit.meetsChecked;
    FoldMeet necMeet = meetOfSet(a, necs);
    if (!necMeet.value || *necMeet.value != a.necAt(*meet.value)) {
      audit.ok = false;
      audit.violations.push_back("# does not distribute over the meet of a subset");
    }
  }
}

} // namespace

DeltaAudit auditDeltaDistribution(const FiniteAlgebra& a, int exhaustiveMax, int samples) {
  DeltaAudit audit;
  if (a.n <= exhaustiveMax) {
    for (unsigned mask = 1; mask < (1u << a.n); ++mask) {
      std::vector<int> subset;
      for (int i = 0; i < a.n; ++i)
        if (mask & (1u << i)) subset.push_back(i);
      auditSubset(a, subset, audit);
    }
    return audit;
  }
  // deterministic sampling above the exhaustive cutoff
  std::uint64_t state = 0x9e3779b97f4a7c15ULL;
  auto next = [&]() {
    state ^= state << 13;
    state ^= state >> 7;
    state ^= state << 17;
    return state;
  };
  for (int k = 0; k < samples; ++k) {
    std::vector<int> subset;
    for (int i = 0; i < a.n; ++i)
      if (next() % 3 == 0) subset.push_back(i);
    if (subset.empty()) subset.push_back(static_cast<int>(next() % a.n));
    auditSubset(a, subset, audit);
  }
  return audit;
}

namespace {

// Small formula pool over a structure's own signature.
std::vector<FormulaPtr> formulaPool(const Structure& s) {
  std::vector<FormulaPtr> atoms;
  std::vector<TermPtr> terms;
  terms.push_back(mkTermVar("x"));
  terms.push_back(mkTermVar("y"));
  for (const auto& c : s.theta.consts) {
    terms.push_back(mkConst(c));
    if (terms.size() >= 4) break;
  }
  for (const auto& [f, arity] : s.theta.funcs) {
    if (arity == 1) {
      terms.push_back(mkFunc(f, {mkTermVar("x")}));
      break;
    }
  }

  for (const auto& [p, arity] : s.theta.preds) {
    if (arity == 1) {
      for (const auto& t : terms) atoms.push_back(mkPred(p, {t}));
    } else if (arity == 2) {
      atoms.push_back(mkPred(p, {terms[0], terms[1]}));
      atoms.push_back(mkPred(p, {terms[0], terms[0]}));
      if (terms.size() > 2) atoms.push_back(mkPred(p, {terms[2], terms[1]}));
    }
    if (atoms.size() > 8) break;
  }

  std::vector<FormulaPtr> pool = atoms;
  for (std::size_t i = 0; i < atoms.size() && pool.size() < 16; ++i) pool.push_back(mkNec(atoms[i]));
  if (atoms.size() >= 2) pool.push_back(mkOr(atoms[0], atoms[1]));
  if (!atoms.empty()) pool.push_back(mkExists("y", atoms[0]));
  if (!atoms.empty()) pool.push_back(mkForall("y", atoms[0]));
  return pool;
}

} // namespace

FolAxiomAudit auditFirstOrderAxioms(const std::vector<Structure>& corpus) {
  FolAxiomAudit audit;
  const std::vector<std::string> quantVars = {"x", "y"};

  for (const auto& s : corpus) {
    std::vector<FormulaPtr> pool = formulaPool(s);
    std::vector<TermPtr> substTerms;
    substTerms.push_back(mkTermVar("x"));
    substTerms.push_back(mkTermVar("y"));
    for (const auto& c : s.theta.consts) substTerms.push_back(mkConst(c));

    auto requireTrue = [&](const FormulaPtr& inst, const char* axiom) {
      ++audit.axiomInstances;
      TruthReport t = isTrue(s, inst);
      if (!t.holds) {
        audit.ok = false;
        audit.violations.push_back(std::string(axiom) + " instance fails: " + printFormula(inst));
      }
    };

    for (const auto& phi : pool) {
      for (const auto& x : quantVars) {
        for (const auto& t : substTerms) {
          if (!isFreeFor(t, x, phi)) continue;
          FormulaPtr sub = substitute(phi, x, t);
          requireTrue(mkImp(sub, mkExists(x, phi)), "Ax11");
          requireTrue(mkImp(mkForall(x, phi), sub), "Ax12");
        }
        requireTrue(mkImp(mkNec(mkExists(x, phi)), mkExists(x, mkNec(phi))), "Ax13");
        requireTrue(mkImp(mkExists(x, mkNec(phi)), mkNec(mkExists(x, phi))), "Ax13");
        requireTrue(mkImp(mkNec(mkForall(x, phi)), mkForall(x, mkNec(phi))), "Ax14");
        requireTrue(mkImp(mkForall(x, mkNec(phi)), mkNec(mkForall(x, phi))), "Ax14");
      }
    }

    // R3 and R4 preserve truth
    for (const auto& phi : pool) {
      for (const auto& psi : pool) {
        FormulaPtr prem = mkImp(phi, psi);
        for (const auto& x : quantVars) {
          if (!freeVars(psi).count(x)) {
            ++audit.ruleInstances;
            if (isTrue(s, prem).holds) {
              ++audit.nonVacuousRules;
              if (!isTrue(s, mkImp(mkExists(x, phi), psi)).holds) {
                audit.ok = false;
                audit.violations.push_back("R3 fails to preserve truth: " + printFormula(prem));
              }
            }
          }
          if (!freeVars(phi).count(x)) {
            ++audit.ruleInstances;
            if (isTrue(s, prem).holds) {
              ++audit.nonVacuousRules;
              if (!isTrue(s, mkImp(phi, mkForall(x, psi))).holds) {
                audit.ok = false;
                audit.violations.push_back("R4 fails to preserve truth: " + printFormula(prem));
              }
            }
          }
        }
      }
    }
  }
  return audit;
}

std::vector<Structure> defaultStructureCorpus() {
  std::vector<Structure> out;
  FiniteAlgebra chain = c3(SigKind::Sup);

  {
    // two points, one unary predicate taking values 1/2 and 1, a constant
    Structure s;
    s.algebra = chain;
    s.domain = {"a", "b"};
    s.theta.consts = {"c"};
    s.theta.preds = {{"P", 1}};
    s.constInterp["c"] = 0;
    s.predInterp["P"] = {1, 2};
    out.push_back(std::move(s));
  }
  {
    // singleton domain, two predicates at the extremes
    Structure s;
    s.algebra = chain;
    s.domain = {"a"};
    s.theta.preds = {{"P", 1}, {"Q", 1}};
    s.predInterp["P"] = {0};
    s.predInterp["Q"] = {2};
    out.push_back(std::move(s));
  }
  {
    // three points with a cyclic function and a binary predicate
    Structure s;
    s.algebra = chain;
    s.domain = {"a", "b", "c"};
    s.theta.consts = {"c0"};
    s.theta.funcs = {{"f", 1}};
    s.theta.preds = {{"P", 1}, {"R", 2}};
    s.constInterp["c0"] = 1;
    s.funcInterp["f"] = {1, 2, 0};
    s.predInterp["P"] = {0, 1, 2};
    std::vector<int> r(9);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r[i * 3 + j] = chain.impAt(i, j);
    s.predInterp["R"] = std::move(r);
    out.push_back(std::move(s));
  }
  {
    // four points, predicate values descending, involutive function
    Structure s;
    s.algebra = chain;
    s.domain = {"a", "b", "c", "d"};
    s.theta.funcs = {{"f", 1}};
    s.theta.preds = {{"P", 1}, {"Q", 1}};
    s.funcInterp["f"] = {3, 2, 1, 0};
    s.predInterp["P"] = {2, 2, 1, 0};
    s.predInterp["Q"] = {1, 2, 1, 2};
    out.push_back(std::move(s));
  }
  {
    // two points, binary predicate only
    Structure s;
    s.algebra = chain;
    s.domain = {"a", "b"};
    s.theta.preds = {{"R", 2}};
    s.predInterp["R"] = {2, 1, 0, 2};
    out.push_back(std::move(s));
  }
  {
    // three points, every unary value 1 (a model of forall x. P(x))
    Structure s;
    s.algebra = chain;
    s.domain = {"a", "b", "c"};
    s.theta.preds = {{"P", 1}};
    s.predInterp["P"] = {2, 2, 2};
    out.push_back(std::move(s));
  }
  return out;
}

} // namespace triv
