#include "triv/proof.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "triv/error.hpp"

namespace triv {

namespace {

const FormulaPtr A = mkMeta("a");
const FormulaPtr B = mkMeta("b");
const FormulaPtr C = mkMeta("c");

SchemaPattern mkSchema(std::string id, FormulaPtr pat) {
  return SchemaPattern{std::move(id), std::move(pat), {}};
}

SchemaPattern mkQuantSchema(std::string id, FormulaPtr pat) {
  return SchemaPattern{std::move(id), std::move(pat), {"x"}};
}

std::vector<SchemaPattern> coreSchemas(bool inf) {
  std::string p = inf ? "A" : "Ax";
  std::string pi = inf ? "Ai" : "Ax";
  std::vector<SchemaPattern> out;
  out.push_back(mkSchema(p + "1", mkImp(A, mkImp(B, A))));
  out.push_back(mkSchema(p + "2", mkImp(mkImp(A, mkImp(B, C)),
                                        mkImp(mkImp(A, B), mkImp(A, C)))));
  out.push_back(mkSchema(p + "3", mkImp(mkImp(mkImp(A, B), C),
                                        mkImp(mkImp(mkImp(C, A), C), C))));
  if (inf) {
    out.push_back(mkSchema("Ai4", mkImp(mkAnd(A, B), B)));
    out.push_back(mkSchema("Ai5", mkImp(mkAnd(A, B), A)));
    out.push_back(mkSchema("Ai6", mkImp(A, mkImp(B, mkAnd(A, B)))));
  } else {
    out.push_back(mkSchema("Ax4", mkImp(A, mkOr(A, B))));
    out.push_back(mkSchema("Ax5", mkImp(B, mkOr(A, B))));
    out.push_back(mkSchema("Ax6", mkImp(mkImp(A, C), mkImp(mkImp(B, C), mkImp(mkOr(A, B), C)))));
  }
  out.push_back(mkSchema(pi + "7", mkImp(mkNec(A), A)));
  out.push_back(mkSchema(pi + "8", mkImp(mkNec(mkImp(mkNec(A), B)), mkImp(mkNec(A), mkNec(B)))));
  // conclusion is nabla(a -> b): with # there the schema is refuted at
  // (a,b) = (1,1/2) and the calculus would not be sound over the chain
  out.push_back(mkSchema(pi + "9", mkImp(mkImp(mkImp(B, mkNec(B)), mkImp(A, mkNec(mkImp(A, B)))),
                                         nabla(mkImp(A, B)))));
  out.push_back(mkSchema(pi + "10", mkImp(mkImp(mkImp(mkNec(A), B), C),
                                          mkImp(mkImp(mkNec(A), C), C))));
  return out;
}

Calculus buildCalculus(CalculusId id) {
  Calculus c;
  c.id = id;
  switch (id) {
    case CalculusId::iH3:
      c.sig = Signature{SigKind::Inf, false};
      c.axioms = coreSchemas(true);
      c.rules = {RuleKind::MP, RuleKind::Nec, RuleKind::RAnd};
      break;
    case CalculusId::H3sup:
      c.sig = Signature{SigKind::Sup, false};
      c.axioms = coreSchemas(false);
      c.rules = {RuleKind::MP, RuleKind::Nec};
      break;
    case CalculusId::QH3sup:
      c.sig = Signature{SigKind::Sup, true};
      c.axioms = coreSchemas(false);
      // the biconditionals contribute one schema per direction
      c.axioms.push_back(mkQuantSchema("Ax13", mkImp(mkNec(mkExists("x", A)),
                                                     mkExists("x", mkNec(A)))));
      c.axioms.push_back(mkQuantSchema("Ax13", mkImp(mkExists("x", mkNec(A)),
                                                     mkNec(mkExists("x", A)))));
      c.axioms.push_back(mkQuantSchema("Ax14", mkImp(mkNec(mkForall("x", A)),
                                                     mkForall("x", mkNec(A)))));
      c.axioms.push_back(mkQuantSchema("Ax14", mkImp(mkForall("x", mkNec(A)),
                                                     mkNec(mkForall("x", A)))));
      c.rules = {RuleKind::MP, RuleKind::Nec, RuleKind::R3, RuleKind::R4};
      c.substitutionAxioms = true;
      break;
  }
  return c;
}

} // namespace

const Calculus& calculus(CalculusId id) {
  static const Calculus ih3 = buildCalculus(CalculusId::iH3);
  static const Calculus h3sup = buildCalculus(CalculusId::H3sup);
  static const Calculus qh3sup = buildCalculus(CalculusId::QH3sup);
  switch (id) {
    case CalculusId::iH3: return ih3;
    case CalculusId::H3sup: return h3sup;
    default: return qh3sup;
  }
}

std::string calculusName(CalculusId id) {
  switch (id) {
    case CalculusId::iH3: return "iH3";
    case CalculusId::H3sup: return "H3sup";
    default: return "QH3sup";
  }
}

std::optional<CalculusId> calculusByName(const std::string& name) {
  if (name == "iH3") return CalculusId::iH3;
  if (name == "H3sup") return CalculusId::H3sup;
  if (name == "QH3sup") return CalculusId::QH3sup;
  return std::nullopt;
}

namespace {

bool parallelTerm(const TermPtr& p, const TermPtr& q, const std::string& x, bool active,
                  std::optional<TermPtr>& cand) {
  if (active && p->kind == TermKind::Var && p->name == x) {
    if (cand) return equal(*cand, q);
    cand = q;
    return true;
  }
  if (p->kind != q->kind || p->name != q->name || p->args.size() != q->args.size()) return false;
  for (std::size_t i = 0; i < p->args.size(); ++i)
    if (!parallelTerm(p->args[i], q->args[i], x, active, cand)) return false;
  return true;
}

bool parallelFormula(const FormulaPtr& p, const FormulaPtr& q, const std::string& x, bool active,
                     std::optional<TermPtr>& cand) {
  if (p->kind != q->kind) return false;
  switch (p->kind) {
    case NodeKind::Var:
    case NodeKind::Meta:
      return p->name == q->name;
    case NodeKind::Pred: {
      if (p->name != q->name || p->args.size() != q->args.size()) return false;
      for (std::size_t i = 0; i < p->args.size(); ++i)
        if (!parallelTerm(p->args[i], q->args[i], x, active, cand)) return false;
      return true;
    }
    case NodeKind::Imp:
    case NodeKind::And:
    case NodeKind::Or:
      return parallelFormula(p->lhs, q->lhs, x, active, cand) &&
             parallelFormula(p->rhs, q->rhs, x, active, cand);
    case NodeKind::Nec:
      return parallelFormula(p->lhs, q->lhs, x, active, cand);
    case NodeKind::Forall:
    case NodeKind::Exists:
      if (p->name != q->name) return false;
      return parallelFormula(p->lhs, q->lhs, x, active && p->name != x, cand);
  }
  return false;
}

// Recovers t with inst = phi(x/t), enforcing the freeness side condition
// through the checked substitution.
std::optional<TermPtr> findInstanceTerm(const FormulaPtr& phi, const std::string& x,
                                        const FormulaPtr& inst) {
  std::optional<TermPtr> cand;
  if (!parallelFormula(phi, inst, x, true, cand)) return std::nullopt;
  if (!cand) cand = mkTermVar(x); // x not free in phi
  try {
    if (equal(substitute(phi, x, *cand), inst)) return cand;
  } catch (const Error&) {
  }
  return std::nullopt;
}

bool matchesAx11(const FormulaPtr& f) {
  if (f->kind != NodeKind::Imp || f->rhs->kind != NodeKind::Exists) return false;
  return findInstanceTerm(f->rhs->lhs, f->rhs->name, f->lhs).has_value();
}

bool matchesAx12(const FormulaPtr& f) {
  if (f->kind != NodeKind::Imp || f->lhs->kind != NodeKind::Forall) return false;
  return findInstanceTerm(f->lhs->lhs, f->lhs->name, f->rhs).has_value();
}

LineVerdict checkLine(const Calculus& c, const Derivation& d, int k) {
  const DerivationLine& line = d.lines[k];
  const FormulaPtr& f = line.formula;
  LineVerdict v;
  auto fail = [&](std::string reason) {
    v.ok = false;
    v.reason = std::move(reason);
    return v;
  };

  try {
    checkSignature(f, c.sig);
  } catch (const Error& e) {
    return fail(std::string("formula outside the calculus signature: ") + e.what());
  }

  const Justification& j = line.just;
  auto inRange = [&](int idx) { return idx >= 0 && idx < k; };

  switch (j.kind) {
    case Justification::Kind::Axiom: {
      for (const auto& schema : c.axioms) {
        if (!j.axiomId.empty() && schema.id != j.axiomId) continue;
        if (matchSchema(schema, f)) {
          v.matchedAxiom = schema.id;
          return v;
        }
      }
      if (c.substitutionAxioms) {
        if ((j.axiomId.empty() || j.axiomId == "Ax11") && matchesAx11(f)) {
          v.matchedAxiom = "Ax11";
          return v;
        }
        if ((j.axiomId.empty() || j.axiomId == "Ax12") && matchesAx12(f)) {
          v.matchedAxiom = "Ax12";
          return v;
        }
      }
      return fail(j.axiomId.empty() ? "not an instance of any axiom schema"
                                    : "not an instance of axiom " + j.axiomId);
    }
    case Justification::Kind::Premise: {
      if (j.i < 0 || j.i >= static_cast<int>(d.premises.size()))
        return fail("premise index out of range");
      if (!equal(d.premises[j.i], f)) return fail("formula differs from the cited premise");
      return v;
    }
    case Justification::Kind::MP: {
      if (!inRange(j.i) || !inRange(j.j)) return fail("MP cites a line that is not earlier");
      const FormulaPtr& imp = d.lines[j.j].formula;
      if (imp->kind != NodeKind::Imp) return fail("MP major premise is not an implication");
      if (!equal(imp->lhs, d.lines[j.i].formula))
        return fail("MP minor premise does not match the antecedent");
      if (!equal(imp->rhs, f)) return fail("MP conclusion differs from the consequent");
      return v;
    }
    case Justification::Kind::Nec: {
      if (!inRange(j.i)) return fail("NEC cites a line that is not earlier");
      if (f->kind != NodeKind::Nec || !equal(f->lhs, d.lines[j.i].formula))
        return fail("NEC conclusion is not # of the cited line");
      return v;
    }
    case Justification::Kind::RAnd: {
      if (!c.rules.count(RuleKind::RAnd)) return fail("rule R/\\ is not part of this calculus");
      if (!inRange(j.i)) return fail("R/\\ cites a line that is not earlier");
      const FormulaPtr& prem = d.lines[j.i].formula;
      if (prem->kind != NodeKind::Imp) return fail("R/\\ premise is not an implication");
      FormulaPtr want = mkImp(prem->lhs, mkAnd(prem->lhs, prem->rhs));
      if (!equal(want, f)) return fail("R/\\ conclusion must be a -> (a /\\ b)");
      return v;
    }
    case Justification::Kind::R3: {
      if (!c.rules.count(RuleKind::R3)) return fail("rule R3 is not part of this calculus");
      if (!inRange(j.i)) return fail("R3 cites a line that is not earlier");
      const FormulaPtr& prem = d.lines[j.i].formula;
      if (prem->kind != NodeKind::Imp) return fail("R3 premise is not an implication");
      if (f->kind != NodeKind::Imp || f->lhs->kind != NodeKind::Exists ||
          f->lhs->name != j.var || !equal(f->lhs->lhs, prem->lhs) || !equal(f->rhs, prem->rhs))
        return fail("R3 conclusion must be (exists " + j.var + ". a) -> b");
      if (freeVars(prem->rhs).count(j.var))
        return fail("side condition: " + j.var + " occurs free in the consequent");
      return v;
    }
    case Justification::Kind::R4: {
      if (!c.rules.count(RuleKind::R4)) return fail("rule R4 is not part of this calculus");
      if (!inRange(j.i)) return fail("R4 cites a line that is not earlier");
      const FormulaPtr& prem = d.lines[j.i].formula;
      if (prem->kind != NodeKind::Imp) return fail("R4 premise is not an implication");
      if (f->kind != NodeKind::Imp || f->rhs->kind != NodeKind::Forall ||
          f->rhs->name != j.var || !equal(f->rhs->lhs, prem->rhs) || !equal(f->lhs, prem->lhs))
        return fail("R4 conclusion must be a -> (forall " + j.var + ". b)");
      if (freeVars(prem->lhs).count(j.var))
        return fail("side condition: " + j.var + " occurs free in the antecedent");
      return v;
    }
  }
  return fail("unknown justification");
}

} // namespace

CheckReport checkDerivation(const Derivation& d) {
  CheckReport rep;
  rep.lines.reserve(d.lines.size());
  for (int k = 0; k < static_cast<int>(d.lines.size()); ++k) {
    LineVerdict v = checkLine(calculus(d.calc), d, k);
    if (!v.ok && rep.firstFailure < 0) rep.firstFailure = k;
    rep.ok = rep.ok && v.ok;
    rep.lines.push_back(std::move(v));
  }
  if (d.lines.empty()) {
    rep.ok = false;
    rep.firstFailure = 0;
  }
  return rep;
}

DerivationBuilder::DerivationBuilder(CalculusId calc, std::vector<FormulaPtr> premises)
    : calc_(calculus(calc)) {
  d_.calc = calc;
  d_.premises = std::move(premises);
}

int DerivationBuilder::push(FormulaPtr f, Justification j) {
  d_.lines.push_back(DerivationLine{std::move(f), std::move(j)});
  return static_cast<int>(d_.lines.size()) - 1;
}

int DerivationBuilder::axiom(const std::string& id, const std::vector<FormulaPtr>& metas) {
  for (const auto& schema : calc_.axioms) {
    if (schema.id != id || !schema.binderMetas.empty()) continue;
    std::set<std::string> names;
    std::function<void(const FormulaPtr&)> collect = [&](const FormulaPtr& p) {
      if (p->kind == NodeKind::Meta) names.insert(p->name);
      if (p->lhs) collect(p->lhs);
      if (p->rhs) collect(p->rhs);
    };
    collect(schema.pattern);
    if (names.size() != metas.size())
      throw std::logic_error("axiom " + id + " expects " + std::to_string(names.size()) +
                             " metavariables");
    MatchResult m;
    std::size_t i = 0;
    for (const auto& name : names) m.formulas[name] = metas[i++];
    Justification j;
    j.kind = Justification::Kind::Axiom;
    j.axiomId = id;
    return push(instantiate(schema, m), std::move(j));
  }
  throw std::logic_error("no propositional schema named " + id);
}

int DerivationBuilder::axiomRaw(const std::string& id, FormulaPtr instance) {
  Justification j;
  j.kind = Justification::Kind::Axiom;
  j.axiomId = id;
  return push(std::move(instance), std::move(j));
}

int DerivationBuilder::premise(int index) {
  Justification j;
  j.kind = Justification::Kind::Premise;
  j.i = index;
  return push(d_.premises.at(index), std::move(j));
}

int DerivationBuilder::mp(int minor, int implication) {
  const FormulaPtr& imp = d_.lines.at(implication).formula;
  if (imp->kind != NodeKind::Imp || !equal(imp->lhs, d_.lines.at(minor).formula))
    throw std::logic_error("MP shape mismatch");
  Justification j;
  j.kind = Justification::Kind::MP;
  j.i = minor;
  j.j = implication;
  return push(imp->rhs, std::move(j));
}

int DerivationBuilder::nec(int from) {
  Justification j;
  j.kind = Justification::Kind::Nec;
  j.i = from;
  return push(mkNec(d_.lines.at(from).formula), std::move(j));
}

int DerivationBuilder::rAnd(int from) {
  const FormulaPtr& prem = d_.lines.at(from).formula;
  if (prem->kind != NodeKind::Imp) throw std::logic_error("R/\\ needs an implication");
  Justification j;
  j.kind = Justification::Kind::RAnd;
  j.i = from;
  return push(mkImp(prem->lhs, mkAnd(prem->lhs, prem->rhs)), std::move(j));
}

int DerivationBuilder::r3(int from, const std::string& var) {
  const FormulaPtr& prem = d_.lines.at(from).formula;
  if (prem->kind != NodeKind::Imp) throw std::logic_error("R3 needs an implication");
  Justification j;
  j.kind = Justification::Kind::R3;
  j.i = from;
  j.var = var;
  return push(mkImp(mkExists(var, prem->lhs), prem->rhs), std::move(j));
}

int DerivationBuilder::r4(int from, const std::string& var) {
  const FormulaPtr& prem = d_.lines.at(from).formula;
  if (prem->kind != NodeKind::Imp) throw std::logic_error("R4 needs an implication");
  Justification j;
  j.kind = Justification::Kind::R4;
  j.i = from;
  j.var = var;
  return push(mkImp(prem->lhs, mkForall(var, prem->rhs)), std::move(j));
}

int DerivationBuilder::chain(int xy, int yz) {
  std::string a1 = calc_.id == CalculusId::iH3 ? "A1" : "Ax1";
  std::string a2 = calc_.id == CalculusId::iH3 ? "A2" : "Ax2";
  const FormulaPtr& fxy = d_.lines.at(xy).formula;
  const FormulaPtr& fyz = d_.lines.at(yz).formula;
  if (fxy->kind != NodeKind::Imp || fyz->kind != NodeKind::Imp ||
      !equal(fxy->rhs, fyz->lhs))
    throw std::logic_error("chain expects x->y and y->z");
  FormulaPtr x = fxy->lhs, y = fxy->rhs, z = fyz->rhs;
  int t1 = axiom(a1, {fyz, x});       // (y->z) -> (x -> (y->z))
  int t2 = mp(yz, t1);                // x -> (y->z)
  int t3 = axiom(a2, {x, y, z});      // (x->(y->z)) -> ((x->y)->(x->z))
  int t4 = mp(t2, t3);                // (x->y) -> (x->z)
  return mp(xy, t4);                  // x->z
}

int DerivationBuilder::identity(const FormulaPtr& f) {
  std::string a1 = calc_.id == CalculusId::iH3 ? "A1" : "Ax1";
  std::string a2 = calc_.id == CalculusId::iH3 ? "A2" : "Ax2";
  FormulaPtr ff = mkImp(f, f);
  int l1 = axiom(a1, {f, ff});        // f -> ((f->f) -> f)
  int l2 = axiom(a2, {f, ff, f});     // (f -> ((f->f)->f)) -> ((f->(f->f)) -> (f->f))
  int l3 = mp(l1, l2);                // (f->(f->f)) -> (f->f)
  int l4 = axiom(a1, {f, f});         // f -> (f->f)
  return mp(l4, l3);                  // f -> f
}

namespace {

struct Fact {
  FormulaPtr f;
  int depth = 0;
  // 0 axiom, 1 premise, 2 identity template, 3 MP, 4 NEC, 5 R/\ .
  int kind = 0;
  std::string axiomId;
  int p1 = -1, p2 = -1;
};

} // namespace

SearchResult searchDerivation(const FormulaPtr& goal, const std::vector<FormulaPtr>& premises,
                              CalculusId calcId, int depthBudget, long long factBudget) {
  const Calculus& calc = calculus(calcId);
  if (calc.sig.firstOrder)
    throw Error(ErrorKind::Precondition, "proof search covers the propositional calculi only");
  checkSignature(goal, calc.sig);
  for (const auto& p : premises) checkSignature(p, calc.sig);

  // Instantiation domain: subformula closure plus one layer of #.
  std::vector<FormulaPtr> domain;
  std::unordered_set<FormulaPtr, FormulaPtrHash, FormulaPtrEq> domainSeen;
  std::function<void(const FormulaPtr&)> addSub = [&](const FormulaPtr& f) {
    if (!domainSeen.insert(f).second) return;
    domain.push_back(f);
    if (f->lhs) addSub(f->lhs);
    if (f->rhs) addSub(f->rhs);
  };
  addSub(goal);
  for (const auto& p : premises) addSub(p);
  std::size_t base = domain.size();
  for (std::size_t i = 0; i < base; ++i) {
    FormulaPtr nf = mkNec(domain[i]);
    if (domainSeen.insert(nf).second) domain.push_back(std::move(nf));
  }

  // Universe of formulas worth keeping; MP consequents stay inside it by
  // construction, NEC and R/\ products are filtered through it.
  std::unordered_set<FormulaPtr, FormulaPtrHash, FormulaPtrEq> universe;
  std::function<void(const FormulaPtr&)> addU = [&](const FormulaPtr& f) {
    if (!universe.insert(f).second) return;
    if (f->lhs) addU(f->lhs);
    if (f->rhs) addU(f->rhs);
  };

  std::vector<Fact> facts;
  std::unordered_map<FormulaPtr, int, FormulaPtrHash, FormulaPtrEq> factIndex;
  SearchResult res;
  auto addFact = [&](const FormulaPtr& f, int depth, Fact fact) {
    if (depth > depthBudget) return false;
    auto it = factIndex.find(f);
    if (it == factIndex.end()) {
      if (static_cast<long long>(facts.size()) >= factBudget) {
        res.truncated = true;
        return false;
      }
      fact.f = f;
      fact.depth = depth;
      factIndex.emplace(f, static_cast<int>(facts.size()));
      facts.push_back(std::move(fact));
      addU(f);
      return true;
    }
    if (depth < facts[it->second].depth) {
      fact.f = f;
      fact.depth = depth;
      facts[it->second] = std::move(fact);
      return true;
    }
    return false;
  };

  for (std::size_t i = 0; i < premises.size(); ++i) {
    Fact fa;
    fa.kind = 1;
    fa.p1 = static_cast<int>(i);
    addFact(premises[i], 1, fa);
  }
  for (const auto& d : domain) {
    Fact fa;
    fa.kind = 2;
    addFact(mkImp(d, d), 3, fa);
  }

  for (const auto& schema : calc.axioms) {
    std::set<std::string> metaNames;
    std::function<void(const FormulaPtr&)> collect = [&](const FormulaPtr& p) {
      if (p->kind == NodeKind::Meta) metaNames.insert(p->name);
      if (p->lhs) collect(p->lhs);
      if (p->rhs) collect(p->rhs);
    };
    collect(schema.pattern);
    std::vector<std::string> names(metaNames.begin(), metaNames.end());
    std::vector<std::size_t> odo(names.size(), 0);
    while (true) {
      MatchResult m;
      for (std::size_t i = 0; i < names.size(); ++i) m.formulas[names[i]] = domain[odo[i]];
      Fact fa;
      fa.kind = 0;
      fa.axiomId = schema.id;
      addFact(instantiate(schema, m), 1, fa);
      int i = static_cast<int>(names.size()) - 1;
      while (i >= 0 && odo[i] + 1 == domain.size()) odo[i--] = 0;
      if (i < 0) break;
      ++odo[i];
    }
  }

  bool useRAnd = calc.rules.count(RuleKind::RAnd) != 0;
  for (int round = 0; round < 200; ++round) {
    bool changed = false;
    std::size_t snapshot = facts.size();
    for (std::size_t fi = 0; fi < snapshot; ++fi) {
      Fact cur = facts[fi]; // copy: the vector may grow
      if (cur.f->kind == NodeKind::Imp) {
        auto it = factIndex.find(cur.f->lhs);
        if (it != factIndex.end()) {
          int d = std::max(cur.depth, facts[it->second].depth) + 1;
          Fact fa;
          fa.kind = 3;
          fa.p1 = it->second;
          fa.p2 = static_cast<int>(fi);
          changed = addFact(cur.f->rhs, d, fa) || changed;
        }
        if (useRAnd) {
          FormulaPtr out = mkImp(cur.f->lhs, mkAnd(cur.f->lhs, cur.f->rhs));
          if (universe.count(out)) {
            Fact fa;
            fa.kind = 5;
            fa.p1 = static_cast<int>(fi);
            changed = addFact(out, cur.depth + 1, fa) || changed;
          }
        }
      }
      FormulaPtr necd = mkNec(cur.f);
      if (universe.count(necd)) {
        Fact fa;
        fa.kind = 4;
        fa.p1 = static_cast<int>(fi);
        changed = addFact(necd, cur.depth + 1, fa) || changed;
      }
    }
    if (!changed) break;
  }

  res.facts = static_cast<long long>(facts.size());
  auto gi = factIndex.find(goal);
  if (gi == factIndex.end()) return res;
  res.depth = facts[gi->second].depth;

  DerivationBuilder builder(calcId, premises);
  std::unordered_map<int, int> lineOf;
  std::function<int(int)> emit = [&](int fidx) -> int {
    auto known = lineOf.find(fidx);
    if (known != lineOf.end()) return known->second;
    const Fact fa = facts[fidx];
    int line = -1;
    switch (fa.kind) {
      case 0: line = builder.axiomRaw(fa.axiomId, fa.f); break;
      case 1: line = builder.premise(fa.p1); break;
      case 2: line = builder.identity(fa.f->lhs); break;
      case 3: {
        int i = emit(fa.p1);
        int j = emit(fa.p2);
        line = builder.mp(i, j);
        break;
      }
      case 4: line = builder.nec(emit(fa.p1)); break;
      default: line = builder.rAnd(emit(fa.p1)); break;
    }
    lineOf[fidx] = line;
    return line;
  };
  emit(gi->second);
  Derivation der = builder.take();
  CheckReport check = checkDerivation(der);
  if (!check.ok)
    throw Error(ErrorKind::Precondition, "internal: reconstructed derivation failed its check");
  res.derivation = std::move(der);
  return res;
}

std::vector<NamedDerivation> lemmaCorpus() {
  std::vector<NamedDerivation> out;
  FormulaPtr p = mkVar("p"), q = mkVar("q"), r = mkVar("r");

  {
    DerivationBuilder b(CalculusId::iH3);
    b.identity(p);
    out.push_back({"Mi1", "p -> p", b.take()});
  }
  {
    // (p -> (q -> r)) -> (q -> (p -> r))
    DerivationBuilder b(CalculusId::iH3);
    FormulaPtr Z = mkImp(p, mkImp(q, r));
    int l1 = b.axiom("A2", {p, q, r});                       // Z -> ((p->q)->(p->r))
    int l2 = b.axiom("A1", {b.at(l1)->rhs, q});              // ((p->q)->(p->r)) -> (q -> ...)
    int l3 = b.chain(l1, l2);                                // Z -> (q -> ((p->q)->(p->r)))
    int l4 = b.axiom("A2", {q, mkImp(p, q), mkImp(p, r)});   // (q->((p->q)->(p->r))) -> ((q->(p->q)) -> (q->(p->r)))
    int l5 = b.chain(l3, l4);                                // Z -> ((q->(p->q)) -> (q->(p->r)))
    int l6 = b.axiom("A1", {q, p});                          // q -> (p->q)
    int l7 = b.axiom("A1", {b.at(l6), Z});                   // (q->(p->q)) -> (Z -> (q->(p->q)))
    int l8 = b.mp(l6, l7);                                   // Z -> (q->(p->q))
    int l9 = b.axiom("A2", {Z, b.at(l6), mkImp(q, mkImp(p, r))});
    int l10 = b.mp(l5, l9);                                  // (Z->(q->(p->q))) -> (Z->(q->(p->r)))
    b.mp(l8, l10);                                           // Z -> (q -> (p->r))
    out.push_back({"Mi4", "(p -> (q -> r)) -> (q -> (p -> r))", b.take()});
  }
  {
    // (p -> (p -> q)) -> (p -> q)
    DerivationBuilder b(CalculusId::iH3);
    FormulaPtr Z = mkImp(p, mkImp(p, q));
    int l1 = b.axiom("A2", {p, p, q});          // Z -> ((p->p)->(p->q))
    int l2 = b.identity(p);                     // p -> p
    int l3 = b.axiom("A1", {b.at(l2), Z});      // (p->p) -> (Z -> (p->p))
    int l4 = b.mp(l2, l3);                      // Z -> (p->p)
    int l5 = b.axiom("A2", {Z, mkImp(p, p), mkImp(p, q)});
    int l6 = b.mp(l1, l5);                      // (Z->(p->p)) -> (Z->(p->q))
    b.mp(l4, l6);                               // Z -> (p->q)
    out.push_back({"Mi11", "(p -> (p -> q)) -> (p -> q)", b.take()});
  }
  {
    // p -> nabla p, i.e. p -> ((p -> #p) -> #p)
    DerivationBuilder b(CalculusId::iH3);
    FormulaPtr u = mkImp(p, mkNec(p));
    int l1 = b.identity(u);                     // u -> u
    int l2 = b.axiom("A2", {u, p, mkNec(p)});   // (u -> u) -> ((u->p) -> (u->#p))
    int l3 = b.mp(l1, l2);                      // (u->p) -> (u->#p)
    int l4 = b.axiom("A1", {p, u});             // p -> (u->p)
    b.chain(l4, l3);                            // p -> (u -> #p)
    out.push_back({"Mi27", "p -> nabla p", b.take()});
  }
  {
    DerivationBuilder b(CalculusId::iH3);
    b.axiom("Ai7", {p});
    out.push_back({"Ai7", "#p -> p", b.take()});
  }
  {
    DerivationBuilder b(CalculusId::iH3, {p});
    int l0 = b.premise(0);
    b.nec(l0);
    out.push_back({"NecFromPremise", "p |- #p", b.take()});
  }
  {
    // (p \/ q) -> (q \/ p)
    DerivationBuilder b(CalculusId::H3sup);
    int l0 = b.axiom("Ax4", {q, p});            // q -> (q \/ p)
    int l1 = b.axiom("Ax5", {q, p});            // p -> (q \/ p)
    int l2 = b.axiom("Ax6", {p, q, mkOr(q, p)});
    int l3 = b.mp(l1, l2);
    b.mp(l0, l3);
    out.push_back({"Ps1", "(p \\/ q) -> (q \\/ p)", b.take()});
  }
  {
    // derived rule: p -> q |- (p \/ q) -> q
    DerivationBuilder b(CalculusId::H3sup, {mkImp(p, q)});
    int l0 = b.premise(0);
    int l1 = b.identity(q);
    int l2 = b.axiom("Ax6", {p, q, q});         // (p->q) -> ((q->q) -> ((p\/q)->q))
    int l3 = b.mp(l0, l2);
    b.mp(l1, l3);
    out.push_back({"RorThree", "p -> q |- (p \\/ q) -> q", b.take()});
  }
  {
    // Ax11 then R3: renaming the bound variable of an existential
    DerivationBuilder b(CalculusId::QH3sup);
    FormulaPtr px = mkPred("P", {mkTermVar("x")});
    FormulaPtr py = mkPred("P", {mkTermVar("y")});
    int l0 = b.axiomRaw("Ax11", mkImp(py, mkExists("x", px)));
    b.r3(l0, "y");
    out.push_back({"ExistsRename", "(exists y. P(y)) -> (exists x. P(x))", b.take()});
  }
  {
    DerivationBuilder b(CalculusId::QH3sup);
    FormulaPtr px = mkPred("P", {mkTermVar("x")});
    FormulaPtr py = mkPred("P", {mkTermVar("y")});
    int l0 = b.axiomRaw("Ax12", mkImp(mkForall("x", px), py));
    b.r4(l0, "y");
    out.push_back({"ForallRename", "(forall x. P(x)) -> (forall y. P(y))", b.take()});
  }
  return out;
}

} // namespace triv
