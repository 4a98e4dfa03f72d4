#include "triv/formula.hpp"

#include <algorithm>
#include <functional>

namespace triv {

namespace {

std::size_t hashCombine(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

std::size_t hashString(const std::string& s) { return std::hash<std::string>{}(s); }

} // namespace

TermPtr mkTermVar(std::string name) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Var;
  t->name = std::move(name);
  t->hash = hashCombine(1, hashString(t->name));
  return t;
}

TermPtr mkConst(std::string name) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Const;
  t->name = std::move(name);
  t->hash = hashCombine(2, hashString(t->name));
  return t;
}

TermPtr mkFunc(std::string name, std::vector<TermPtr> args) {
  auto t = std::make_shared<Term>();
  t->kind = TermKind::Func;
  t->name = std::move(name);
  t->args = std::move(args);
  std::size_t h = hashCombine(3, hashString(t->name));
  for (const auto& a : t->args) h = hashCombine(h, a->hash);
  t->hash = h;
  return t;
}

bool equal(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->hash != b->hash || a->kind != b->kind || a->name != b->name) return false;
  if (a->args.size() != b->args.size()) return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!equal(a->args[i], b->args[i])) return false;
  return true;
}

namespace {

FormulaPtr mkNode(NodeKind kind, std::string name, FormulaPtr lhs, FormulaPtr rhs,
                  std::vector<TermPtr> args) {
  auto f = std::make_shared<Formula>();
  f->kind = kind;
  f->name = std::move(name);
  f->lhs = std::move(lhs);
  f->rhs = std::move(rhs);
  f->args = std::move(args);
  std::size_t h = hashCombine(17 + static_cast<std::size_t>(kind), hashString(f->name));
  if (f->lhs) h = hashCombine(h, f->lhs->hash);
  if (f->rhs) h = hashCombine(h, f->rhs->hash);
  for (const auto& a : f->args) h = hashCombine(h, a->hash);
  f->hash = h;
  return f;
}

} // namespace

FormulaPtr mkVar(std::string name) { return mkNode(NodeKind::Var, std::move(name), nullptr, nullptr, {}); }
FormulaPtr mkMeta(std::string name) { return mkNode(NodeKind::Meta, std::move(name), nullptr, nullptr, {}); }
FormulaPtr mkImp(FormulaPtr a, FormulaPtr b) {
  return mkNode(NodeKind::Imp, "", std::move(a), std::move(b), {});
}
FormulaPtr mkAnd(FormulaPtr a, FormulaPtr b) {
  return mkNode(NodeKind::And, "", std::move(a), std::move(b), {});
}
FormulaPtr mkOr(FormulaPtr a, FormulaPtr b) {
  return mkNode(NodeKind::Or, "", std::move(a), std::move(b), {});
}
FormulaPtr mkNec(FormulaPtr a) { return mkNode(NodeKind::Nec, "", std::move(a), nullptr, {}); }
FormulaPtr mkPred(std::string symbol, std::vector<TermPtr> args) {
  return mkNode(NodeKind::Pred, std::move(symbol), nullptr, nullptr, std::move(args));
}
FormulaPtr mkForall(std::string var, FormulaPtr body) {
  return mkNode(NodeKind::Forall, std::move(var), std::move(body), nullptr, {});
}
FormulaPtr mkExists(std::string var, FormulaPtr body) {
  return mkNode(NodeKind::Exists, std::move(var), std::move(body), nullptr, {});
}

FormulaPtr nabla(FormulaPtr a) {
  FormulaPtr na = mkNec(a);
  return mkImp(mkImp(std::move(a), na), na);
}

FormulaPtr orAsInf(FormulaPtr a, FormulaPtr b) {
  return mkAnd(mkImp(mkImp(a, b), b), mkImp(mkImp(b, a), a));
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->hash != b->hash || a->kind != b->kind || a->name != b->name) return false;
  if (!equal(a->lhs, b->lhs) || !equal(a->rhs, b->rhs)) return false;
  if (a->args.size() != b->args.size()) return false;
  for (std::size_t i = 0; i < a->args.size(); ++i)
    if (!equal(a->args[i], b->args[i])) return false;
  return true;
}

namespace {

void termVars(const TermPtr& t, std::set<std::string>& out) {
  if (t->kind == TermKind::Var) out.insert(t->name);
  for (const auto& a : t->args) termVars(a, out);
}

void collectFree(const FormulaPtr& f, std::set<std::string>& bound, bool includeProp,
                 std::set<std::string>& out) {
  switch (f->kind) {
    case NodeKind::Var:
      if (includeProp) out.insert(f->name);
      return;
    case NodeKind::Meta:
      return;
    case NodeKind::Pred: {
      std::set<std::string> vs;
      for (const auto& t : f->args) termVars(t, vs);
      for (const auto& v : vs)
        if (!bound.count(v)) out.insert(v);
      return;
    }
    case NodeKind::Imp:
    case NodeKind::And:
    case NodeKind::Or:
      collectFree(f->lhs, bound, includeProp, out);
      collectFree(f->rhs, bound, includeProp, out);
      return;
    case NodeKind::Nec:
      collectFree(f->lhs, bound, includeProp, out);
      return;
    case NodeKind::Forall:
    case NodeKind::Exists: {
      bool added = bound.insert(f->name).second;
      collectFree(f->lhs, bound, includeProp, out);
      if (added) bound.erase(f->name);
      return;
    }
  }
}

} // namespace

std::set<std::string> freeVars(const FormulaPtr& phi) {
  std::set<std::string> bound, out;
  collectFree(phi, bound, true, out);
  return out;
}

std::set<std::string> freeTermVars(const FormulaPtr& phi) {
  std::set<std::string> bound, out;
  collectFree(phi, bound, false, out);
  return out;
}

bool isPropositional(const FormulaPtr& phi) {
  switch (phi->kind) {
    case NodeKind::Var: return true;
    case NodeKind::Meta: return true;
    case NodeKind::Pred:
    case NodeKind::Forall:
    case NodeKind::Exists: return false;
    case NodeKind::Nec: return isPropositional(phi->lhs);
    default: return isPropositional(phi->lhs) && isPropositional(phi->rhs);
  }
}

namespace {

bool termContainsVar(const TermPtr& t, const std::string& x) {
  if (t->kind == TermKind::Var) return t->name == x;
  for (const auto& a : t->args)
    if (termContainsVar(a, x)) return true;
  return false;
}

// Walks phi tracking bound variables; fails when a free occurrence of x
// sits under a binder for some variable of t.
bool freeForWalk(const TermPtr& t, const std::string& x, const FormulaPtr& phi,
                 std::set<std::string>& bound) {
  switch (phi->kind) {
    case NodeKind::Var:
    case NodeKind::Meta:
      return true;
    case NodeKind::Pred: {
      bool hasX = false;
      for (const auto& a : phi->args) hasX = hasX || termContainsVar(a, x);
      if (!hasX || bound.count(x)) return true;
      std::set<std::string> tv;
      termVars(t, tv);
      for (const auto& v : tv)
        if (bound.count(v)) return false;
      return true;
    }
    case NodeKind::Imp:
    case NodeKind::And:
    case NodeKind::Or:
      return freeForWalk(t, x, phi->lhs, bound) && freeForWalk(t, x, phi->rhs, bound);
    case NodeKind::Nec:
      return freeForWalk(t, x, phi->lhs, bound);
    case NodeKind::Forall:
    case NodeKind::Exists: {
      bool added = bound.insert(phi->name).second;
      bool ok = freeForWalk(t, x, phi->lhs, bound);
      if (added) bound.erase(phi->name);
      return ok;
    }
  }
  return true;
}

TermPtr substTerm(const TermPtr& t, const std::string& x, const TermPtr& repl) {
  if (t->kind == TermKind::Var) return t->name == x ? repl : t;
  if (t->kind == TermKind::Const) return t;
  std::vector<TermPtr> args;
  args.reserve(t->args.size());
  for (const auto& a : t->args) args.push_back(substTerm(a, x, repl));
  return mkFunc(t->name, std::move(args));
}

FormulaPtr substWalk(const FormulaPtr& phi, const std::string& x, const TermPtr& t) {
  switch (phi->kind) {
    case NodeKind::Var:
    case NodeKind::Meta:
      return phi;
    case NodeKind::Pred: {
      std::vector<TermPtr> args;
      args.reserve(phi->args.size());
      for (const auto& a : phi->args) args.push_back(substTerm(a, x, t));
      return mkPred(phi->name, std::move(args));
    }
    case NodeKind::Imp: return mkImp(substWalk(phi->lhs, x, t), substWalk(phi->rhs, x, t));
    case NodeKind::And: return mkAnd(substWalk(phi->lhs, x, t), substWalk(phi->rhs, x, t));
    case NodeKind::Or: return mkOr(substWalk(phi->lhs, x, t), substWalk(phi->rhs, x, t));
    case NodeKind::Nec: return mkNec(substWalk(phi->lhs, x, t));
    case NodeKind::Forall:
    case NodeKind::Exists: {
      if (phi->name == x) return phi; // x rebound below, nothing to do
      FormulaPtr body = substWalk(phi->lhs, x, t);
      return phi->kind == NodeKind::Forall ? mkForall(phi->name, std::move(body))
                                           : mkExists(phi->name, std::move(body));
    }
  }
  return phi;
}

} // namespace

bool isFreeFor(const TermPtr& t, const std::string& x, const FormulaPtr& phi) {
  std::set<std::string> bound;
  return freeForWalk(t, x, phi, bound);
}

FormulaPtr substitute(const FormulaPtr& phi, const std::string& x, const TermPtr& t) {
  if (!isFreeFor(t, x, phi))
    throw Error(ErrorKind::Capture,
                "term is not free for variable '" + x + "' in the formula");
  return substWalk(phi, x, t);
}

FormulaPtr universalClosure(const FormulaPtr& phi) {
  std::set<std::string> vars = freeTermVars(phi);
  FormulaPtr out = phi;
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) out = mkForall(*it, out);
  return out;
}

void checkSignature(const FormulaPtr& phi, const Signature& sig) {
  switch (phi->kind) {
    case NodeKind::Var:
    case NodeKind::Meta:
      return;
    case NodeKind::And:
      if (sig.kind == SigKind::Sup)
        throw Error(ErrorKind::Signature, "/\\ is not available in the {->, \\/, #} signature");
      checkSignature(phi->lhs, sig);
      checkSignature(phi->rhs, sig);
      return;
    case NodeKind::Or:
      if (sig.kind == SigKind::Inf)
        throw Error(ErrorKind::Signature,
                    "\\/ must be expanded to its definition under the {->, /\\, #} signature");
      checkSignature(phi->lhs, sig);
      checkSignature(phi->rhs, sig);
      return;
    case NodeKind::Imp:
      checkSignature(phi->lhs, sig);
      checkSignature(phi->rhs, sig);
      return;
    case NodeKind::Nec:
      checkSignature(phi->lhs, sig);
      return;
    case NodeKind::Pred:
    case NodeKind::Forall:
    case NodeKind::Exists:
      if (!sig.firstOrder)
        throw Error(ErrorKind::Signature, "first-order syntax used under a propositional signature");
      if (phi->kind != NodeKind::Pred) checkSignature(phi->lhs, sig);
      return;
  }
}

FormulaPtr definedConnectives(const FormulaPtr& phi, const Signature& sig) {
  FormulaPtr out;
  switch (phi->kind) {
    case NodeKind::Var:
    case NodeKind::Meta:
    case NodeKind::Pred:
      out = phi;
      break;
    case NodeKind::Imp:
      out = mkImp(definedConnectives(phi->lhs, sig), definedConnectives(phi->rhs, sig));
      break;
    case NodeKind::And:
      out = mkAnd(definedConnectives(phi->lhs, sig), definedConnectives(phi->rhs, sig));
      break;
    case NodeKind::Or: {
      FormulaPtr a = definedConnectives(phi->lhs, sig);
      FormulaPtr b = definedConnectives(phi->rhs, sig);
      out = sig.kind == SigKind::Inf ? orAsInf(std::move(a), std::move(b))
                                     : mkOr(std::move(a), std::move(b));
      break;
    }
    case NodeKind::Nec:
      out = mkNec(definedConnectives(phi->lhs, sig));
      break;
    case NodeKind::Forall:
      out = mkForall(phi->name, definedConnectives(phi->lhs, sig));
      break;
    case NodeKind::Exists:
      out = mkExists(phi->name, definedConnectives(phi->lhs, sig));
      break;
  }
  checkSignature(out, sig);
  return out;
}

namespace {

bool matchWalk(const SchemaPattern& schema, const FormulaPtr& pat, const FormulaPtr& f,
               MatchResult& out) {
  if (pat->kind == NodeKind::Meta) {
    auto it = out.formulas.find(pat->name);
    if (it != out.formulas.end()) return equal(it->second, f);
    out.formulas.emplace(pat->name, f);
    return true;
  }
  if (pat->kind != f->kind) return false;
  switch (pat->kind) {
    case NodeKind::Var:
      return pat->name == f->name;
    case NodeKind::Pred: {
      if (pat->name != f->name || pat->args.size() != f->args.size()) return false;
      for (std::size_t i = 0; i < pat->args.size(); ++i)
        if (!equal(pat->args[i], f->args[i])) return false;
      return true;
    }
    case NodeKind::Imp:
    case NodeKind::And:
    case NodeKind::Or:
      return matchWalk(schema, pat->lhs, f->lhs, out) && matchWalk(schema, pat->rhs, f->rhs, out);
    case NodeKind::Nec:
      return matchWalk(schema, pat->lhs, f->lhs, out);
    case NodeKind::Forall:
    case NodeKind::Exists: {
      if (schema.binderMetas.count(pat->name)) {
        auto it = out.binders.find(pat->name);
        if (it != out.binders.end()) {
          if (it->second != f->name) return false;
        } else {
          out.binders.emplace(pat->name, f->name);
        }
      } else if (pat->name != f->name) {
        return false;
      }
      return matchWalk(schema, pat->lhs, f->lhs, out);
    }
    default:
      return false;
  }
}

FormulaPtr instWalk(const SchemaPattern& schema, const FormulaPtr& pat, const MatchResult& m) {
  switch (pat->kind) {
    case NodeKind::Meta: {
      auto it = m.formulas.find(pat->name);
      if (it == m.formulas.end())
        throw Error(ErrorKind::Precondition, "unbound metavariable '" + pat->name + "'");
      return it->second;
    }
    case NodeKind::Var:
    case NodeKind::Pred:
      return pat;
    case NodeKind::Imp: return mkImp(instWalk(schema, pat->lhs, m), instWalk(schema, pat->rhs, m));
    case NodeKind::And: return mkAnd(instWalk(schema, pat->lhs, m), instWalk(schema, pat->rhs, m));
    case NodeKind::Or: return mkOr(instWalk(schema, pat->lhs, m), instWalk(schema, pat->rhs, m));
    case NodeKind::Nec: return mkNec(instWalk(schema, pat->lhs, m));
    case NodeKind::Forall:
    case NodeKind::Exists: {
      std::string var = pat->name;
      if (schema.binderMetas.count(var)) {
        auto it = m.binders.find(var);
        if (it == m.binders.end())
          throw Error(ErrorKind::Precondition, "unbound binder metavariable '" + var + "'");
        var = it->second;
      }
      FormulaPtr body = instWalk(schema, pat->lhs, m);
      return pat->kind == NodeKind::Forall ? mkForall(var, std::move(body))
                                           : mkExists(var, std::move(body));
    }
  }
  return pat;
}

} // namespace

std::optional<MatchResult> matchSchema(const SchemaPattern& pattern, const FormulaPtr& phi) {
  MatchResult out;
  if (!matchWalk(pattern, pattern.pattern, phi, out)) return std::nullopt;
  return out;
}

FormulaPtr instantiate(const SchemaPattern& pattern, const MatchResult& binding) {
  return instWalk(pattern, pattern.pattern, binding);
}

namespace {

// precedence: quantifier/imp = 1, /\ \/ = 2, # = 3, atom = 4
void printWalk(const FormulaPtr& f, int context, std::string& out) {
  switch (f->kind) {
    case NodeKind::Var:
    case NodeKind::Meta:
      out += f->name;
      return;
    case NodeKind::Pred: {
      out += f->name;
      out += "(";
      for (std::size_t i = 0; i < f->args.size(); ++i) {
        if (i) out += ",";
        out += printTerm(f->args[i]);
      }
      out += ")";
      return;
    }
    case NodeKind::Imp: {
      bool paren = context > 1;
      if (paren) out += "(";
      printWalk(f->lhs, 2, out);
      out += " -> ";
      printWalk(f->rhs, 1, out);
      if (paren) out += ")";
      return;
    }
    case NodeKind::And:
    case NodeKind::Or: {
      bool paren = context > 2;
      if (paren) out += "(";
      printWalk(f->lhs, 2, out);
      out += f->kind == NodeKind::And ? " /\\ " : " \\/ ";
      printWalk(f->rhs, 3, out);
      if (paren) out += ")";
      return;
    }
    case NodeKind::Nec:
      out += "#";
      printWalk(f->lhs, 3, out);
      return;
    case NodeKind::Forall:
    case NodeKind::Exists: {
      bool paren = context > 1;
      if (paren) out += "(";
      out += f->kind == NodeKind::Forall ? "forall " : "exists ";
      out += f->name;
      out += ". ";
      printWalk(f->lhs, 1, out);
      if (paren) out += ")";
      return;
    }
  }
}

} // namespace

std::string printTerm(const TermPtr& t) {
  if (t->kind != TermKind::Func) return t->name;
  std::string out = t->name;
  out += "(";
  for (std::size_t i = 0; i < t->args.size(); ++i) {
    if (i) out += ",";
    out += printTerm(t->args[i]);
  }
  out += ")";
  return out;
}

std::string printFormula(const FormulaPtr& phi) {
  std::string out;
  printWalk(phi, 1, out);
  return out;
}

} // namespace triv
