#include "triv/matrix.hpp"

#include <algorithm>
#include <functional>

#include "triv/error.hpp"

namespace triv {

Tv evalC3(const FormulaPtr& phi, const Valuation& v) {
  switch (phi->kind) {
    case NodeKind::Var: {
      auto it = v.find(phi->name);
      if (it == v.end())
        throw Error(ErrorKind::UnboundVariable, "no value for variable '" + phi->name + "'");
      return it->second;
    }
    case NodeKind::Imp: return imp3(evalC3(phi->lhs, v), evalC3(phi->rhs, v));
    case NodeKind::And: return meet3(evalC3(phi->lhs, v), evalC3(phi->rhs, v));
    case NodeKind::Or: return join3(evalC3(phi->lhs, v), evalC3(phi->rhs, v));
    case NodeKind::Nec: return nec3(evalC3(phi->lhs, v));
    default:
      throw Error(ErrorKind::Precondition, "matrix evaluation needs a propositional formula");
  }
}

namespace {

// Scans valuations in lexicographic order and returns the first failure
// of `holds`, reporting it as the least countermodel.
ValidityReport scanValuations(const std::vector<std::string>& vars, int maxVars,
                              const std::function<bool(const Valuation&)>& holds) {
  if (static_cast<int>(vars.size()) > maxVars)
    throw Error(ErrorKind::VariableBudgetExceeded,
                std::to_string(vars.size()) + " variables exceed the cap of " +
                    std::to_string(maxVars));
  ValidityReport rep;
  std::vector<int> digits(vars.size(), 0);
  while (true) {
    Valuation v;
    for (std::size_t i = 0; i < vars.size(); ++i) v[vars[i]] = static_cast<Tv>(digits[i]);
    ++rep.valuationsScanned;
    if (!holds(v)) {
      rep.valid = false;
      rep.countermodel = std::move(v);
      return rep;
    }
    int i = static_cast<int>(vars.size()) - 1;
    while (i >= 0 && digits[i] == 2) digits[i--] = 0;
    if (i < 0) break;
    ++digits[i];
  }
  rep.valid = true;
  return rep;
}

} // namespace

ValidityReport isValid(const FormulaPtr& phi, int maxVars) {
  std::set<std::string> vs = freeVars(phi);
  std::vector<std::string> vars(vs.begin(), vs.end());
  return scanValuations(vars, maxVars,
                        [&](const Valuation& v) { return evalC3(phi, v) == Tv::T; });
}

ValidityReport consequence(const std::vector<FormulaPtr>& gamma, const FormulaPtr& phi,
                           int maxVars) {
  std::set<std::string> vs = freeVars(phi);
  for (const auto& g : gamma) {
    std::set<std::string> gv = freeVars(g);
    vs.insert(gv.begin(), gv.end());
  }
  std::vector<std::string> vars(vs.begin(), vs.end());
  return scanValuations(vars, maxVars, [&](const Valuation& v) {
    for (const auto& g : gamma)
      if (evalC3(g, v) != Tv::T) return true;
    return evalC3(phi, v) == Tv::T;
  });
}

std::vector<ImpAuditRow> checkDerivedImplicationFormulas() {
  std::vector<ImpAuditRow> rows;
  for (Tv x : kAllTv)
    for (Tv y : kAllTv) {
      Tv nx = neg3(x);
      Tv modal = join3(join3(nec3(nx), y), meet3(pos3(nx), pos3(y)));
      Tv luk = lukImp3(x, y);
      rows.push_back(ImpAuditRow{x, y, modal, luk, modal == luk});
    }
  return rows;
}

} // namespace triv
