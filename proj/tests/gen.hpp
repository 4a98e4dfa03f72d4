// Deterministic random formula generators for property tests.
#ifndef TRIV_TESTS_GEN_HPP
#define TRIV_TESTS_GEN_HPP

#include <random>
#include <string>
#include <vector>

#include "triv/formula.hpp"

namespace gen {

struct FormulaGen {
  std::mt19937 rng;
  triv::SigKind sig;
  bool firstOrder;

  FormulaGen(unsigned seed, triv::SigKind sig, bool firstOrder = false)
      : rng(seed), sig(sig), firstOrder(firstOrder) {}

  int pick(int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); }

  triv::TermPtr term(int depth) {
    static const std::vector<std::string> vars = {"x", "y", "z"};
    if (depth <= 0 || pick(3) != 0) return triv::mkTermVar(vars[pick(3)]);
    return triv::mkFunc("f", {term(depth - 1)});
  }

  triv::FormulaPtr atom() {
    static const std::vector<std::string> props = {"p", "q", "r"};
    if (!firstOrder) return triv::mkVar(props[pick(3)]);
    int arity = 1 + pick(2);
    std::vector<triv::TermPtr> args;
    for (int i = 0; i < arity; ++i) args.push_back(term(1));
    return triv::mkPred(arity == 1 ? "P" : "R", std::move(args));
  }

  triv::FormulaPtr formula(int depth) {
    if (depth <= 0) return atom();
    switch (pick(firstOrder ? 6 : 4)) {
      case 0: return atom();
      case 1: return triv::mkImp(formula(depth - 1), formula(depth - 1));
      case 2:
        return sig == triv::SigKind::Inf
                   ? triv::mkAnd(formula(depth - 1), formula(depth - 1))
                   : triv::mkOr(formula(depth - 1), formula(depth - 1));
      case 3: return triv::mkNec(formula(depth - 1));
      case 4: return triv::mkForall(pick(2) ? "x" : "y", formula(depth - 1));
      default: return triv::mkExists(pick(2) ? "x" : "y", formula(depth - 1));
    }
  }
};

} // namespace gen

#endif
