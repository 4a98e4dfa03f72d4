// Test-only oracles, independent of the implementation paths they check.
#ifndef TRIV_TESTS_ORACLES_HPP
#define TRIV_TESTS_ORACLES_HPP

#include <array>
#include <set>
#include <vector>

#include "triv/algebra.hpp"
#include "triv/formula.hpp"
#include "triv/truth.hpp"

namespace oracles {

// All deductive systems of the given kind by brute force over every
// subset of the carrier. Exponential; keep the carrier small.
inline std::vector<std::vector<int>> bruteForceDS(const triv::FiniteAlgebra& a,
                                                  triv::DsKind kind) {
  std::vector<std::vector<int>> out;
  for (unsigned mask = 0; mask < (1u << a.n); ++mask) {
    if (!(mask & (1u << a.one))) continue;
    auto in = [&](int x) { return (mask & (1u << x)) != 0; };
    bool ok = true;
    for (int x = 0; x < a.n && ok; ++x) {
      if (!in(x)) continue;
      if (kind == triv::DsKind::Modal && !in(a.necAt(x))) ok = false;
      for (int y = 0; y < a.n && ok; ++y) {
        int arrow = kind == triv::DsKind::Weak ? a.weakImpAt(x, y) : a.impAt(x, y);
        if (in(arrow) && !in(y)) ok = false;
      }
    }
    if (!ok) continue;
    std::vector<int> elems;
    for (int x = 0; x < a.n; ++x)
      if (in(x)) elems.push_back(x);
    out.push_back(std::move(elems));
  }
  return out;
}

// Membership in a generated deductive system via the chain
// characterization: x belongs iff some (g1,...,gk; x) equals 1, where the
// gi range over the generators (prefixed with # in the modal case).
inline std::vector<int> chainCharacterizationDS(const triv::FiniteAlgebra& a,
                                                const std::vector<int>& gens, bool modal) {
  std::vector<int> out;
  for (int x = 0; x < a.n; ++x) {
    std::vector<char> reach(a.n, 0);
    std::vector<int> work{x};
    reach[x] = 1;
    bool hit = x == a.one;
    while (!work.empty() && !hit) {
      int v = work.back();
      work.pop_back();
      for (int h : gens) {
        int next = a.impAt(modal ? a.necAt(h) : h, v);
        if (!reach[next]) {
          reach[next] = 1;
          work.push_back(next);
          if (next == a.one) hit = true;
        }
      }
    }
    if (hit) out.push_back(x);
  }
  return out;
}

inline std::vector<int> chainCharacterizationModalDS(const triv::FiniteAlgebra& a,
                                                     const std::vector<int>& gens) {
  return chainCharacterizationDS(a, gens, true);
}

// Classical two-valued evaluation; # is the identity on {0,1}.
inline bool classicalEval(const triv::FormulaPtr& f,
                          const std::map<std::string, bool>& v) {
  using triv::NodeKind;
  switch (f->kind) {
    case NodeKind::Var: return v.at(f->name);
    case NodeKind::Imp: return !classicalEval(f->lhs, v) || classicalEval(f->rhs, v);
    case NodeKind::And: return classicalEval(f->lhs, v) && classicalEval(f->rhs, v);
    case NodeKind::Or: return classicalEval(f->lhs, v) || classicalEval(f->rhs, v);
    case NodeKind::Nec: return classicalEval(f->lhs, v);
    default: throw std::runtime_error("propositional only");
  }
}

// The term functions C3^k -> C3 over the signature, enumerated as a
// function-space closure with a depth counter; functions are identified
// by their value tables so the enumeration stays finite.
inline std::set<std::vector<triv::Tv>> termFunctionClosure(int k, triv::SigKind sig,
                                                           int maxDepth,
                                                           bool* reachedFixpoint = nullptr) {
  using triv::Tv;
  int vals = 1;
  for (int i = 0; i < k; ++i) vals *= 3;
  auto digit = [&](int j, int i) {
    for (int s = k - 1; s > i; --s) j /= 3;
    return static_cast<Tv>(j % 3);
  };

  std::set<std::vector<Tv>> funcs;
  for (int i = 0; i < k; ++i) {
    std::vector<Tv> f(vals);
    for (int j = 0; j < vals; ++j) f[j] = digit(j, i);
    funcs.insert(std::move(f));
  }
  funcs.insert(std::vector<Tv>(vals, Tv::T));

  bool fixed = false;
  for (int depth = 0; depth < maxDepth && !fixed; ++depth) {
    std::set<std::vector<Tv>> next = funcs;
    for (const auto& f : funcs) {
      std::vector<Tv> nf(vals);
      for (int j = 0; j < vals; ++j) nf[j] = triv::nec3(f[j]);
      next.insert(std::move(nf));
      for (const auto& g : funcs) {
        std::vector<Tv> impF(vals), latF(vals);
        for (int j = 0; j < vals; ++j) {
          impF[j] = triv::imp3(f[j], g[j]);
          latF[j] = sig == triv::SigKind::Inf ? triv::meet3(f[j], g[j])
                                              : triv::join3(f[j], g[j]);
        }
        next.insert(std::move(impF));
        next.insert(std::move(latF));
      }
    }
    fixed = next.size() == funcs.size();
    funcs = std::move(next);
  }
  if (reachedFixpoint) *reachedFixpoint = fixed;
  return funcs;
}

// C3 with the Goedel implication swapped for the Lukasiewicz one.
inline triv::FiniteAlgebra c3WithLukasiewiczImp(triv::SigKind sig) {
  triv::FiniteAlgebra a = triv::c3(sig);
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y)
      a.imp[x * 3 + y] = static_cast<std::uint16_t>(std::min(2, 2 - x + y));
  return a;
}

// The shared corpus of the acceptance criteria: C2, C3, C3^2, C3^3 and
// every subalgebra of C3^2, in both signatures where asked.
inline std::vector<triv::FiniteAlgebra> algebraCorpus(triv::SigKind sig) {
  std::vector<triv::FiniteAlgebra> out;
  out.push_back(triv::c2(sig));
  out.push_back(triv::c3(sig));
  triv::FiniteAlgebra c3sq = triv::productAlgebra({triv::c3(sig), triv::c3(sig)});
  out.push_back(c3sq);
  out.push_back(triv::productAlgebra({triv::c3(sig), triv::c3(sig), triv::c3(sig)}));
  for (auto& sub : triv::allSubalgebras(c3sq)) out.push_back(std::move(sub.algebra));
  return out;
}

} // namespace oracles

#endif
