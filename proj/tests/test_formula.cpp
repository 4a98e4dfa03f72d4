#include <doctest.h>

#include "gen.hpp"
#include "triv/error.hpp"
#include "triv/formula.hpp"
#include "triv/proof.hpp"

using namespace triv;

TEST_CASE("substitution replaces free occurrences only") {
  FormulaPtr px = mkPred("P", {mkTermVar("x")});
  CHECK(equal(substitute(px, "x", mkConst("c")), mkPred("P", {mkConst("c")})));

  FormulaPtr closed = mkForall("x", px);
  CHECK(equal(substitute(closed, "x", mkConst("c")), closed));

  // exists y. P(x,y) with t = f(y): y would be captured
  FormulaPtr phi = mkExists("y", mkPred("P", {mkTermVar("x"), mkTermVar("y")}));
  TermPtr t = mkFunc("f", {mkTermVar("y")});
  CHECK(!isFreeFor(t, "x", phi));
  CHECK_THROWS_AS(substitute(phi, "x", t), Error);
  try {
    substitute(phi, "x", t);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Capture);
  }
}

TEST_CASE("free variables") {
  FormulaPtr f = mkForall("x", mkPred("P", {mkTermVar("x"), mkTermVar("y")}));
  CHECK(freeVars(f) == std::set<std::string>{"y"});

  FormulaPtr prop = mkImp(mkVar("p"), mkNec(mkVar("p")));
  CHECK(freeVars(prop) == std::set<std::string>{"p"});

  CHECK(freeVars(mkExists("x", mkPred("P", {mkTermVar("x")}))).empty());
}

TEST_CASE("schema matching is uniform substitution") {
  const Calculus& ih3 = calculus(CalculusId::iH3);
  const SchemaPattern& a1 = ih3.axioms[0];
  FormulaPtr p = mkVar("p"), q = mkVar("q"), r = mkVar("r");

  auto m = matchSchema(a1, mkImp(p, mkImp(q, p)));
  REQUIRE(m.has_value());
  CHECK(equal(m->formulas.at("a"), p));
  CHECK(equal(m->formulas.at("b"), q));

  CHECK(!matchSchema(a1, mkImp(p, mkImp(q, r))).has_value());

  SchemaPattern necElim{"Ai7", mkImp(mkNec(mkMeta("a")), mkMeta("a")), {}};
  FormulaPtr orPQ = mkOr(p, q);
  auto m2 = matchSchema(necElim, mkImp(mkNec(orPQ), orPQ));
  REQUIRE(m2.has_value());
  CHECK(equal(m2->formulas.at("a"), orPQ));
}

TEST_CASE("match of an instantiation recovers the binding") {
  gen::FormulaGen g(42, SigKind::Sup);
  for (const auto& calcId : {CalculusId::iH3, CalculusId::H3sup}) {
    const Calculus& c = calculus(calcId);
    gen::FormulaGen gg(7 + static_cast<unsigned>(calcId), c.sig.kind);
    for (const auto& schema : c.axioms) {
      for (int trial = 0; trial < 20; ++trial) {
        MatchResult binding;
        for (const auto& name : {"a", "b", "c"}) binding.formulas[name] = gg.formula(2);
        FormulaPtr inst = instantiate(schema, binding);
        auto recovered = matchSchema(schema, inst);
        REQUIRE(recovered.has_value());
        for (const auto& [name, value] : recovered->formulas)
          CHECK(equal(value, binding.formulas.at(name)));
      }
    }
  }
}

TEST_CASE("binder metavariables match any quantified variable") {
  SchemaPattern ax13{"Ax13", mkImp(mkNec(mkExists("x", mkMeta("a"))),
                                   mkExists("x", mkNec(mkMeta("a")))),
                     {"x"}};
  FormulaPtr body = mkPred("P", {mkTermVar("v"), mkTermVar("v")});
  FormulaPtr inst = mkImp(mkNec(mkExists("v", body)), mkExists("v", mkNec(body)));
  auto m = matchSchema(ax13, inst);
  REQUIRE(m.has_value());
  CHECK(m->binders.at("x") == "v");
  CHECK(equal(instantiate(ax13, *m), inst));

  // both binders must be the same variable
  FormulaPtr bad = mkImp(mkNec(mkExists("v", body)), mkExists("w", mkNec(body)));
  CHECK(!matchSchema(ax13, bad).has_value());
}

TEST_CASE("defined connectives") {
  FormulaPtr p = mkVar("p"), q = mkVar("q");
  Signature inf{SigKind::Inf, false}, sup{SigKind::Sup, false};

  // nabla is a macro: building it yields the expansion directly
  CHECK(equal(nabla(p), mkImp(mkImp(p, mkNec(p)), mkNec(p))));

  FormulaPtr expanded = definedConnectives(mkOr(p, q), inf);
  CHECK(equal(expanded, mkAnd(mkImp(mkImp(p, q), q), mkImp(mkImp(q, p), p))));

  CHECK_THROWS_AS(definedConnectives(mkAnd(p, q), sup), Error);
  CHECK(equal(definedConnectives(mkOr(p, q), sup), mkOr(p, q)));

  // first-order nodes rejected under a propositional signature
  CHECK_THROWS_AS(checkSignature(mkExists("x", mkPred("P", {mkTermVar("x")})), sup), Error);
}

TEST_CASE("universal closure quantifies lexicographically") {
  FormulaPtr pxy = mkPred("P", {mkTermVar("x"), mkTermVar("y")});
  FormulaPtr closed = universalClosure(pxy);
  CHECK(equal(closed, mkForall("x", mkForall("y", pxy))));

  FormulaPtr sentence = mkForall("x", mkPred("P", {mkTermVar("x")}));
  CHECK(equal(universalClosure(sentence), sentence));

  FormulaPtr prop = mkImp(mkVar("p"), mkVar("p"));
  CHECK(equal(universalClosure(prop), prop));

  // order does not depend on occurrence order in the formula
  FormulaPtr pyx = mkPred("P", {mkTermVar("y"), mkTermVar("x")});
  CHECK(equal(universalClosure(pyx), mkForall("x", mkForall("y", pyx))));
}

TEST_CASE("isFreeFor is exactly the capture test") {
  gen::FormulaGen g(2024, SigKind::Sup, true);
  for (int trial = 0; trial < 200; ++trial) {
    FormulaPtr phi = g.formula(3);
    TermPtr t = g.term(2);
    bool free = isFreeFor(t, "x", phi);
    bool threw = false;
    try {
      substitute(phi, "x", t);
    } catch (const Error& e) {
      threw = e.kind() == ErrorKind::Capture;
    }
    CHECK(free == !threw);
  }
}
