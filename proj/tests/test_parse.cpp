#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "gen.hpp"
#include "triv/error.hpp"
#include "triv/parse.hpp"

using namespace triv;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(TRIV_DATA_DIR) + "/" + name, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const Signature kInf{SigKind::Inf, false};
const Signature kSup{SigKind::Sup, false};
const Signature kFol{SigKind::Sup, true};

} // namespace

TEST_CASE("formula grammar") {
  FormulaPtr p = mkVar("p"), q = mkVar("q"), r = mkVar("r");
  CHECK(equal(parseFormula("p -> (q -> p)", kSup), mkImp(p, mkImp(q, p))));
  CHECK(equal(parseFormula("# p -> p", kSup), mkImp(mkNec(p), p)));
  CHECK(equal(parseFormula("p -> q -> r", kSup), mkImp(p, mkImp(q, r))));
  CHECK(equal(parseFormula("p \\/ q \\/ r", kSup), mkOr(mkOr(p, q), r)));
  CHECK(equal(parseFormula("p /\\ q \\/ r", kInf),
              definedConnectives(mkOr(mkAnd(p, q), r), kInf)));
  CHECK(equal(parseFormula("##p", kSup), mkNec(mkNec(p))));
  CHECK_THROWS_AS(parseFormula("p /\\ q", kSup), Error);
  try {
    parseFormula("p /\\ q", kSup);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Signature);
  }
}

TEST_CASE("unicode aliases") {
  FormulaPtr p = mkVar("p"), q = mkVar("q");
  CHECK(equal(parseFormula("p \xE2\x86\x92 q", kSup), mkImp(p, q)));          // ->
  CHECK(equal(parseFormula("p \xE2\x88\xA8 q", kSup), mkOr(p, q)));           // \/
  CHECK(equal(parseFormula("p \xE2\x88\xA7 q", kInf), mkAnd(p, q)));          // /\ .
  CHECK(equal(parseFormula("\xE2\x96\xB3p", kSup), mkNec(p)));                // #
  CHECK(equal(parseFormula("\xE2\x88\x87p", kSup), nabla(p)));                // nabla
}

TEST_CASE("nabla and the defined supremum expand at parse time") {
  FormulaPtr p = mkVar("p"), q = mkVar("q");
  CHECK(equal(parseFormula("nabla p", kSup), nabla(p)));
  CHECK(equal(parseFormula("p \\/ q", kInf), orAsInf(p, q)));
}

TEST_CASE("first-order syntax") {
  FormulaPtr expect = mkForall("x", mkImp(mkPred("P", {mkTermVar("x")}),
                                          mkExists("y", mkPred("R", {mkTermVar("x"),
                                                                     mkTermVar("y")}))));
  CHECK(equal(parseFormula("forall x. P(x) -> exists y. R(x,y)", kFol), expect));

  ThetaSignature theta;
  theta.consts = {"c"};
  theta.preds = {{"P", 1}};
  CHECK(equal(parseFormula("P(c)", kFol, &theta), mkPred("P", {mkConst("c")})));
  CHECK(equal(parseFormula("P(d)", kFol, &theta), mkPred("P", {mkTermVar("d")})));
  CHECK_THROWS_AS(parseFormula("Q(c)", kFol, &theta), Error);
  CHECK_THROWS_AS(parseFormula("P(c,c)", kFol, &theta), Error);
  CHECK_THROWS_AS(parseFormula("forall x. P(x)", kSup), Error);
}

TEST_CASE("parse errors carry spans inside the input") {
  for (const std::string bad : {"p ->", "(p -> q", "p -> ) q", "forall . p", "-> p", "p q"}) {
    try {
      parseFormula(bad, kSup);
      FAIL("expected a syntax error for: " << bad);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Syntax);
      REQUIRE(e.span().has_value());
      CHECK(e.span()->start <= e.span()->end);
      CHECK(e.span()->end <= bad.size());
    }
  }

  for (const std::string bad : {"{\"carrier\": 3,", "[1,2", "{\"carrier\": }"}) {
    try {
      parseAlgebra(bad);
      FAIL("expected a syntax error for: " << bad);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Syntax);
      if (e.span()) {
        CHECK(e.span()->start <= e.span()->end);
        CHECK(e.span()->end <= bad.size());
      }
    }
  }
}

TEST_CASE("print then parse is the identity on random formulas") {
  for (unsigned seed = 0; seed < 30; ++seed) {
    gen::FormulaGen g(seed, seed % 2 ? SigKind::Inf : SigKind::Sup, seed % 3 == 0);
    Signature sig{g.sig, g.firstOrder};
    for (int trial = 0; trial < 30; ++trial) {
      FormulaPtr f = g.formula(4);
      if (g.sig == SigKind::Inf) f = definedConnectives(f, sig);
      std::string text = printFormula(f);
      CAPTURE(text);
      FormulaPtr back = parseFormula(text, sig);
      CHECK(equal(back, f));
      CHECK(printFormula(back) == text);
    }
  }
}

TEST_CASE("the parser survives arbitrary input") {
  const std::string alphabet = "pq(). ->/\\#xf, forallexists nabla_12";
  std::mt19937 rng(777);
  for (int trial = 0; trial < 3000; ++trial) {
    std::string text;
    int len = static_cast<int>(rng() % 24);
    for (int i = 0; i < len; ++i) text += alphabet[rng() % alphabet.size()];
    for (const Signature& sig : {kInf, kSup, kFol}) {
      try {
        FormulaPtr f = parseFormula(text, sig);
        // whatever parses must print and reparse to the same tree
        CHECK(equal(parseFormula(printFormula(f), sig), f));
      } catch (const Error& e) {
        if (e.span()) CHECK(e.span()->end <= text.size());
      }
    }
  }
}

TEST_CASE("algebra files") {
  FiniteAlgebra a = parseAlgebra(slurp("c3_inf.json"));
  CHECK(a.n == 3);
  CHECK(a.one == 2);
  CHECK(a.sig == SigKind::Inf);
  CHECK(a.impAt(1, 0) == 0);
  CHECK(a.impAt(2, 1) == 1);
  CHECK(a.necAt(1) == 0);

  // round trip through the serializer
  FiniteAlgebra b = parseAlgebra(printAlgebra(a));
  CHECK(b.imp == a.imp);
  CHECK(b.lat == a.lat);
  CHECK(b.nec == a.nec);
  CHECK(b.one == a.one);

  CHECK_THROWS_AS(parseAlgebra(R"({"carrier":3,"one":2,"imp":[[2,2,2],[0,2,2],[0,1,3]],)"
                               R"("meet":[[0,0,0],[0,1,1],[0,1,2]],"nec":[0,0,2]})"),
                  Error); // entry 3 outside the carrier
  try {
    parseAlgebra(R"({"carrier":3,"one":2,"imp":[[2,2,2],[0,2,2],[0,1,3]],)"
                 R"("meet":[[0,0,0],[0,1,1],[0,1,2]],"nec":[0,0,2]})");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Domain);
  }

  // exactly one lattice table
  CHECK_THROWS_AS(parseAlgebra(R"({"carrier":1,"one":0,"imp":[[0]],"nec":[0]})"), Error);
  CHECK_THROWS_AS(parseAlgebra(R"({"carrier":1,"one":0,"imp":[[0]],"meet":[[0]],)"
                               R"("join":[[0]],"nec":[0]})"),
                  Error);
}

TEST_CASE("derivation files") {
  Derivation d = parseDerivation(slurp("mi1.json"));
  CHECK(d.calc == CalculusId::iH3);
  CHECK(d.lines.size() == 5);
  CHECK(checkDerivation(d).ok);

  // MP citing a non-implication parses; the checker rejects it later
  Derivation bad = parseDerivation(slurp("bad_mp.json"));
  CheckReport rep = checkDerivation(bad);
  CHECK(!rep.ok);
  CHECK(rep.firstFailure == 2);
  CHECK(rep.lines[2].reason.find("implication") != std::string::npos);

  // round trip
  Derivation again = parseDerivation(printDerivation(d));
  CHECK(again.lines.size() == d.lines.size());
  for (std::size_t i = 0; i < d.lines.size(); ++i)
    CHECK(equal(again.lines[i].formula, d.lines[i].formula));
  CHECK(checkDerivation(again).ok);
}

TEST_CASE("the whole lemma corpus survives serialization") {
  for (const auto& item : lemmaCorpus()) {
    CAPTURE(item.name);
    Derivation back = parseDerivation(printDerivation(item.derivation));
    REQUIRE(back.lines.size() == item.derivation.lines.size());
    REQUIRE(back.premises.size() == item.derivation.premises.size());
    for (std::size_t i = 0; i < back.premises.size(); ++i)
      CHECK(equal(back.premises[i], item.derivation.premises[i]));
    for (std::size_t i = 0; i < back.lines.size(); ++i) {
      CHECK(equal(back.lines[i].formula, item.derivation.lines[i].formula));
      CHECK(back.lines[i].just.kind == item.derivation.lines[i].just.kind);
    }
    CHECK(checkDerivation(back).ok);
  }
}

TEST_CASE("derivation file schema errors") {
  CHECK_THROWS_AS(parseDerivation(R"({"calculus":"K4","lines":[]})"), Error);
  CHECK_THROWS_AS(parseDerivation(R"({"premises":[],"lines":[]})"), Error);
  CHECK_THROWS_AS(
      parseDerivation(R"({"calculus":"iH3","lines":[{"formula":"p"}]})"), Error);
  CHECK_THROWS_AS(
      parseDerivation(
          R"({"calculus":"iH3","lines":[{"formula":"p","just":{"kind":"guess"}}]})"),
      Error);
  CHECK_THROWS_AS(
      parseDerivation(
          R"({"calculus":"iH3","lines":[{"formula":"p","just":{"kind":"mp","i":0}}]})"),
      Error); // missing j
}

TEST_CASE("generated algebra and structure files survive serialization") {
  std::mt19937 rng(314);
  for (int trial = 0; trial < 25; ++trial) {
    FiniteAlgebra a;
    a.n = 2 + static_cast<int>(rng() % 5);
    a.sig = rng() % 2 ? SigKind::Inf : SigKind::Sup;
    a.one = static_cast<int>(rng() % a.n);
    for (int i = 0; i < a.n * a.n; ++i) {
      a.imp.push_back(static_cast<std::uint16_t>(rng() % a.n));
      a.lat.push_back(static_cast<std::uint16_t>(rng() % a.n));
    }
    for (int i = 0; i < a.n; ++i) a.nec.push_back(static_cast<std::uint16_t>(rng() % a.n));
    FiniteAlgebra back = parseAlgebra(printAlgebra(a));
    CHECK(back.sig == a.sig);
    CHECK(back.one == a.one);
    CHECK(back.imp == a.imp);
    CHECK(back.lat == a.lat);
    CHECK(back.nec == a.nec);
  }

  // random structures over verified Sup algebras
  FiniteAlgebra sq = productAlgebra({c3(SigKind::Sup), c3(SigKind::Sup)});
  std::vector<GeneratedSubalgebra> subs = allSubalgebras(sq);
  for (int trial = 0; trial < 15; ++trial) {
    Structure s;
    s.algebra = subs[rng() % subs.size()].algebra;
    int domainSize = 1 + static_cast<int>(rng() % 3);
    for (int d = 0; d < domainSize; ++d) s.domain.push_back(std::string(1, char('a' + d)));
    s.theta.consts = {"k"};
    s.constInterp["k"] = static_cast<int>(rng() % domainSize);
    s.theta.funcs = {{"f", 1}};
    std::vector<int> ftab;
    for (int d = 0; d < domainSize; ++d) ftab.push_back(static_cast<int>(rng() % domainSize));
    s.funcInterp["f"] = ftab;
    s.theta.preds = {{"P", 1}, {"R", 2}};
    std::vector<int> ptab, rtab;
    for (int d = 0; d < domainSize; ++d) ptab.push_back(static_cast<int>(rng() % s.algebra.n));
    for (int d = 0; d < domainSize * domainSize; ++d)
      rtab.push_back(static_cast<int>(rng() % s.algebra.n));
    s.predInterp["P"] = ptab;
    s.predInterp["R"] = rtab;

    Structure back = parseStructure(printStructure(s));
    CHECK(back.domain == s.domain);
    CHECK(back.constInterp == s.constInterp);
    CHECK(back.funcInterp == s.funcInterp);
    CHECK(back.predInterp == s.predInterp);
    CHECK(back.algebra.imp == s.algebra.imp);
    CHECK(back.algebra.lat == s.algebra.lat);
  }
}

TEST_CASE("structure files") {
  Structure s = parseStructure(slurp("structure1.json"));
  CHECK(s.domain == std::vector<std::string>{"a", "b"});
  CHECK(s.theta.knowsConst("c"));
  CHECK(s.constInterp.at("c") == 0);
  CHECK(s.predInterp.at("P") == std::vector<int>{1, 2});

  Structure back = parseStructure(printStructure(s));
  CHECK(back.domain == s.domain);
  CHECK(back.predInterp == s.predInterp);
  CHECK(back.constInterp == s.constInterp);

  // a missing table entry names the table
  std::string missing = R"json({
    "algebra": {"carrier":3,"one":2,"imp":[[2,2,2],[0,2,2],[0,1,2]],
                "join":[[0,1,2],[1,1,2],[2,2,2]],"nec":[0,0,2]},
    "domain": ["a","b"],
    "preds": {"P": {"(a)": 2}}
  })json";
  try {
    parseStructure(missing);
    FAIL("expected a schema error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Schema);
    CHECK(std::string(e.what()).find("preds.P") != std::string::npos);
  }

  // predicate value outside the algebra
  std::string badValue = R"json({
    "algebra": {"carrier":3,"one":2,"imp":[[2,2,2],[0,2,2],[0,1,2]],
                "join":[[0,1,2],[1,1,2],[2,2,2]],"nec":[0,0,2]},
    "domain": ["a"],
    "preds": {"P": {"(a)": 7}}
  })json";
  CHECK_THROWS_AS(parseStructure(badValue), Error);
}
