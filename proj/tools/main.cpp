#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "triv/algebra.hpp"
#include "triv/error.hpp"
#include "triv/fol.hpp"
#include "triv/matrix.hpp"
#include "triv/parse.hpp"
#include "triv/proof.hpp"

using OrderedJson = nlohmann::ordered_json;

namespace {

constexpr int kExitHolds = 0;
constexpr int kExitRefuted = 1;
constexpr int kExitUsage = 2;

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw triv::Error(triv::ErrorKind::Schema, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int carrierCap() {
  const char* env = std::getenv("TRIV_MAX_CARRIER");
  if (!env) return 64;
  int cap = std::atoi(env);
  return cap > 0 ? cap : 64;
}

std::string valuationLine(const triv::Valuation& v) {
  std::string out;
  for (const auto& [name, val] : v) {
    if (!out.empty()) out += " ";
    out += name + "=" + triv::tvName(val);
  }
  return out;
}

OrderedJson valuationJson(const triv::Valuation& v) {
  OrderedJson j = OrderedJson::object();
  for (const auto& [name, val] : v) j[name] = triv::tvName(val);
  return j;
}

triv::CalculusId parseCalculusFlag(const std::string& name) {
  auto id = triv::calculusByName(name);
  if (!id)
    throw triv::Error(triv::ErrorKind::Schema,
                      "unknown calculus '" + name + "' (expected iH3, H3sup or QH3sup)");
  return *id;
}

struct CheckValidArgs {
  std::string formula;
  std::string calculus = "H3sup";
  std::vector<std::string> premises;
  int maxVars = 12;
  bool json = false;
};

int runCheck(const CheckValidArgs& args, bool consequenceMode) {
  triv::CalculusId calc = parseCalculusFlag(args.calculus);
  const triv::Signature& sig = triv::calculus(calc).sig;
  triv::FormulaPtr phi = triv::parseFormula(args.formula, sig);
  std::vector<triv::FormulaPtr> gamma;
  for (const auto& p : args.premises) gamma.push_back(triv::parseFormula(p, sig));

  triv::ValidityReport rep = consequenceMode ? triv::consequence(gamma, phi, args.maxVars)
                                             : triv::isValid(phi, args.maxVars);
  if (args.json) {
    OrderedJson j;
    j["command"] = consequenceMode ? "check consequence" : "check valid";
    j["calculus"] = triv::calculusName(calc);
    j["formula"] = triv::printFormula(phi);
    if (consequenceMode) {
      OrderedJson prem = OrderedJson::array();
      for (const auto& g : gamma) prem.push_back(triv::printFormula(g));
      j["premises"] = std::move(prem);
    }
    j["holds"] = rep.valid;
    j["valuationsScanned"] = rep.valuationsScanned;
    if (rep.countermodel) j["countermodel"] = valuationJson(*rep.countermodel);
    std::cout << j.dump(2) << "\n";
  } else if (rep.valid) {
    std::cout << (consequenceMode ? "consequence holds" : "valid") << " ("
              << rep.valuationsScanned << " valuations)\n";
  } else {
    std::cout << (consequenceMode ? "consequence fails" : "invalid") << "\ncountermodel: "
              << valuationLine(*rep.countermodel) << "\n";
  }
  return rep.valid ? kExitHolds : kExitRefuted;
}

int runProofCheck(const std::string& path, bool json) {
  triv::Derivation d = triv::parseDerivation(readFile(path));
  triv::CheckReport rep = triv::checkDerivation(d);
  if (json) {
    OrderedJson j;
    j["command"] = "proof check";
    j["calculus"] = triv::calculusName(d.calc);
    j["accepted"] = rep.ok;
    j["firstFailure"] = rep.firstFailure;
    OrderedJson lines = OrderedJson::array();
    for (std::size_t i = 0; i < rep.lines.size(); ++i) {
      OrderedJson lj;
      lj["line"] = i;
      lj["formula"] = triv::printFormula(d.lines[i].formula);
      lj["ok"] = rep.lines[i].ok;
      if (!rep.lines[i].matchedAxiom.empty()) lj["axiom"] = rep.lines[i].matchedAxiom;
      if (!rep.lines[i].ok) lj["reason"] = rep.lines[i].reason;
      lines.push_back(std::move(lj));
    }
    j["lines"] = std::move(lines);
    std::cout << j.dump(2) << "\n";
  } else {
    for (std::size_t i = 0; i < rep.lines.size(); ++i) {
      std::cout << i << ": " << (rep.lines[i].ok ? "ok" : "FAIL") << "  "
                << triv::printFormula(d.lines[i].formula);
      if (!rep.lines[i].matchedAxiom.empty()) std::cout << "  [" << rep.lines[i].matchedAxiom << "]";
      if (!rep.lines[i].ok) std::cout << "  (" << rep.lines[i].reason << ")";
      std::cout << "\n";
    }
    std::cout << (rep.ok ? "accepted" : "rejected") << "\n";
  }
  return rep.ok ? kExitHolds : kExitRefuted;
}

int runProofSearch(const CheckValidArgs& args, int depth, bool json) {
  triv::CalculusId calc = parseCalculusFlag(args.calculus);
  const triv::Signature& sig = triv::calculus(calc).sig;
  triv::FormulaPtr goal = triv::parseFormula(args.formula, sig);
  std::vector<triv::FormulaPtr> gamma;
  for (const auto& p : args.premises) gamma.push_back(triv::parseFormula(p, sig));

  triv::SearchResult res = triv::searchDerivation(goal, gamma, calc, depth);
  if (json) {
    OrderedJson j;
    j["command"] = "proof search";
    j["calculus"] = triv::calculusName(calc);
    j["goal"] = triv::printFormula(goal);
    j["found"] = res.found();
    j["facts"] = res.facts;
    j["truncated"] = res.truncated;
    if (res.found()) {
      j["depth"] = res.depth;
      j["derivation"] = OrderedJson::parse(triv::printDerivation(*res.derivation));
    }
    std::cout << j.dump(2) << "\n";
  } else if (res.found()) {
    std::cout << "found at depth " << res.depth << " (" << res.derivation->lines.size()
              << " lines, " << res.facts << " facts)\n";
    for (std::size_t i = 0; i < res.derivation->lines.size(); ++i) {
      const triv::DerivationLine& line = res.derivation->lines[i];
      std::cout << i << ": " << triv::printFormula(line.formula) << "  [";
      switch (line.just.kind) {
        case triv::Justification::Kind::Axiom: std::cout << line.just.axiomId; break;
        case triv::Justification::Kind::Premise: std::cout << "premise " << line.just.i; break;
        case triv::Justification::Kind::MP:
          std::cout << "mp " << line.just.i << "," << line.just.j;
          break;
        case triv::Justification::Kind::Nec: std::cout << "nec " << line.just.i; break;
        case triv::Justification::Kind::RAnd: std::cout << "rand " << line.just.i; break;
        case triv::Justification::Kind::R3:
          std::cout << "r3 " << line.just.i << " " << line.just.var;
          break;
        case triv::Justification::Kind::R4:
          std::cout << "r4 " << line.just.i << " " << line.just.var;
          break;
      }
      std::cout << "]\n";
    }
  } else {
    std::cout << "not found within depth " << depth << " (" << res.facts << " facts"
              << (res.truncated ? ", fact budget hit" : "") << ")\n";
  }
  return res.found() ? kExitHolds : kExitRefuted;
}

OrderedJson identityChecksJson(const std::vector<triv::IdentityCheck>& checks) {
  OrderedJson arr = OrderedJson::array();
  for (const auto& c : checks) {
    OrderedJson j;
    j["id"] = c.id;
    j["holds"] = c.holds;
    if (!c.holds) j["witness"] = c.witness;
    arr.push_back(std::move(j));
  }
  return arr;
}

int runAlgebraAnalyze(const std::string& path, bool json) {
  triv::FiniteAlgebra a = triv::parseAlgebra(readFile(path));
  int cap = carrierCap();
  if (a.n > cap)
    throw triv::Error(triv::ErrorKind::CarrierBudgetExceeded,
                      "carrier " + std::to_string(a.n) + " exceeds the analysis cap " +
                          std::to_string(cap) + " (raise TRIV_MAX_CARRIER to override)");

  triv::VerificationReport ver = triv::verifyVariety(a);
  OrderedJson out;
  out["command"] = "algebra analyze";
  out["carrier"] = a.n;
  out["signature"] = a.sig == triv::SigKind::Inf ? "inf" : "sup";
  out["one"] = a.one;
  out["verified"] = ver.ok;
  out["identities"] = identityChecksJson(ver.checks);

  std::vector<triv::IdentityCheck> props =
      a.sig == triv::SigKind::Inf ? triv::lemmaProperties(a) : triv::supProperties(a);
  std::vector<triv::IdentityCheck> wi = triv::weakImpProperties(a);
  props.insert(props.end(), wi.begin(), wi.end());
  out["properties"] = identityChecksJson(props);
  bool propsOk = true;
  for (const auto& p : props) propsOk = propsOk && p.holds;

  bool happy = ver.ok;
  if (ver.ok) {
    std::vector<triv::DeductiveSystem> modal =
        triv::allDeductiveSystems(a, triv::DsKind::Modal, cap);
    std::vector<triv::Congruence> congs = triv::allCongruences(a, cap);
    OrderedJson ds = OrderedJson::array();
    for (const auto& d : modal) ds.push_back(d.elements());
    out["modalDeductiveSystems"] = std::move(ds);
    OrderedJson cj = OrderedJson::array();
    for (const auto& c : congs) cj.push_back(c.cls);
    out["congruences"] = std::move(cj);
    out["dsConCountsAgree"] = modal.size() == congs.size();

    OrderedJson maxims = OrderedJson::array();
    for (const auto& m : triv::maximalModalDS(a)) {
      OrderedJson mj;
      mj["elements"] = m.elements();
      mj["tiedTo"] = *m.tiedTo;
      maxims.push_back(std::move(mj));
    }
    out["maximalModalDS"] = std::move(maxims);

    if (a.n >= 2) {
      triv::SemisimpleDecomposition ss = triv::semisimpleDecomposition(a);
      OrderedJson sj;
      sj["injective"] = ss.injective;
      sj["intersectionIsOne"] = ss.intersectionIsOne;
      OrderedJson factors = OrderedJson::array();
      for (const auto& f : ss.factors) {
        OrderedJson fj;
        fj["carrier"] = f.n;
        if (triv::findIsomorphism(f, triv::c2(a.sig))) fj["isoTo"] = "C2";
        else if (triv::findIsomorphism(f, triv::c3(a.sig))) fj["isoTo"] = "C3";
        else fj["isoTo"] = "other";
        factors.push_back(std::move(fj));
      }
      sj["factors"] = std::move(factors);
      out["semisimple"] = std::move(sj);
    }
    out["simple"] = triv::isSimple(a);
  }

  if (json) {
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "carrier " << a.n << ", signature "
              << (a.sig == triv::SigKind::Inf ? "inf" : "sup") << ", one = " << a.one << "\n";
    std::cout << "identities: " << (ver.ok ? "all hold" : "FAILURES") << "\n";
    if (!ver.ok)
      for (const auto& c : ver.checks)
        if (!c.holds) {
          std::cout << "  " << c.id << " fails at (";
          for (std::size_t i = 0; i < c.witness.size(); ++i)
            std::cout << (i ? "," : "") << c.witness[i];
          std::cout << ")\n";
        }
    std::cout << "properties: " << (propsOk ? "all hold" : "FAILURES") << "\n";
    if (ver.ok) {
      std::cout << "modal deductive systems: " << out["modalDeductiveSystems"].size()
                << ", congruences: " << out["congruences"].size() << " (counts "
                << (out["dsConCountsAgree"].get<bool>() ? "agree" : "DISAGREE") << ")\n";
      std::cout << "maximal modal systems: " << out["maximalModalDS"].size() << "\n";
      if (out.contains("semisimple"))
        std::cout << "semisimple embedding: "
                  << (out["semisimple"]["injective"].get<bool>() ? "injective" : "NOT injective")
                  << "\n";
      std::cout << "simple: " << (out["simple"].get<bool>() ? "yes" : "no") << "\n";
    }
  }
  happy = happy && propsOk;
  return happy ? kExitHolds : kExitRefuted;
}

int runAlgebraFree(int gens, const std::string& sigName, bool json) {
  triv::SigKind sig;
  if (sigName == "inf") sig = triv::SigKind::Inf;
  else if (sigName == "sup") sig = triv::SigKind::Sup;
  else throw triv::Error(triv::ErrorKind::Schema, "--sig must be inf or sup");

  triv::FreeAlgebra free = triv::freeAlgebra(gens, sig);
  if (json) {
    OrderedJson j;
    j["command"] = "algebra free";
    j["generators"] = free.generators;
    j["carrier"] = free.algebra.n;
    j["one"] = free.algebra.one;
    if (free.algebra.n <= 64)
      j["algebra"] = OrderedJson::parse(triv::printAlgebra(free.algebra));
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "free algebra on " << gens << " generator(s), signature " << sigName
              << ": carrier " << free.algebra.n << ", one = " << free.algebra.one
              << ", generators at ";
    if (free.generators.empty()) std::cout << "-";
    for (std::size_t i = 0; i < free.generators.size(); ++i)
      std::cout << (i ? "," : "") << free.generators[i];
    std::cout << "\n";
  }
  return kExitHolds;
}

int runFolEval(const std::string& formulaText, const std::string& structurePath, bool json) {
  triv::Structure s = triv::parseStructure(readFile(structurePath));
  triv::Signature sig{triv::SigKind::Sup, true};
  triv::FormulaPtr phi = triv::parseFormula(formulaText, sig, &s.theta);
  triv::TruthReport rep = triv::isTrue(s, phi);

  if (json) {
    OrderedJson j;
    j["command"] = "fol eval";
    j["formula"] = triv::printFormula(phi);
    j["true"] = rep.holds;
    j["assignmentsScanned"] = rep.assignmentsScanned;
    if (rep.witness) {
      OrderedJson w = OrderedJson::object();
      for (const auto& [var, d] : *rep.witness) w[var] = s.domain[d];
      j["witness"] = std::move(w);
      triv::Assignment v = *rep.witness;
      j["valueAtWitness"] = triv::evalFormula(s, v, phi);
    }
    std::cout << j.dump(2) << "\n";
  } else if (rep.holds) {
    std::cout << "true (designated under all " << rep.assignmentsScanned << " assignments)\n";
  } else {
    std::cout << "not true\n";
    triv::Assignment v = *rep.witness;
    std::cout << "witness assignment:";
    if (v.empty()) std::cout << " (sentence)";
    for (const auto& [var, d] : v) std::cout << " " << var << "=" << s.domain[d];
    std::cout << "\nvalue there: element " << triv::evalFormula(s, v, phi)
              << " (designated element is " << s.algebra.one << ")\n";
  }
  return rep.holds ? kExitHolds : kExitRefuted;
}

int runFolAudit(const std::vector<std::string>& structurePaths, const std::string& algebraPath,
                bool json) {
  std::vector<triv::Structure> corpus;
  for (const auto& p : structurePaths) corpus.push_back(triv::parseStructure(readFile(p)));
  if (corpus.empty()) corpus = triv::defaultStructureCorpus();

  triv::FiniteAlgebra deltaAlg =
      algebraPath.empty() ? triv::c3(triv::SigKind::Sup) : triv::parseAlgebra(readFile(algebraPath));
  triv::DeltaAudit delta = triv::auditDeltaDistribution(deltaAlg);
  triv::FolAxiomAudit axioms = triv::auditFirstOrderAxioms(corpus);
  bool ok = delta.ok && axioms.ok;

  if (json) {
    OrderedJson j;
    j["command"] = "fol audit";
    j["structures"] = corpus.size();
    OrderedJson dj;
    dj["ok"] = delta.ok;
    dj["joinsChecked"] = delta.joinsChecked;
    dj["meetsChecked"] = delta.meetsChecked;
    dj["violations"] = delta.violations;
    j["deltaDistribution"] = std::move(dj);
    OrderedJson aj;
    aj["ok"] = axioms.ok;
    aj["axiomInstances"] = axioms.axiomInstances;
    aj["ruleInstances"] = axioms.ruleInstances;
    aj["nonVacuousRules"] = axioms.nonVacuousRules;
    aj["violations"] = axioms.violations;
    j["quantifierAxioms"] = std::move(aj);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "delta distribution: " << (delta.ok ? "ok" : "VIOLATIONS") << " ("
              << delta.joinsChecked << " joins, " << delta.meetsChecked << " meets)\n";
    std::cout << "quantifier axioms: " << (axioms.ok ? "ok" : "VIOLATIONS") << " ("
              << axioms.axiomInstances << " instances, " << axioms.ruleInstances
              << " rule instances, " << axioms.nonVacuousRules << " non-vacuous)\n";
    for (const auto& v : delta.violations) std::cout << "  " << v << "\n";
    for (const auto& v : axioms.violations) std::cout << "  " << v << "\n";
  }
  return ok ? kExitHolds : kExitRefuted;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for the trivalent modal Hilbert logics"};
  app.require_subcommand(1);

  // check
  CLI::App* check = app.add_subcommand("check", "matrix semantics over the 3-element chain");
  check->require_subcommand(1);
  CheckValidArgs validArgs;
  CLI::App* checkValid = check->add_subcommand("valid", "decide validity");
  checkValid->add_option("formula", validArgs.formula, "formula text")->required();
  checkValid->add_option("--calculus", validArgs.calculus, "iH3 | H3sup | QH3sup");
  checkValid->add_option("--max-vars", validArgs.maxVars, "variable cap for the scan");
  checkValid->add_flag("--json", validArgs.json, "JSON output");

  CheckValidArgs consArgs;
  CLI::App* checkCons = check->add_subcommand("consequence", "decide semantic consequence");
  checkCons->add_option("formula", consArgs.formula, "conclusion")->required();
  checkCons->add_option("--premise", consArgs.premises, "premise (repeatable)");
  checkCons->add_option("--calculus", consArgs.calculus, "iH3 | H3sup | QH3sup");
  checkCons->add_option("--max-vars", consArgs.maxVars, "variable cap for the scan");
  checkCons->add_flag("--json", consArgs.json, "JSON output");

  // proof
  CLI::App* proof = app.add_subcommand("proof", "Hilbert-style derivations");
  proof->require_subcommand(1);
  std::string proofFile;
  bool proofJson = false;
  CLI::App* proofCheck = proof->add_subcommand("check", "check a derivation file");
  proofCheck->add_option("file", proofFile, "derivation JSON")->required();
  proofCheck->add_flag("--json", proofJson, "JSON output");

  CheckValidArgs searchArgs;
  searchArgs.calculus = "H3sup";
  int searchDepth = 8;
  bool searchJson = false;
  CLI::App* proofSearch = proof->add_subcommand("search", "bounded proof search");
  proofSearch->add_option("formula", searchArgs.formula, "goal")->required();
  proofSearch->add_option("--premise", searchArgs.premises, "premise (repeatable)");
  proofSearch->add_option("--calculus", searchArgs.calculus, "iH3 | H3sup");
  proofSearch->add_option("--depth", searchDepth, "depth budget");
  proofSearch->add_flag("--json", searchJson, "JSON output");

  // algebra
  CLI::App* algebra = app.add_subcommand("algebra", "finite-algebra analysis");
  algebra->require_subcommand(1);
  std::string algebraFile;
  bool analyzeJson = false;
  CLI::App* analyze = algebra->add_subcommand("analyze", "verify and analyze an algebra file");
  analyze->add_option("file", algebraFile, "algebra JSON")->required();
  analyze->add_flag("--json", analyzeJson, "JSON output");

  int freeGens = 1;
  std::string freeSig = "inf";
  bool freeJson = false;
  CLI::App* freeCmd = algebra->add_subcommand("free", "free algebra on n generators");
  freeCmd->add_option("generators", freeGens, "number of generators (<= 2)")->required();
  freeCmd->add_option("--sig", freeSig, "inf | sup");
  freeCmd->add_flag("--json", freeJson, "JSON output");

  // fol
  CLI::App* fol = app.add_subcommand("fol", "first-order semantics over finite structures");
  fol->require_subcommand(1);
  std::string evalFormula, evalStructure;
  bool evalJson = false;
  CLI::App* folEval = fol->add_subcommand("eval", "evaluate a formula in a structure");
  folEval->add_option("formula", evalFormula, "formula text")->required();
  folEval->add_option("--structure", evalStructure, "structure JSON")->required();
  folEval->add_flag("--json", evalJson, "JSON output");

  std::vector<std::string> auditStructures;
  std::string auditAlgebra;
  bool auditJson = false;
  CLI::App* folAudit = fol->add_subcommand("audit", "quantifier-axiom and # distribution audits");
  folAudit->add_option("--structure", auditStructures, "structure JSON (repeatable)");
  folAudit->add_option("--algebra", auditAlgebra, "algebra JSON for the # distribution audit");
  folAudit->add_flag("--json", auditJson, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (checkValid->parsed()) return runCheck(validArgs, false);
    if (checkCons->parsed()) return runCheck(consArgs, true);
    if (proofCheck->parsed()) return runProofCheck(proofFile, proofJson);
    if (proofSearch->parsed()) return runProofSearch(searchArgs, searchDepth, searchJson);
    if (analyze->parsed()) return runAlgebraAnalyze(algebraFile, analyzeJson);
    if (freeCmd->parsed()) return runAlgebraFree(freeGens, freeSig, freeJson);
    if (folEval->parsed()) return runFolEval(evalFormula, evalStructure, evalJson);
    if (folAudit->parsed()) return runFolAudit(auditStructures, auditAlgebra, auditJson);
  } catch (const triv::Error& e) {
    std::cerr << triv::errorKindName(e.kind()) << ": " << e.what();
    if (e.span()) std::cerr << " (line " << e.span()->line << ", column " << e.span()->column << ")";
    std::cerr << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
