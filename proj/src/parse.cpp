#include "triv/parse.hpp"

#include <cctype>
#include <json.hpp>

#include "triv/error.hpp"

namespace triv {

namespace {

enum class Tok { LParen, RParen, Arrow, And, Or, Nec, Nabla, Forall, Exists, Dot, Comma, Ident, End };

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

class Lexer {
public:
  explicit Lexer(const std::string& text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

private:
  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token current_;

  bool startsWith(const char* s) const {
    return text_.compare(pos_, std::char_traits<char>::length(s), s) == 0;
  }

  void bump(std::size_t bytes) {
    for (std::size_t i = 0; i < bytes && pos_ < text_.size(); ++i, ++pos_) {
      if (text_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else if ((text_[pos_] & 0xC0) != 0x80) {
        ++col_;
      }
    }
  }

  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) bump(1);
    SourceSpan span{pos_, pos_, line_, col_};
    auto emit = [&](Tok kind, std::size_t bytes, std::string lexeme) {
      bump(bytes);
      span.end = pos_;
      current_ = Token{kind, std::move(lexeme), span};
    };
    if (pos_ >= text_.size()) return emit(Tok::End, 0, "");

    if (startsWith("->")) return emit(Tok::Arrow, 2, "->");
    if (startsWith("\xE2\x86\x92")) return emit(Tok::Arrow, 3, "->");
    if (startsWith("/\\")) return emit(Tok::And, 2, "/\\");
    if (startsWith("\xE2\x88\xA7")) return emit(Tok::And, 3, "/\\");
    if (startsWith("\\/")) return emit(Tok::Or, 2, "\\/");
    if (startsWith("\xE2\x88\xA8")) return emit(Tok::Or, 3, "\\/");
    if (startsWith("#")) return emit(Tok::Nec, 1, "#");
    if (startsWith("\xE2\x96\xB3")) return emit(Tok::Nec, 3, "#");
    if (startsWith("\xE2\x88\x87")) return emit(Tok::Nabla, 3, "nabla");
    if (startsWith("(")) return emit(Tok::LParen, 1, "(");
    if (startsWith(")")) return emit(Tok::RParen, 1, ")");
    if (startsWith(".")) return emit(Tok::Dot, 1, ".");
    if (startsWith(",")) return emit(Tok::Comma, 1, ",");

    char c = text_[pos_];
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_;
      while (end < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
        ++end;
      std::string word = text_.substr(pos_, end - pos_);
      if (word == "nabla") return emit(Tok::Nabla, word.size(), word);
      if (word == "forall") return emit(Tok::Forall, word.size(), word);
      if (word == "exists") return emit(Tok::Exists, word.size(), word);
      return emit(Tok::Ident, word.size(), word);
    }
    throw Error(ErrorKind::Syntax, std::string("unexpected character '") + c + "'", span);
  }
};

class FormulaParser {
public:
  FormulaParser(const std::string& text, const ThetaSignature* theta)
      : lex_(text), theta_(theta) {}

  FormulaPtr parse() {
    FormulaPtr f = quantified();
    expect(Tok::End, "end of input");
    return f;
  }

private:
  Lexer lex_;
  const ThetaSignature* theta_;

  [[noreturn]] void unexpected(const Token& t, const std::string& wanted) {
    throw Error(ErrorKind::Syntax,
                "expected " + wanted + " but found '" + (t.kind == Tok::End ? "end" : t.text) + "'",
                t.span);
  }

  Token expect(Tok kind, const std::string& wanted) {
    if (lex_.peek().kind != kind) unexpected(lex_.peek(), wanted);
    return lex_.take();
  }

  FormulaPtr quantified() {
    Tok k = lex_.peek().kind;
    if (k == Tok::Forall || k == Tok::Exists) {
      lex_.take();
      Token var = expect(Tok::Ident, "a variable name");
      expect(Tok::Dot, "'.'");
      FormulaPtr body = quantified();
      return k == Tok::Forall ? mkForall(var.text, std::move(body))
                              : mkExists(var.text, std::move(body));
    }
    return implication();
  }

  FormulaPtr implication() {
    FormulaPtr lhs = junction();
    if (lex_.peek().kind == Tok::Arrow) {
      lex_.take();
      return mkImp(std::move(lhs), quantified());
    }
    return lhs;
  }

  FormulaPtr junction() {
    FormulaPtr acc = unary();
    while (lex_.peek().kind == Tok::And || lex_.peek().kind == Tok::Or) {
      bool isAnd = lex_.take().kind == Tok::And;
      FormulaPtr rhs = unary();
      acc = isAnd ? mkAnd(std::move(acc), std::move(rhs)) : mkOr(std::move(acc), std::move(rhs));
    }
    return acc;
  }

  FormulaPtr unary() {
    if (lex_.peek().kind == Tok::Nec) {
      lex_.take();
      return mkNec(unary());
    }
    if (lex_.peek().kind == Tok::Nabla) {
      lex_.take();
      return nabla(unary());
    }
    return atom();
  }

  FormulaPtr atom() {
    const Token& t = lex_.peek();
    if (t.kind == Tok::LParen) {
      lex_.take();
      FormulaPtr f = quantified();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (t.kind != Tok::Ident) unexpected(t, "a formula");
    Token name = lex_.take();
    if (lex_.peek().kind != Tok::LParen) return mkVar(name.text);
    lex_.take();
    std::vector<TermPtr> args;
    if (lex_.peek().kind != Tok::RParen) {
      args.push_back(term());
      while (lex_.peek().kind == Tok::Comma) {
        lex_.take();
        args.push_back(term());
      }
    }
    expect(Tok::RParen, "')'");
    if (theta_) {
      auto it = theta_->preds.find(name.text);
      if (it == theta_->preds.end())
        throw Error(ErrorKind::Schema, "predicate '" + name.text + "' is not declared",
                    name.span);
      if (it->second != static_cast<int>(args.size()))
        throw Error(ErrorKind::Arity,
                    "predicate '" + name.text + "' expects " + std::to_string(it->second) +
                        " arguments",
                    name.span);
    }
    return mkPred(name.text, std::move(args));
  }

  TermPtr term() {
    Token name = expect(Tok::Ident, "a term");
    if (lex_.peek().kind == Tok::LParen) {
      lex_.take();
      std::vector<TermPtr> args;
      if (lex_.peek().kind != Tok::RParen) {
        args.push_back(term());
        while (lex_.peek().kind == Tok::Comma) {
          lex_.take();
          args.push_back(term());
        }
      }
      expect(Tok::RParen, "')'");
      if (theta_) {
        auto it = theta_->funcs.find(name.text);
        if (it == theta_->funcs.end())
          throw Error(ErrorKind::Schema, "function '" + name.text + "' is not declared",
                      name.span);
        if (it->second != static_cast<int>(args.size()))
          throw Error(ErrorKind::Arity,
                      "function '" + name.text + "' expects " + std::to_string(it->second) +
                          " arguments",
                      name.span);
      }
      return mkFunc(name.text, std::move(args));
    }
    if (theta_ && theta_->knowsConst(name.text)) return mkConst(name.text);
    return mkTermVar(name.text);
  }
};

} // namespace

FormulaPtr parseFormula(const std::string& text, const Signature& sig,
                        const ThetaSignature* theta) {
  FormulaParser parser(text, theta);
  return definedConnectives(parser.parse(), sig);
}

namespace {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

Json parseJsonText(const std::string& text, const char* what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t at = e.byte > text.size() ? text.size() : e.byte;
    SourceSpan span{at > 0 ? at - 1 : 0, at, 1, 1};
    for (std::size_t i = 0; i < span.start; ++i) {
      if (text[i] == '\n') {
        ++span.line;
        span.column = 1;
      } else {
        ++span.column;
      }
    }
    throw Error(ErrorKind::Syntax, std::string(what) + ": " + e.what(), span);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::Syntax, std::string(what) + ": " + e.what());
  }
}

int requireInt(const Json& j, const std::string& field) {
  if (!j.contains(field) || !j[field].is_number_integer())
    throw Error(ErrorKind::Schema, "missing or non-integer field '" + field + "'");
  return j[field].get<int>();
}

std::vector<std::uint16_t> readSquareTable(const Json& j, const std::string& field, int n) {
  if (!j.contains(field) || !j[field].is_array() || static_cast<int>(j[field].size()) != n)
    throw Error(ErrorKind::Schema, "field '" + field + "' must be a " + std::to_string(n) + "x" +
                                       std::to_string(n) + " table");
  std::vector<std::uint16_t> out;
  out.reserve(static_cast<std::size_t>(n) * n);
  for (int r = 0; r < n; ++r) {
    const Json& row = j[field][r];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw Error(ErrorKind::Schema, "field '" + field + "' row " + std::to_string(r) +
                                         " must have " + std::to_string(n) + " entries");
    for (int c = 0; c < n; ++c) {
      if (!row[c].is_number_integer())
        throw Error(ErrorKind::Schema, "field '" + field + "' has a non-integer entry");
      int v = row[c].get<int>();
      if (v < 0 || v >= n)
        throw Error(ErrorKind::Domain, "table '" + field + "' entry " + std::to_string(v) +
                                           " lies outside the carrier 0.." + std::to_string(n - 1));
      out.push_back(static_cast<std::uint16_t>(v));
    }
  }
  return out;
}

FiniteAlgebra algebraFromJson(const Json& j) {
  FiniteAlgebra a;
  int n = requireInt(j, "carrier");
  if (n <= 0) throw Error(ErrorKind::Schema, "field 'carrier' must be positive");
  if (n > 10000) throw Error(ErrorKind::CarrierBudgetExceeded, "carrier above 10000");
  a.n = n;
  a.one = requireInt(j, "one");
  if (a.one < 0 || a.one >= n)
    throw Error(ErrorKind::Domain, "field 'one' lies outside the carrier");
  bool hasMeet = j.contains("meet"), hasJoin = j.contains("join");
  if (hasMeet == hasJoin)
    throw Error(ErrorKind::Schema, "exactly one of 'meet' or 'join' is required");
  a.sig = hasMeet ? SigKind::Inf : SigKind::Sup;
  a.imp = readSquareTable(j, "imp", n);
  a.lat = readSquareTable(j, hasMeet ? "meet" : "join", n);

  if (!j.contains("nec") || !j["nec"].is_array() || static_cast<int>(j["nec"].size()) != n)
    throw Error(ErrorKind::Schema, "field 'nec' must list " + std::to_string(n) + " values");
  for (int i = 0; i < n; ++i) {
    if (!j["nec"][i].is_number_integer())
      throw Error(ErrorKind::Schema, "field 'nec' has a non-integer entry");
    int v = j["nec"][i].get<int>();
    if (v < 0 || v >= n)
      throw Error(ErrorKind::Domain, "table 'nec' entry " + std::to_string(v) +
                                         " lies outside the carrier 0.." + std::to_string(n - 1));
    a.nec.push_back(static_cast<std::uint16_t>(v));
  }
  return a;
}

OrderedJson algebraToJson(const FiniteAlgebra& a) {
  OrderedJson j;
  j["carrier"] = a.n;
  j["one"] = a.one;
  auto table = [&](const std::vector<std::uint16_t>& t) {
    OrderedJson rows = OrderedJson::array();
    for (int r = 0; r < a.n; ++r) {
      OrderedJson row = OrderedJson::array();
      for (int c = 0; c < a.n; ++c) row.push_back(t[static_cast<std::size_t>(r) * a.n + c]);
      rows.push_back(std::move(row));
    }
    return rows;
  };
  j["imp"] = table(a.imp);
  j[a.sig == SigKind::Inf ? "meet" : "join"] = table(a.lat);
  j["nec"] = a.nec;
  return j;
}

ThetaSignature thetaFromJson(const Json& j) {
  ThetaSignature theta;
  if (j.contains("consts")) {
    for (const auto& c : j["consts"]) theta.consts.insert(c.get<std::string>());
  }
  if (j.contains("funcs")) {
    for (auto it = j["funcs"].begin(); it != j["funcs"].end(); ++it)
      theta.funcs[it.key()] = it.value().get<int>();
  }
  if (j.contains("preds")) {
    for (auto it = j["preds"].begin(); it != j["preds"].end(); ++it)
      theta.preds[it.key()] = it.value().get<int>();
  }
  for (const auto& [f, arity] : theta.funcs)
    if (arity < 1) throw Error(ErrorKind::Arity, "function '" + f + "' must have arity >= 1");
  for (const auto& [p, arity] : theta.preds)
    if (arity < 1) throw Error(ErrorKind::Arity, "predicate '" + p + "' must have arity >= 1");
  return theta;
}

} // namespace

FiniteAlgebra parseAlgebra(const std::string& jsonText) {
  return algebraFromJson(parseJsonText(jsonText, "algebra file"));
}

std::string printAlgebra(const FiniteAlgebra& a) { return algebraToJson(a).dump(2); }

Derivation parseDerivation(const std::string& jsonText) {
  Json j = parseJsonText(jsonText, "derivation file");
  Derivation d;
  if (!j.contains("calculus") || !j["calculus"].is_string())
    throw Error(ErrorKind::Schema, "missing field 'calculus'");
  auto calc = calculusByName(j["calculus"].get<std::string>());
  if (!calc)
    throw Error(ErrorKind::Schema, "unknown calculus '" + j["calculus"].get<std::string>() + "'");
  d.calc = *calc;
  const Signature& sig = calculus(d.calc).sig;

  ThetaSignature theta;
  bool hasTheta = j.contains("theta");
  if (hasTheta) theta = thetaFromJson(j["theta"]);
  const ThetaSignature* thetaPtr = hasTheta ? &theta : nullptr;

  if (j.contains("premises")) {
    if (!j["premises"].is_array())
      throw Error(ErrorKind::Schema, "field 'premises' must be an array");
    for (const auto& p : j["premises"])
      d.premises.push_back(parseFormula(p.get<std::string>(), sig, thetaPtr));
  }

  if (!j.contains("lines") || !j["lines"].is_array())
    throw Error(ErrorKind::Schema, "missing field 'lines'");
  int k = 0;
  for (const auto& lj : j["lines"]) {
    if (!lj.contains("formula") || !lj.contains("just"))
      throw Error(ErrorKind::Schema,
                  "line " + std::to_string(k) + " needs 'formula' and 'just'");
    DerivationLine line;
    line.formula = parseFormula(lj["formula"].get<std::string>(), sig, thetaPtr);
    const Json& just = lj["just"];
    if (!just.contains("kind") || !just["kind"].is_string())
      throw Error(ErrorKind::Schema, "line " + std::to_string(k) + ": missing 'just.kind'");
    std::string kind = just["kind"].get<std::string>();
    if (kind == "axiom") {
      line.just.kind = Justification::Kind::Axiom;
      if (just.contains("id")) line.just.axiomId = just["id"].get<std::string>();
    } else if (kind == "premise") {
      line.just.kind = Justification::Kind::Premise;
      line.just.i = requireInt(just, "index");
    } else if (kind == "mp") {
      line.just.kind = Justification::Kind::MP;
      line.just.i = requireInt(just, "i");
      line.just.j = requireInt(just, "j");
    } else if (kind == "nec") {
      line.just.kind = Justification::Kind::Nec;
      line.just.i = requireInt(just, "i");
    } else if (kind == "rand") {
      line.just.kind = Justification::Kind::RAnd;
      line.just.i = requireInt(just, "i");
    } else if (kind == "r3" || kind == "r4") {
      line.just.kind = kind == "r3" ? Justification::Kind::R3 : Justification::Kind::R4;
      line.just.i = requireInt(just, "i");
      if (!just.contains("var") || !just["var"].is_string())
        throw Error(ErrorKind::Schema, "line " + std::to_string(k) + ": missing 'just.var'");
      line.just.var = just["var"].get<std::string>();
    } else {
      throw Error(ErrorKind::Schema,
                  "line " + std::to_string(k) + ": unknown justification kind '" + kind + "'");
    }
    d.lines.push_back(std::move(line));
    ++k;
  }
  return d;
}

std::string printDerivation(const Derivation& d) {
  OrderedJson j;
  j["calculus"] = calculusName(d.calc);
  OrderedJson prem = OrderedJson::array();
  for (const auto& p : d.premises) prem.push_back(printFormula(p));
  j["premises"] = std::move(prem);
  OrderedJson lines = OrderedJson::array();
  for (const auto& line : d.lines) {
    OrderedJson lj;
    lj["formula"] = printFormula(line.formula);
    OrderedJson just;
    switch (line.just.kind) {
      case Justification::Kind::Axiom:
        just["kind"] = "axiom";
        if (!line.just.axiomId.empty()) just["id"] = line.just.axiomId;
        break;
      case Justification::Kind::Premise:
        just["kind"] = "premise";
        just["index"] = line.just.i;
        break;
      case Justification::Kind::MP:
        just["kind"] = "mp";
        just["i"] = line.just.i;
        just["j"] = line.just.j;
        break;
      case Justification::Kind::Nec:
        just["kind"] = "nec";
        just["i"] = line.just.i;
        break;
      case Justification::Kind::RAnd:
        just["kind"] = "rand";
        just["i"] = line.just.i;
        break;
      case Justification::Kind::R3:
      case Justification::Kind::R4:
        just["kind"] = line.just.kind == Justification::Kind::R3 ? "r3" : "r4";
        just["i"] = line.just.i;
        just["var"] = line.just.var;
        break;
    }
    lj["just"] = std::move(just);
    lines.push_back(std::move(lj));
  }
  j["lines"] = std::move(lines);
  return j.dump(2);
}

namespace {

std::vector<std::string> parseTupleKey(const std::string& key) {
  if (key.size() < 2 || key.front() != '(' || key.back() != ')')
    throw Error(ErrorKind::Schema, "table key '" + key + "' must look like (a,b)");
  std::vector<std::string> parts;
  std::string cur;
  for (std::size_t i = 1; i + 1 < key.size(); ++i) {
    if (key[i] == ',') {
      parts.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(key[i]))) {
      cur += key[i];
    }
  }
  parts.push_back(cur);
  return parts;
}

} // namespace

Structure parseStructure(const std::string& jsonText) {
  Json j = parseJsonText(jsonText, "structure file");
  Structure s;
  if (!j.contains("algebra"))
    throw Error(ErrorKind::Schema, "missing field 'algebra'");
  s.algebra = algebraFromJson(j["algebra"]);
  if (s.algebra.sig != SigKind::Sup)
    throw Error(ErrorKind::Signature, "structure algebras carry a join table");
  VerificationReport rep = verifyVariety(s.algebra);
  if (!rep.ok) {
    for (const auto& c : rep.checks)
      if (!c.holds)
        throw Error(ErrorKind::Schema, "structure algebra fails identity " + c.id);
  }

  if (!j.contains("domain") || !j["domain"].is_array() || j["domain"].empty())
    throw Error(ErrorKind::Schema, "field 'domain' must be a non-empty array");
  std::map<std::string, int> domainIndex;
  for (const auto& e : j["domain"]) {
    std::string name = e.get<std::string>();
    if (!domainIndex.emplace(name, static_cast<int>(s.domain.size())).second)
      throw Error(ErrorKind::Schema, "duplicate domain element '" + name + "'");
    s.domain.push_back(std::move(name));
  }
  auto lookupDomain = [&](const std::string& name, const std::string& where) {
    auto it = domainIndex.find(name);
    if (it == domainIndex.end())
      throw Error(ErrorKind::Domain, where + ": '" + name + "' is not a domain element");
    return it->second;
  };

  if (j.contains("consts")) {
    for (auto it = j["consts"].begin(); it != j["consts"].end(); ++it) {
      s.theta.consts.insert(it.key());
      s.constInterp[it.key()] = lookupDomain(it.value().get<std::string>(), "consts." + it.key());
    }
  }

  int n = s.domainSize();
  auto readTable = [&](const Json& tbl, const std::string& name, bool domainValued) {
    if (!tbl.is_object() || tbl.empty())
      throw Error(ErrorKind::Schema, "table '" + name + "' must be a non-empty object");
    int arity = static_cast<int>(parseTupleKey(tbl.begin().key()).size());
    long long need = 1;
    for (int i = 0; i < arity; ++i) need *= n;
    std::vector<int> table(static_cast<std::size_t>(need), -1);
    for (auto it = tbl.begin(); it != tbl.end(); ++it) {
      std::vector<std::string> parts = parseTupleKey(it.key());
      if (static_cast<int>(parts.size()) != arity)
        throw Error(ErrorKind::Arity, "table '" + name + "' mixes arities");
      int idx = 0;
      for (const auto& p : parts) idx = idx * n + lookupDomain(p, name + " key");
      int value;
      if (domainValued) {
        value = lookupDomain(it.value().get<std::string>(), name + " value");
      } else {
        if (!it.value().is_number_integer())
          throw Error(ErrorKind::Schema, "table '" + name + "' needs integer truth values");
        value = it.value().get<int>();
        if (value < 0 || value >= s.algebra.n)
          throw Error(ErrorKind::Domain, "table '" + name + "' value " + std::to_string(value) +
                                             " lies outside the algebra carrier");
      }
      table[idx] = value;
    }
    for (long long i = 0; i < need; ++i)
      if (table[i] < 0)
        throw Error(ErrorKind::Schema, "table '" + name + "' is missing entries (" +
                                           std::to_string(need - std::count(table.begin(),
                                                                            table.end(), -1)) +
                                           " of " + std::to_string(need) + " given)");
    return std::pair<int, std::vector<int>>(arity, std::move(table));
  };

  if (j.contains("funcs")) {
    for (auto it = j["funcs"].begin(); it != j["funcs"].end(); ++it) {
      auto [arity, table] = readTable(it.value(), "funcs." + it.key(), true);
      s.theta.funcs[it.key()] = arity;
      s.funcInterp[it.key()] = std::move(table);
    }
  }
  if (j.contains("preds")) {
    for (auto it = j["preds"].begin(); it != j["preds"].end(); ++it) {
      auto [arity, table] = readTable(it.value(), "preds." + it.key(), false);
      s.theta.preds[it.key()] = arity;
      s.predInterp[it.key()] = std::move(table);
    }
  }
  return s;
}

std::string printStructure(const Structure& s) {
  OrderedJson j;
  j["algebra"] = algebraToJson(s.algebra);
  j["domain"] = s.domain;
  OrderedJson consts = OrderedJson::object();
  for (const auto& [name, idx] : s.constInterp) consts[name] = s.domain[idx];
  j["consts"] = std::move(consts);

  auto tupleKeys = [&](int arity) {
    std::vector<std::vector<int>> keys;
    std::vector<int> digits(arity, 0);
    int n = s.domainSize();
    while (true) {
      keys.push_back(digits);
      int i = arity - 1;
      while (i >= 0 && digits[i] == n - 1) digits[i--] = 0;
      if (i < 0) break;
      ++digits[i];
    }
    return keys;
  };
  auto keyName = [&](const std::vector<int>& key) {
    std::string out = "(";
    for (std::size_t i = 0; i < key.size(); ++i) {
      if (i) out += ",";
      out += s.domain[key[i]];
    }
    return out + ")";
  };

  OrderedJson funcs = OrderedJson::object();
  for (const auto& [name, table] : s.funcInterp) {
    OrderedJson t = OrderedJson::object();
    int idx = 0;
    for (const auto& key : tupleKeys(s.theta.funcs.at(name))) t[keyName(key)] = s.domain[table[idx++]];
    funcs[name] = std::move(t);
  }
  j["funcs"] = std::move(funcs);

  OrderedJson preds = OrderedJson::object();
  for (const auto& [name, table] : s.predInterp) {
    OrderedJson t = OrderedJson::object();
    int idx = 0;
    for (const auto& key : tupleKeys(s.theta.preds.at(name))) t[keyName(key)] = table[idx++];
    preds[name] = std::move(t);
  }
  j["preds"] = std::move(preds);
  return j.dump(2);
}

} // namespace triv
