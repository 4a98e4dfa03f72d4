#ifndef TRIV_MATRIX_HPP
#define TRIV_MATRIX_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "triv/formula.hpp"
#include "triv/truth.hpp"

namespace triv {

using Valuation = std::map<std::string, Tv>;

// Table evaluation over the designated matrix <C3,{1}>. Propositional
// formulas only; the valuation must cover every variable.
Tv evalC3(const FormulaPtr& phi, const Valuation& v);

struct ValidityReport {
  bool valid = false;
  std::optional<Valuation> countermodel; // least failing valuation
  long long valuationsScanned = 0;
};

// Exhausts all 3^|vars| valuations; the countermodel, when present, is
// the lexicographically least failing one (variables sorted by name,
// values ordered 0 < 1/2 < 1).
ValidityReport isValid(const FormulaPtr& phi, int maxVars = 12);

// Gamma |= phi over the matrix.
ValidityReport consequence(const std::vector<FormulaPtr>& gamma, const FormulaPtr& phi,
                           int maxVars = 12);

struct ImpAuditRow {
  Tv x, y;
  Tv viaModal;       // #~x \/ y \/ (nabla ~x /\ nabla y)
  Tv viaLukasiewicz; // min(1, 1 - x + y)
  bool agree;
};

// Compares the modal expression with the Lukasiewicz implication over
// all nine pairs and reports the full table; the two disagree at (1/2,0).
std::vector<ImpAuditRow> checkDerivedImplicationFormulas();

} // namespace triv

#endif
