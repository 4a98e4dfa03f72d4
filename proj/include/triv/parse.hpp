#ifndef TRIV_PARSE_HPP
#define TRIV_PARSE_HPP

#include <string>

#include "triv/algebra.hpp"
#include "triv/fol.hpp"
#include "triv/formula.hpp"
#include "triv/proof.hpp"

namespace triv {

// Concrete grammar, UTF-8 with ASCII aliases: `->`, `/\`, `\/`, `#`,
// `nabla`, `forall x.`, `exists x.`; precedence # > /\,\/ > ->, with ->
// right-associative. nabla expands on sight; \/ under Inf expands to its
// defined form. When a Theta signature is supplied, bare identifiers in
// term position resolve to constants it declares, and arities are
// enforced; otherwise they are variables.
FormulaPtr parseFormula(const std::string& text, const Signature& sig,
                        const ThetaSignature* theta = nullptr);

FiniteAlgebra parseAlgebra(const std::string& jsonText);
std::string printAlgebra(const FiniteAlgebra& a);

Derivation parseDerivation(const std::string& jsonText);
std::string printDerivation(const Derivation& d);

Structure parseStructure(const std::string& jsonText);
std::string printStructure(const Structure& s);

} // namespace triv

#endif
