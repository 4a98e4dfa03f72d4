#ifndef TRIV_ALGEBRA_HPP
#define TRIV_ALGEBRA_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "triv/formula.hpp"
#include "triv/truth.hpp"

namespace triv {

// Finite algebra over one of the two signatures, given by operation
// tables. lat holds the meet table under Inf and the join table under
// Sup. Elements are 0..n-1; `one` is the distinguished element, not
// necessarily the largest index.
struct FiniteAlgebra {
  SigKind sig = SigKind::Inf;
  int n = 0;
  int one = 0;
  std::vector<std::uint16_t> imp; // n*n, row-major
  std::vector<std::uint16_t> lat; // n*n
  std::vector<std::uint16_t> nec; // n

  int impAt(int x, int y) const { return imp[static_cast<std::size_t>(x) * n + y]; }
  int latAt(int x, int y) const { return lat[static_cast<std::size_t>(x) * n + y]; }
  int necAt(int x) const { return nec[x]; }
  bool leq(int x, int y) const { return impAt(x, y) == one; }

  // nabla x = (x -> #x) -> #x
  int posAt(int x) const {
    int nx = necAt(x);
    return impAt(impAt(x, nx), nx);
  }
  // x >-> y = #x -> y
  int weakImpAt(int x, int y) const { return impAt(necAt(x), y); }
};

FiniteAlgebra c2(SigKind sig);
FiniteAlgebra c3(SigKind sig);
FiniteAlgebra productAlgebra(const std::vector<FiniteAlgebra>& factors);

struct GeneratedSubalgebra {
  FiniteAlgebra algebra;
  std::vector<int> elements; // parent indices, ascending; elements[i] is element i
};

GeneratedSubalgebra generateSubalgebra(const FiniteAlgebra& a, const std::vector<int>& gens);
std::vector<GeneratedSubalgebra> allSubalgebras(const FiniteAlgebra& a);

struct IdentityCheck {
  std::string id;
  bool holds = true;
  std::vector<int> witness; // least failing tuple, empty when holds
};

struct VerificationReport {
  bool ok = true;
  std::vector<IdentityCheck> checks;
};

// Definitional identities for the algebra's signature: Hilbert laws,
// IT3, the lattice-reduct laws and the modal-operator laws.
VerificationReport verifyVariety(const FiniteAlgebra& a);

// Exhaustive property suites beyond the definitions.
std::vector<IdentityCheck> lemmaProperties(const FiniteAlgebra& a); // Inf, 15 items + DefSup
std::vector<IdentityCheck> supProperties(const FiniteAlgebra& a);   // Sup lemma, 6 items
std::vector<IdentityCheck> weakImpProperties(const FiniteAlgebra& a); // wi1..wi6

struct DeductiveSystem {
  std::vector<std::uint8_t> member; // indicator over the carrier
  bool modal = false;
  bool weak = false;
  bool maximal = false;
  std::optional<int> tiedTo;

  bool contains(int x) const { return member[x] != 0; }
  int size() const;
  std::vector<int> elements() const;
  bool sameSet(const DeductiveSystem& other) const { return member == other.member; }
};

enum class DsKind { Plain, Modal, Weak };

// Least deductive system of the given kind containing gens; fixpoint of
// the closure rules, not the chain characterization.
DeductiveSystem generateDS(const FiniteAlgebra& a, const std::vector<int>& gens, DsKind kind);
DeductiveSystem generateModalDS(const FiniteAlgebra& a, const std::vector<int>& gens);

// Complete enumeration by breadth-first closure. For Modal and Weak the
// two enumerations are computed independently and asserted equal.
std::vector<DeductiveSystem> allDeductiveSystems(const FiniteAlgebra& a, DsKind kind,
                                                 int carrierCap = 64);

// All maximal proper modal deductive systems, each annotated with the
// least element it is tied to.
std::vector<DeductiveSystem> maximalModalDS(const FiniteAlgebra& a);

struct Congruence {
  std::vector<int> cls; // element -> class id, ids ordered by least member
  int classes = 0;
};

Congruence dsToCongruence(const FiniteAlgebra& a, const DeductiveSystem& d);
DeductiveSystem congruenceToDS(const FiniteAlgebra& a, const Congruence& theta);

// Complete congruence enumeration: principal congruences closed under
// join. Independent of the deductive-system route.
std::vector<Congruence> allCongruences(const FiniteAlgebra& a, int carrierCap = 64);

bool congruenceLeq(const Congruence& a, const Congruence& b);
bool dsLeq(const DeductiveSystem& a, const DeductiveSystem& b);

FiniteAlgebra quotient(const FiniteAlgebra& a, const Congruence& theta);

bool isHomomorphism(const FiniteAlgebra& src, const FiniteAlgebra& dst,
                    const std::vector<int>& map);

struct Homomorphism {
  FiniteAlgebra source;
  FiniteAlgebra target;
  std::vector<int> map;
};

// The three-block construction from a maximal modal deductive system:
// elements with nabla outside M go to 0, M itself goes to 1, the rest to
// 1/2. Checked to be a homomorphism onto a subalgebra of the chain with
// preimage of 1 equal to M.
Homomorphism hFromMaximal(const FiniteAlgebra& a, const DeductiveSystem& m);

struct SemisimpleDecomposition {
  std::vector<DeductiveSystem> maximals;
  std::vector<FiniteAlgebra> factors;
  FiniteAlgebra product;
  std::vector<int> phi; // element -> product index
  bool injective = false;
  bool intersectionIsOne = false;
};

SemisimpleDecomposition semisimpleDecomposition(const FiniteAlgebra& a);

struct FreeAlgebra {
  FiniteAlgebra algebra;
  std::vector<int> generators;
  std::vector<std::vector<Tv>> tuples; // element -> values over the 3^k valuations
};

// Free algebra on k generators, realized inside the 3^(3^k) power of the
// chain as the subalgebra generated by the projection tuples. k <= 2.
FreeAlgebra freeAlgebra(int generators, SigKind sig);

bool isSimple(const FiniteAlgebra& a);
std::optional<std::vector<int>> findIsomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b);

// Greatest lower bound in the order x <= y iff x->y = 1, when it exists.
std::optional<int> orderMeet(const FiniteAlgebra& a, int x, int y);
std::optional<int> orderJoin(const FiniteAlgebra& a, int x, int y);

struct FoldMeet {
  std::optional<int> value;
  int failX = -1, failY = -1; // pair without a meet when value is empty
};
FoldMeet meetOfSet(const FiniteAlgebra& a, const std::vector<int>& elems);
int joinOfSet(const FiniteAlgebra& a, const std::vector<int>& elems); // Sup only

struct MeetGap {
  std::size_t subalgebra; // index into the searched list
  int x = -1, y = -1;     // pair lacking a meet, subalgebra indexing
};
std::optional<MeetGap> findMeetGap(const std::vector<GeneratedSubalgebra>& subs);

} // namespace triv

#endif
