#ifndef TRIV_TRUTH_HPP
#define TRIV_TRUTH_HPP

#include <cstdint>
#include <string>

namespace triv {

// The three-element chain {0, 1/2, 1}, encoded 0/1/2.
enum class Tv : std::uint8_t { F = 0, H = 1, T = 2 };

inline constexpr Tv kAllTv[3] = {Tv::F, Tv::H, Tv::T};

// Goedel implication on the chain: x -> y is 1 if x <= y, else y.
constexpr Tv imp3(Tv x, Tv y) { return x <= y ? Tv::T : y; }

constexpr Tv meet3(Tv x, Tv y) { return x < y ? x : y; }
constexpr Tv join3(Tv x, Tv y) { return x < y ? y : x; }

// Necessity: 1/2 collapses to 0.
constexpr Tv nec3(Tv x) { return x == Tv::T ? Tv::T : Tv::F; }

// Possibility, the macro (x -> #x) -> #x spelled out on the chain.
constexpr Tv pos3(Tv x) { return x == Tv::F ? Tv::F : Tv::T; }

// Audit-only connectives; not part of any calculus signature.
constexpr Tv neg3(Tv x) { return static_cast<Tv>(2 - static_cast<int>(x)); }
constexpr Tv lukImp3(Tv x, Tv y) {
  int v = 2 - static_cast<int>(x) + static_cast<int>(y);
  return static_cast<Tv>(v > 2 ? 2 : v);
}

std::string tvName(Tv v); // "0", "1/2", "1"

} // namespace triv

#endif
