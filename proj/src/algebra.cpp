#include "triv/algebra.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include "triv/error.hpp"

namespace triv {

namespace {

std::string tupleString(const std::vector<int>& xs) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? "," : "") << xs[i];
  os << ")";
  return os.str();
}

} // namespace

int DeductiveSystem::size() const {
  return static_cast<int>(std::count(member.begin(), member.end(), 1));
}

std::vector<int> DeductiveSystem::elements() const {
  std::vector<int> out;
  for (std::size_t i = 0; i < member.size(); ++i)
    if (member[i]) out.push_back(static_cast<int>(i));
  return out;
}

FiniteAlgebra c3(SigKind sig) {
  FiniteAlgebra a;
  a.sig = sig;
  a.n = 3;
  a.one = 2;
  a.imp.resize(9);
  a.lat.resize(9);
  a.nec = {0, 0, 2};
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) {
      a.imp[x * 3 + y] = static_cast<std::uint16_t>(x <= y ? 2 : y);
      a.lat[x * 3 + y] =
          static_cast<std::uint16_t>(sig == SigKind::Inf ? std::min(x, y) : std::max(x, y));
    }
  return a;
}

FiniteAlgebra c2(SigKind sig) {
  FiniteAlgebra a;
  a.sig = sig;
  a.n = 2;
  a.one = 1;
  a.imp.resize(4);
  a.lat.resize(4);
  a.nec = {0, 1};
  for (int x = 0; x < 2; ++x)
    for (int y = 0; y < 2; ++y) {
      a.imp[x * 2 + y] = static_cast<std::uint16_t>(x <= y ? 1 : y);
      a.lat[x * 2 + y] =
          static_cast<std::uint16_t>(sig == SigKind::Inf ? std::min(x, y) : std::max(x, y));
    }
  return a;
}

FiniteAlgebra productAlgebra(const std::vector<FiniteAlgebra>& factors) {
  if (factors.empty()) throw Error(ErrorKind::Precondition, "empty product");
  SigKind sig = factors.front().sig;
  long long total = 1;
  for (const auto& f : factors) {
    if (f.sig != sig) throw Error(ErrorKind::Precondition, "mixed signatures in product");
    total *= f.n;
    if (total > 40000) throw Error(ErrorKind::CarrierBudgetExceeded, "product carrier too large");
  }
  int n = static_cast<int>(total);
  std::size_t k = factors.size();

  auto decode = [&](int x, std::vector<int>& digits) {
    for (std::size_t i = k; i-- > 0;) {
      digits[i] = x % factors[i].n;
      x /= factors[i].n;
    }
  };
  auto encode = [&](const std::vector<int>& digits) {
    int x = 0;
    for (std::size_t i = 0; i < k; ++i) x = x * factors[i].n + digits[i];
    return x;
  };

  FiniteAlgebra p;
  p.sig = sig;
  p.n = n;
  p.imp.resize(static_cast<std::size_t>(n) * n);
  p.lat.resize(static_cast<std::size_t>(n) * n);
  p.nec.resize(n);

  std::vector<int> ones(k);
  for (std::size_t i = 0; i < k; ++i) ones[i] = factors[i].one;
  p.one = encode(ones);

  std::vector<int> dx(k), dy(k), dz(k);
  for (int x = 0; x < n; ++x) {
    decode(x, dx);
    for (std::size_t i = 0; i < k; ++i) dz[i] = factors[i].necAt(dx[i]);
    p.nec[x] = static_cast<std::uint16_t>(encode(dz));
    for (int y = 0; y < n; ++y) {
      decode(y, dy);
      for (std::size_t i = 0; i < k; ++i) dz[i] = factors[i].impAt(dx[i], dy[i]);
      p.imp[static_cast<std::size_t>(x) * n + y] = static_cast<std::uint16_t>(encode(dz));
      for (std::size_t i = 0; i < k; ++i) dz[i] = factors[i].latAt(dx[i], dy[i]);
      p.lat[static_cast<std::size_t>(x) * n + y] = static_cast<std::uint16_t>(encode(dz));
    }
  }
  return p;
}

GeneratedSubalgebra generateSubalgebra(const FiniteAlgebra& a, const std::vector<int>& gens) {
  std::vector<std::uint8_t> in(a.n, 0);
  in[a.one] = 1;
  for (int g : gens) {
    if (g < 0 || g >= a.n) throw Error(ErrorKind::Domain, "generator out of carrier");
    in[g] = 1;
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (int x = 0; x < a.n; ++x) {
      if (!in[x]) continue;
      if (!in[a.necAt(x)]) in[a.necAt(x)] = 1, changed = true;
      for (int y = 0; y < a.n; ++y) {
        if (!in[y]) continue;
        int i1 = a.impAt(x, y), i2 = a.latAt(x, y);
        if (!in[i1]) in[i1] = 1, changed = true;
        if (!in[i2]) in[i2] = 1, changed = true;
      }
    }
  }

  GeneratedSubalgebra out;
  std::vector<int> back(a.n, -1);
  for (int x = 0; x < a.n; ++x)
    if (in[x]) {
      back[x] = static_cast<int>(out.elements.size());
      out.elements.push_back(x);
    }
  int m = static_cast<int>(out.elements.size());
  out.algebra.sig = a.sig;
  out.algebra.n = m;
  out.algebra.one = back[a.one];
  out.algebra.imp.resize(static_cast<std::size_t>(m) * m);
  out.algebra.lat.resize(static_cast<std::size_t>(m) * m);
  out.algebra.nec.resize(m);
  for (int i = 0; i < m; ++i) {
    out.algebra.nec[i] = static_cast<std::uint16_t>(back[a.necAt(out.elements[i])]);
    for (int j = 0; j < m; ++j) {
      out.algebra.imp[static_cast<std::size_t>(i) * m + j] =
          static_cast<std::uint16_t>(back[a.impAt(out.elements[i], out.elements[j])]);
      out.algebra.lat[static_cast<std::size_t>(i) * m + j] =
          static_cast<std::uint16_t>(back[a.latAt(out.elements[i], out.elements[j])]);
    }
  }
  return out;
}

std::vector<GeneratedSubalgebra> allSubalgebras(const FiniteAlgebra& a) {
  if (a.n > 16)
    throw Error(ErrorKind::CarrierBudgetExceeded, "subalgebra enumeration capped at carrier 16");
  std::set<std::vector<int>> seen;
  std::vector<GeneratedSubalgebra> out;
  for (unsigned mask = 0; mask < (1u << a.n); ++mask) {
    std::vector<int> gens;
    for (int i = 0; i < a.n; ++i)
      if (mask & (1u << i)) gens.push_back(i);
    GeneratedSubalgebra sub = generateSubalgebra(a, gens);
    if (seen.insert(sub.elements).second) out.push_back(std::move(sub));
  }
  std::sort(out.begin(), out.end(), [](const GeneratedSubalgebra& l, const GeneratedSubalgebra& r) {
    if (l.elements.size() != r.elements.size()) return l.elements.size() < r.elements.size();
    return l.elements < r.elements;
  });
  return out;
}

namespace {

// Exhaustive scan of one identity; records the least failing tuple.
IdentityCheck scanIdentity(const std::string& id, int n, int arity,
                           const std::function<bool(const std::vector<int>&)>& holds) {
  IdentityCheck c;
  c.id = id;
  std::vector<int> t(arity, 0);
  while (true) {
    if (!holds(t)) {
      c.holds = false;
      c.witness = t;
      return c;
    }
    int i = arity - 1;
    while (i >= 0 && t[i] == n - 1) t[i--] = 0;
    if (i < 0) break;
    ++t[i];
  }
  return c;
}

} // namespace

VerificationReport verifyVariety(const FiniteAlgebra& a) {
  VerificationReport r;
  int n = a.n;
  auto add = [&](IdentityCheck c) {
    r.ok = r.ok && c.holds;
    r.checks.push_back(std::move(c));
  };

  add(scanIdentity("H1", n, 2, [&](const std::vector<int>& t) {
    return a.impAt(t[0], a.impAt(t[1], t[0])) == a.one;
  }));
  add(scanIdentity("H2", n, 3, [&](const std::vector<int>& t) {
    return a.impAt(a.impAt(t[0], a.impAt(t[1], t[2])),
                   a.impAt(a.impAt(t[0], t[1]), a.impAt(t[0], t[2]))) == a.one;
  }));
  add(scanIdentity("H3", n, 2, [&](const std::vector<int>& t) {
    return !(a.impAt(t[0], t[1]) == a.one && a.impAt(t[1], t[0]) == a.one && t[0] != t[1]);
  }));
  add(scanIdentity("IT3", n, 3, [&](const std::vector<int>& t) {
    return a.impAt(a.impAt(a.impAt(t[0], t[1]), t[2]),
                   a.impAt(a.impAt(a.impAt(t[2], t[0]), t[2]), t[2])) == a.one;
  }));
  add(scanIdentity("M1", n, 1, [&](const std::vector<int>& t) {
    return a.impAt(a.necAt(t[0]), t[0]) == a.one;
  }));
  add(scanIdentity("M2", n, 2, [&](const std::vector<int>& t) {
    int x = t[0], y = t[1];
    int lhs = a.impAt(a.impAt(a.impAt(y, a.necAt(y)), a.impAt(x, a.necAt(a.necAt(x)))),
                      a.necAt(a.impAt(x, y)));
    int rhs = a.impAt(a.necAt(x), a.necAt(a.necAt(y)));
    return lhs == rhs;
  }));
  add(scanIdentity("M3", n, 2, [&](const std::vector<int>& t) {
    int x = t[0], y = t[1];
    return a.impAt(a.impAt(a.necAt(x), a.necAt(y)), a.necAt(x)) == a.necAt(x);
  }));

  if (a.sig == SigKind::Inf) {
    add(scanIdentity("iH1", n, 3, [&](const std::vector<int>& t) {
      return a.latAt(t[0], a.latAt(t[1], t[2])) == a.latAt(a.latAt(t[0], t[1]), t[2]);
    }));
    add(scanIdentity("iH2", n, 1, [&](const std::vector<int>& t) {
      return a.latAt(t[0], t[0]) == t[0];
    }));
    add(scanIdentity("iH3", n, 2, [&](const std::vector<int>& t) {
      return a.latAt(t[0], a.impAt(t[0], t[1])) == a.latAt(t[0], t[1]);
    }));
    add(scanIdentity("iH4", n, 3, [&](const std::vector<int>& t) {
      return a.impAt(a.impAt(t[0], a.latAt(t[1], t[2])),
                     a.latAt(a.impAt(t[0], t[2]), a.impAt(t[0], t[1]))) == a.one;
    }));
  } else {
    add(scanIdentity("JSL-idem", n, 1, [&](const std::vector<int>& t) {
      return a.latAt(t[0], t[0]) == t[0];
    }));
    add(scanIdentity("JSL-comm", n, 2, [&](const std::vector<int>& t) {
      return a.latAt(t[0], t[1]) == a.latAt(t[1], t[0]);
    }));
    add(scanIdentity("JSL-assoc", n, 3, [&](const std::vector<int>& t) {
      return a.latAt(t[0], a.latAt(t[1], t[2])) == a.latAt(a.latAt(t[0], t[1]), t[2]);
    }));
    add(scanIdentity("JSL-top", n, 1, [&](const std::vector<int>& t) {
      return a.latAt(t[0], a.one) == a.one;
    }));
    add(scanIdentity("sup-a", n, 2, [&](const std::vector<int>& t) {
      return a.impAt(t[0], a.latAt(t[0], t[1])) == a.one;
    }));
    add(scanIdentity("sup-b", n, 2, [&](const std::vector<int>& t) {
      return a.impAt(a.impAt(t[0], t[1]), a.impAt(a.latAt(t[0], t[1]), t[1])) == a.one;
    }));
    // #(x /\ y) = #x /\ #y whenever the order-meet of x,y exists
    add(scanIdentity("nec-meet", n, 2, [&](const std::vector<int>& t) {
      std::optional<int> m = orderMeet(a, t[0], t[1]);
      if (!m) return true;
      std::optional<int> mn = orderMeet(a, a.necAt(t[0]), a.necAt(t[1]));
      return mn && *mn == a.necAt(*m);
    }));
  }
  return r;
}

std::vector<IdentityCheck> lemmaProperties(const FiniteAlgebra& a) {
  if (a.sig != SigKind::Inf)
    throw Error(ErrorKind::Precondition, "lemmaProperties expects an Inf algebra");
  int n = a.n;
  std::vector<IdentityCheck> out;

  out.push_back(scanIdentity("L1", n, 2, [&](const std::vector<int>& t) {
    return (a.impAt(t[0], t[1]) == a.one) == (a.latAt(t[0], t[1]) == t[0]);
  }));
  out.push_back(scanIdentity("L2", n, 3, [&](const std::vector<int>& t) {
    return a.impAt(t[0], a.impAt(t[1], t[2])) == a.impAt(a.latAt(t[0], t[1]), t[2]);
  }));
  out.push_back(scanIdentity("L3", n, 2, [&](const std::vector<int>& t) {
    return a.impAt(t[0], a.latAt(t[0], t[1])) == a.impAt(t[0], t[1]);
  }));
  out.push_back(scanIdentity("L4", n, 2, [&](const std::vector<int>& t) {
    return a.impAt(a.latAt(t[0], t[1]), a.impAt(t[0], t[1])) == a.one;
  }));
  out.push_back(scanIdentity("L5", n, 3, [&](const std::vector<int>& t) {
    return a.impAt(a.impAt(t[0], t[1]),
                   a.impAt(a.latAt(t[2], t[0]), a.latAt(t[2], t[1]))) == a.one;
  }));
  out.push_back(scanIdentity("L6", n, 2, [&](const std::vector<int>& t) {
    return a.impAt(a.latAt(t[0], t[1]), t[0]) == a.one;
  }));
  out.push_back(scanIdentity("L7", n, 2, [&](const std::vector<int>& t) {
    return a.impAt(a.latAt(t[0], t[1]), t[1]) == a.one;
  }));
  out.push_back(scanIdentity("L8", n, 1, [&](const std::vector<int>& t) {
    return a.latAt(a.one, t[0]) == t[0];
  }));
  out.push_back(scanIdentity("L9", n, 2, [&](const std::vector<int>& t) {
    return a.impAt(t[0], a.impAt(t[1], a.latAt(t[0], t[1]))) == a.one;
  }));
  out.push_back(scanIdentity("L10", n, 0, [&](const std::vector<int>&) {
    return a.necAt(a.one) == a.one;
  }));
  out.push_back(scanIdentity("L11", n, 2, [&](const std::vector<int>& t) {
    return a.impAt(a.necAt(a.impAt(t[0], t[1])),
                   a.impAt(a.necAt(t[0]), a.necAt(t[1]))) == a.one;
  }));
  out.push_back(scanIdentity("L12", n, 2, [&](const std::vector<int>& t) {
    return a.posAt(a.latAt(t[0], t[1])) == a.latAt(a.posAt(t[0]), a.posAt(t[1]));
  }));
  out.push_back(scanIdentity("L13", n, 2, [&](const std::vector<int>& t) {
    return a.necAt(a.latAt(t[0], t[1])) == a.latAt(a.necAt(t[0]), a.necAt(t[1]));
  }));
  out.push_back(scanIdentity("L14", n, 1, [&](const std::vector<int>& t) {
    int x = t[0];
    return a.latAt(a.impAt(a.posAt(x), x), a.posAt(x)) == x;
  }));
  out.push_back(scanIdentity("L15", n, 2, [&](const std::vector<int>& t) {
    return a.impAt(t[0], a.latAt(t[0], t[1])) == a.impAt(t[0], t[1]);
  }));
  // the defined supremum ((x->y)->y) /\ ((y->x)->x) is the least upper bound
  out.push_back(scanIdentity("DefSup", n, 2, [&](const std::vector<int>& t) {
    int x = t[0], y = t[1];
    int s = a.latAt(a.impAt(a.impAt(x, y), y), a.impAt(a.impAt(y, x), x));
    if (!a.leq(x, s) || !a.leq(y, s)) return false;
    for (int z = 0; z < a.n; ++z)
      if (a.leq(x, z) && a.leq(y, z) && !a.leq(s, z)) return false;
    return true;
  }));
  return out;
}

std::vector<IdentityCheck> supProperties(const FiniteAlgebra& a) {
  if (a.sig != SigKind::Sup)
    throw Error(ErrorKind::Precondition, "supProperties expects a Sup algebra");
  int n = a.n;
  std::vector<IdentityCheck> out;
  out.push_back(scanIdentity("S1", n, 2, [&](const std::vector<int>& t) {
    return a.impAt(t[0], t[1]) != a.one || a.latAt(t[0], t[1]) == t[1];
  }));
  out.push_back(scanIdentity("S2", n, 3, [&](const std::vector<int>& t) {
    if (a.impAt(t[0], t[2]) != a.one || a.impAt(t[1], t[2]) != a.one) return true;
    return a.impAt(a.latAt(t[0], t[1]), t[2]) == a.one;
  }));
  out.push_back(scanIdentity("S3", n, 2, [&](const std::vector<int>& t) {
    return a.impAt(t[0], a.latAt(t[0], t[1])) == a.one;
  }));
  out.push_back(scanIdentity("S4", n, 3, [&](const std::vector<int>& t) {
    return a.impAt(a.impAt(t[0], t[2]),
                   a.impAt(a.impAt(t[1], t[2]), a.impAt(a.latAt(t[0], t[1]), t[2]))) == a.one;
  }));
  out.push_back(scanIdentity("S5", n, 2, [&](const std::vector<int>& t) {
    return a.necAt(a.latAt(t[0], t[1])) == a.latAt(a.necAt(t[0]), a.necAt(t[1]));
  }));
  out.push_back(scanIdentity("S6", n, 2, [&](const std::vector<int>& t) {
    return a.posAt(a.latAt(t[0], t[1])) == a.latAt(a.posAt(t[0]), a.posAt(t[1]));
  }));
  return out;
}

std::vector<IdentityCheck> weakImpProperties(const FiniteAlgebra& a) {
  int n = a.n;
  std::vector<IdentityCheck> out;
  out.push_back(scanIdentity("wi1", n, 1, [&](const std::vector<int>& t) {
    return a.weakImpAt(a.one, t[0]) == t[0];
  }));
  out.push_back(scanIdentity("wi2", n, 1, [&](const std::vector<int>& t) {
    return a.weakImpAt(t[0], t[0]) == a.one;
  }));
  out.push_back(scanIdentity("wi3", n, 1, [&](const std::vector<int>& t) {
    return a.weakImpAt(t[0], a.necAt(t[0])) == a.one;
  }));
  out.push_back(scanIdentity("wi4", n, 3, [&](const std::vector<int>& t) {
    return a.weakImpAt(t[0], a.weakImpAt(t[1], t[2])) ==
           a.weakImpAt(a.weakImpAt(t[0], t[1]), a.weakImpAt(t[0], t[2]));
  }));
  out.push_back(scanIdentity("wi5", n, 2, [&](const std::vector<int>& t) {
    return a.weakImpAt(t[0], a.weakImpAt(t[1], t[0])) == a.one;
  }));
  out.push_back(scanIdentity("wi6", n, 2, [&](const std::vector<int>& t) {
    return a.weakImpAt(a.weakImpAt(a.weakImpAt(t[0], t[1]), t[0]), t[0]) == a.one;
  }));
  return out;
}

namespace {

void setDsFlags(const FiniteAlgebra& a, DeductiveSystem& d) {
  d.modal = true;
  for (int x = 0; x < a.n && d.modal; ++x)
    if (d.member[x] && !d.member[a.necAt(x)]) d.modal = false;
  d.weak = true;
  for (int x = 0; x < a.n && d.weak; ++x) {
    if (!d.member[x]) continue;
    for (int y = 0; y < a.n; ++y)
      if (d.member[a.weakImpAt(x, y)] && !d.member[y]) {
        d.weak = false;
        break;
      }
  }
}

DeductiveSystem closeDs(const FiniteAlgebra& a, std::vector<std::uint8_t> in, DsKind kind) {
  in[a.one] = 1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int x = 0; x < a.n; ++x) {
      if (!in[x]) continue;
      if (kind == DsKind::Modal && !in[a.necAt(x)]) {
        in[a.necAt(x)] = 1;
        changed = true;
      }
      for (int y = 0; y < a.n; ++y) {
        if (in[y]) continue;
        int i = kind == DsKind::Weak ? a.weakImpAt(x, y) : a.impAt(x, y);
        if (in[i]) {
          in[y] = 1;
          changed = true;
        }
      }
    }
  }
  DeductiveSystem d;
  d.member = std::move(in);
  setDsFlags(a, d);
  return d;
}

} // namespace

DeductiveSystem generateDS(const FiniteAlgebra& a, const std::vector<int>& gens, DsKind kind) {
  std::vector<std::uint8_t> in(a.n, 0);
  for (int g : gens) {
    if (g < 0 || g >= a.n) throw Error(ErrorKind::Domain, "generator out of carrier");
    in[g] = 1;
  }
  return closeDs(a, std::move(in), kind);
}

DeductiveSystem generateModalDS(const FiniteAlgebra& a, const std::vector<int>& gens) {
  return generateDS(a, gens, DsKind::Modal);
}

namespace {

std::vector<DeductiveSystem> enumerateDs(const FiniteAlgebra& a, DsKind kind) {
  std::set<std::vector<std::uint8_t>> seen;
  std::vector<DeductiveSystem> out;
  std::vector<std::vector<std::uint8_t>> work;

  DeductiveSystem least = closeDs(a, std::vector<std::uint8_t>(a.n, 0), kind);
  seen.insert(least.member);
  work.push_back(least.member);
  out.push_back(std::move(least));

  for (std::size_t w = 0; w < work.size(); ++w) {
    std::vector<std::uint8_t> base = work[w];
    for (int x = 0; x < a.n; ++x) {
      if (base[x]) continue;
      std::vector<std::uint8_t> seed = base;
      seed[x] = 1;
      DeductiveSystem d = closeDs(a, std::move(seed), kind);
      if (seen.insert(d.member).second) {
        work.push_back(d.member);
        out.push_back(std::move(d));
      }
    }
  }

  std::sort(out.begin(), out.end(), [](const DeductiveSystem& l, const DeductiveSystem& r) {
    if (l.size() != r.size()) return l.size() < r.size();
    return l.elements() < r.elements();
  });
  return out;
}

} // namespace

std::vector<DeductiveSystem> allDeductiveSystems(const FiniteAlgebra& a, DsKind kind,
                                                 int carrierCap) {
  if (a.n > carrierCap)
    throw Error(ErrorKind::CarrierBudgetExceeded,
                "carrier " + std::to_string(a.n) + " exceeds enumeration cap " +
                    std::to_string(carrierCap));
  if (kind == DsKind::Plain) return enumerateDs(a, DsKind::Plain);

  // Modal and weak systems coincide on these algebras; enumerate both
  // ways and insist they agree before returning either.
  std::vector<DeductiveSystem> modal = enumerateDs(a, DsKind::Modal);
  std::vector<DeductiveSystem> weak = enumerateDs(a, DsKind::Weak);
  bool agree = modal.size() == weak.size();
  for (std::size_t i = 0; agree && i < modal.size(); ++i)
    agree = modal[i].sameSet(weak[i]);
  if (!agree)
    throw Error(ErrorKind::Precondition,
                "modal and weak deductive systems disagree; algebra is outside the variety");
  return kind == DsKind::Modal ? modal : weak;
}

std::vector<DeductiveSystem> maximalModalDS(const FiniteAlgebra& a) {
  std::vector<DeductiveSystem> all = allDeductiveSystems(a, DsKind::Modal);
  std::vector<DeductiveSystem> out;
  for (const auto& d : all) {
    if (d.size() == a.n) continue;
    bool maximal = true;
    for (const auto& e : all) {
      if (e.size() == a.n || e.sameSet(d)) continue;
      if (dsLeq(d, e)) {
        maximal = false;
        break;
      }
    }
    if (!maximal) continue;
    DeductiveSystem m = d;
    m.maximal = true;
    for (int p = 0; p < a.n && !m.tiedTo; ++p) {
      if (m.member[p]) continue;
      bool tied = true;
      for (const auto& e : all)
        if (dsLeq(m, e) && !e.sameSet(m) && !e.member[p]) {
          tied = false;
          break;
        }
      if (tied) m.tiedTo = p;
    }
    if (!m.tiedTo)
      throw Error(ErrorKind::Precondition,
                  "maximal modal deductive system is not tied to any element");
    out.push_back(std::move(m));
  }
  return out;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int x, int y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    if (x > y) std::swap(x, y);
    parent[y] = x;
    return true;
  }
};

Congruence canonical(const FiniteAlgebra& a, UnionFind& uf) {
  Congruence c;
  c.cls.assign(a.n, -1);
  std::vector<int> label(a.n, -1);
  int next = 0;
  for (int x = 0; x < a.n; ++x) {
    int r = uf.find(x);
    if (label[r] < 0) label[r] = next++;
    c.cls[x] = label[r];
  }
  c.classes = next;
  return c;
}

// Least congruence containing the seed pairs: union-find with operation
// propagation on every class merge.
Congruence congruenceFromPairs(const FiniteAlgebra& a,
                               const std::vector<std::pair<int, int>>& seeds) {
  UnionFind uf(a.n);
  std::queue<std::pair<int, int>> work;
  for (auto [x, y] : seeds)
    if (uf.unite(x, y)) work.emplace(x, y);
  while (!work.empty()) {
    auto [u, v] = work.front();
    work.pop();
    auto push = [&](int x, int y) {
      if (uf.unite(x, y)) work.emplace(x, y);
    };
    push(a.necAt(u), a.necAt(v));
    for (int c = 0; c < a.n; ++c) {
      push(a.impAt(u, c), a.impAt(v, c));
      push(a.impAt(c, u), a.impAt(c, v));
      push(a.latAt(u, c), a.latAt(v, c));
      push(a.latAt(c, u), a.latAt(c, v));
    }
  }
  return canonical(a, uf);
}

void checkDsShape(const FiniteAlgebra& a, const DeductiveSystem& d) {
  if (static_cast<int>(d.member.size()) != a.n)
    throw Error(ErrorKind::Precondition, "deductive system carrier mismatch");
  if (!d.member[a.one]) throw Error(ErrorKind::Precondition, "deductive system misses 1");
  for (int x = 0; x < a.n; ++x) {
    if (!d.member[x]) continue;
    for (int y = 0; y < a.n; ++y)
      if (d.member[a.impAt(x, y)] && !d.member[y])
        throw Error(ErrorKind::Precondition, "set is not closed under detachment");
  }
}

} // namespace

Congruence dsToCongruence(const FiniteAlgebra& a, const DeductiveSystem& d) {
  checkDsShape(a, d);
  for (int x = 0; x < a.n; ++x)
    if (d.member[x] && !d.member[a.necAt(x)])
      throw Error(ErrorKind::NotModal, "deductive system is not closed under #");
  UnionFind uf(a.n);
  for (int x = 0; x < a.n; ++x)
    for (int y = x + 1; y < a.n; ++y)
      if (d.member[a.impAt(x, y)] && d.member[a.impAt(y, x)]) uf.unite(x, y);
  return canonical(a, uf);
}

DeductiveSystem congruenceToDS(const FiniteAlgebra& a, const Congruence& theta) {
  if (static_cast<int>(theta.cls.size()) != a.n)
    throw Error(ErrorKind::Precondition, "congruence carrier mismatch");
  DeductiveSystem d;
  d.member.assign(a.n, 0);
  for (int x = 0; x < a.n; ++x)
    if (theta.cls[x] == theta.cls[a.one]) d.member[x] = 1;
  setDsFlags(a, d);
  return d;
}

std::vector<Congruence> allCongruences(const FiniteAlgebra& a, int carrierCap) {
  if (a.n > carrierCap)
    throw Error(ErrorKind::CarrierBudgetExceeded,
                "carrier " + std::to_string(a.n) + " exceeds enumeration cap " +
                    std::to_string(carrierCap));
  std::set<std::vector<int>> seen;
  std::vector<Congruence> out;
  auto push = [&](Congruence c) {
    if (seen.insert(c.cls).second) {
      out.push_back(c);
      return true;
    }
    return false;
  };

  UnionFind id(a.n);
  push(canonical(a, id));
  std::vector<Congruence> principals;
  for (int x = 0; x < a.n; ++x)
    for (int y = x + 1; y < a.n; ++y) {
      Congruence c = congruenceFromPairs(a, {{x, y}});
      if (push(c)) principals.push_back(c);
    }

  // close under joins
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const auto& p : principals) {
      std::vector<std::pair<int, int>> seeds;
      for (int x = 0; x < a.n; ++x)
        for (int y = x + 1; y < a.n; ++y)
          if (out[i].cls[x] == out[i].cls[y] || p.cls[x] == p.cls[y]) seeds.emplace_back(x, y);
      push(congruenceFromPairs(a, seeds));
    }
  }

  std::sort(out.begin(), out.end(), [](const Congruence& l, const Congruence& r) {
    if (l.classes != r.classes) return l.classes > r.classes;
    return l.cls < r.cls;
  });
  return out;
}

bool congruenceLeq(const Congruence& a, const Congruence& b) {
  for (std::size_t x = 0; x < a.cls.size(); ++x)
    for (std::size_t y = x + 1; y < a.cls.size(); ++y)
      if (a.cls[x] == a.cls[y] && b.cls[x] != b.cls[y]) return false;
  return true;
}

bool dsLeq(const DeductiveSystem& a, const DeductiveSystem& b) {
  for (std::size_t x = 0; x < a.member.size(); ++x)
    if (a.member[x] && !b.member[x]) return false;
  return true;
}

FiniteAlgebra quotient(const FiniteAlgebra& a, const Congruence& theta) {
  if (static_cast<int>(theta.cls.size()) != a.n)
    throw Error(ErrorKind::NotCongruence, "partition carrier mismatch");
  int m = theta.classes;
  std::vector<int> rep(m, -1);
  for (int x = 0; x < a.n; ++x)
    if (rep[theta.cls[x]] < 0) rep[theta.cls[x]] = x;

  FiniteAlgebra q;
  q.sig = a.sig;
  q.n = m;
  q.one = theta.cls[a.one];
  q.imp.resize(static_cast<std::size_t>(m) * m);
  q.lat.resize(static_cast<std::size_t>(m) * m);
  q.nec.resize(m);
  for (int i = 0; i < m; ++i) {
    q.nec[i] = static_cast<std::uint16_t>(theta.cls[a.necAt(rep[i])]);
    for (int j = 0; j < m; ++j) {
      q.imp[static_cast<std::size_t>(i) * m + j] =
          static_cast<std::uint16_t>(theta.cls[a.impAt(rep[i], rep[j])]);
      q.lat[static_cast<std::size_t>(i) * m + j] =
          static_cast<std::uint16_t>(theta.cls[a.latAt(rep[i], rep[j])]);
    }
  }

  for (int x = 0; x < a.n; ++x) {
    if (theta.cls[a.necAt(x)] != q.necAt(theta.cls[x]))
      throw Error(ErrorKind::NotCongruence, "partition not compatible with #");
    for (int y = 0; y < a.n; ++y) {
      if (theta.cls[a.impAt(x, y)] != q.impAt(theta.cls[x], theta.cls[y]))
        throw Error(ErrorKind::NotCongruence, "partition not compatible with ->");
      if (theta.cls[a.latAt(x, y)] != q.latAt(theta.cls[x], theta.cls[y]))
        throw Error(ErrorKind::NotCongruence, "partition not compatible with the lattice operation");
    }
  }
  return q;
}

bool isHomomorphism(const FiniteAlgebra& src, const FiniteAlgebra& dst,
                    const std::vector<int>& map) {
  if (static_cast<int>(map.size()) != src.n) return false;
  for (int v : map)
    if (v < 0 || v >= dst.n) return false;
  if (map[src.one] != dst.one) return false;
  for (int x = 0; x < src.n; ++x) {
    if (map[src.necAt(x)] != dst.necAt(map[x])) return false;
    for (int y = 0; y < src.n; ++y) {
      if (map[src.impAt(x, y)] != dst.impAt(map[x], map[y])) return false;
      if (map[src.latAt(x, y)] != dst.latAt(map[x], map[y])) return false;
    }
  }
  return true;
}

Homomorphism hFromMaximal(const FiniteAlgebra& a, const DeductiveSystem& m) {
  checkDsShape(a, m);
  FiniteAlgebra target = c3(a.sig);
  std::vector<int> h(a.n, -1);
  for (int x = 0; x < a.n; ++x) {
    bool inM = m.contains(x);
    bool posIn = m.contains(a.posAt(x));
    if (inM && !posIn)
      throw Error(ErrorKind::Partition,
                  "element " + std::to_string(x) + " lies in M but nabla leaves M: the "
                  "(M0, M1/2, M) blocks do not partition the carrier");
    h[x] = inM ? 2 : (posIn ? 1 : 0);
  }
  if (!isHomomorphism(a, target, h))
    throw Error(ErrorKind::Partition,
                "the three-block map is not a homomorphism; M is not a maximal modal "
                "deductive system of a verified algebra");
  return Homomorphism{a, target, std::move(h)};
}

SemisimpleDecomposition semisimpleDecomposition(const FiniteAlgebra& a) {
  if (a.n < 2)
    throw Error(ErrorKind::Precondition, "semisimple decomposition needs a non-trivial algebra");
  SemisimpleDecomposition out;
  out.maximals = maximalModalDS(a);
  if (out.maximals.empty())
    throw Error(ErrorKind::Precondition, "no proper modal deductive systems");

  std::vector<Congruence> kernels;
  for (const auto& m : out.maximals) {
    kernels.push_back(dsToCongruence(a, m));
    out.factors.push_back(quotient(a, kernels.back()));
  }
  out.product = productAlgebra(out.factors);

  out.phi.resize(a.n);
  for (int x = 0; x < a.n; ++x) {
    int idx = 0;
    for (std::size_t i = 0; i < out.maximals.size(); ++i)
      idx = idx * out.factors[i].n + kernels[i].cls[x];
    out.phi[x] = idx;
  }

  for (int x = 0; x < a.n; ++x)
    for (int y = x + 1; y < a.n; ++y)
      if (out.phi[x] == out.phi[y])
        throw Error(ErrorKind::NotSemisimple,
                    "Phi identifies distinct elements " + tupleString({x, y}));
  out.injective = true;

  for (int x = 0; x < a.n; ++x) {
    bool everywhere = true;
    for (const auto& m : out.maximals) everywhere = everywhere && m.contains(x);
    if (everywhere != (x == a.one))
      throw Error(ErrorKind::NotSemisimple,
                  "intersection of the maximal weak systems is not {1}; witness " +
                      std::to_string(x));
  }
  out.intersectionIsOne = true;
  return out;
}

FreeAlgebra freeAlgebra(int generators, SigKind sig) {
  if (generators < 0 || generators > 2)
    throw Error(ErrorKind::BudgetExceeded, "free algebras supported for at most 2 generators");
  int k = generators;
  int vals = 1;
  for (int i = 0; i < k; ++i) vals *= 3;

  // valuation j assigns digit i of j (base 3, generator 0 most significant)
  auto valueAt = [&](int j, int i) {
    for (int s = k - 1; s > i; --s) j /= 3;
    return static_cast<Tv>(j % 3);
  };

  std::map<std::vector<Tv>, int> index;
  std::vector<std::vector<Tv>> elems;
  auto intern = [&](std::vector<Tv> t) {
    auto it = index.find(t);
    if (it != index.end()) return it->second;
    int id = static_cast<int>(elems.size());
    index.emplace(t, id);
    elems.push_back(std::move(t));
    return id;
  };

  FreeAlgebra out;
  for (int i = 0; i < k; ++i) {
    std::vector<Tv> t(vals);
    for (int j = 0; j < vals; ++j) t[j] = valueAt(j, i);
    out.generators.push_back(intern(std::move(t)));
  }
  int oneId = intern(std::vector<Tv>(vals, Tv::T));

  auto apply2 = [&](const std::vector<Tv>& x, const std::vector<Tv>& y, bool isImp) {
    std::vector<Tv> t(vals);
    for (int j = 0; j < vals; ++j)
      t[j] = isImp ? imp3(x[j], y[j])
                   : (sig == SigKind::Inf ? meet3(x[j], y[j]) : join3(x[j], y[j]));
    return t;
  };

  bool grew = true;
  while (grew) {
    grew = false;
    std::size_t snapshot = elems.size();
    for (std::size_t i = 0; i < snapshot; ++i) {
      std::vector<Tv> nx(vals);
      for (int j = 0; j < vals; ++j) nx[j] = nec3(elems[i][j]);
      if (static_cast<std::size_t>(intern(std::move(nx))) >= snapshot) grew = true;
      for (std::size_t j = 0; j < snapshot; ++j) {
        if (static_cast<std::size_t>(intern(apply2(elems[i], elems[j], true))) >= snapshot)
          grew = true;
        if (static_cast<std::size_t>(intern(apply2(elems[i], elems[j], false))) >= snapshot)
          grew = true;
      }
    }
  }

  int n = static_cast<int>(elems.size());
  if (n > 40000) throw Error(ErrorKind::BudgetExceeded, "free algebra too large to tabulate");
  out.algebra.sig = sig;
  out.algebra.n = n;
  out.algebra.one = oneId;
  out.algebra.imp.resize(static_cast<std::size_t>(n) * n);
  out.algebra.lat.resize(static_cast<std::size_t>(n) * n);
  out.algebra.nec.resize(n);
  for (int i = 0; i < n; ++i) {
    std::vector<Tv> nx(vals);
    for (int j = 0; j < vals; ++j) nx[j] = nec3(elems[i][j]);
    out.algebra.nec[i] = static_cast<std::uint16_t>(index.at(nx));
    for (int j = 0; j < n; ++j) {
      out.algebra.imp[static_cast<std::size_t>(i) * n + j] =
          static_cast<std::uint16_t>(index.at(apply2(elems[i], elems[j], true)));
      out.algebra.lat[static_cast<std::size_t>(i) * n + j] =
          static_cast<std::uint16_t>(index.at(apply2(elems[i], elems[j], false)));
    }
  }
  out.tuples = std::move(elems);
  return out;
}

bool isSimple(const FiniteAlgebra& a) { return allCongruences(a).size() == 2; }

std::optional<std::vector<int>> findIsomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  if (a.n != b.n || a.sig != b.sig) return std::nullopt;
  int n = a.n;

  auto profile = [](const FiniteAlgebra& alg, int x) {
    int up = 0, down = 0;
    for (int y = 0; y < alg.n; ++y) {
      if (alg.leq(x, y)) ++up;
      if (alg.leq(y, x)) ++down;
    }
    return std::tuple<int, int, bool, bool>(up, down, alg.necAt(x) == x, alg.posAt(x) == x);
  };
  std::vector<std::tuple<int, int, bool, bool>> pa(n), pb(n);
  for (int x = 0; x < n; ++x) pa[x] = profile(a, x), pb[x] = profile(b, x);

  std::vector<int> map(n, -1), used(n, 0);
  std::function<bool(int)> place = [&](int x) -> bool {
    if (x == n) return isHomomorphism(a, b, map);
    for (int y = 0; y < n; ++y) {
      if (used[y] || pa[x] != pb[y]) continue;
      if ((x == a.one) != (y == b.one)) continue;
      map[x] = y;
      used[y] = 1;
      bool ok = true;
      for (int z = 0; z <= x && ok; ++z) {
        if (map[z] < 0) continue;
        int i1 = a.impAt(x, z), i2 = a.impAt(z, x), l1 = a.latAt(x, z), nx = a.necAt(x);
        if (i1 <= x && map[i1] >= 0 && map[i1] != b.impAt(y, map[z])) ok = false;
        if (ok && i2 <= x && map[i2] >= 0 && map[i2] != b.impAt(map[z], y)) ok = false;
        if (ok && l1 <= x && map[l1] >= 0 && map[l1] != b.latAt(y, map[z])) ok = false;
        if (ok && nx <= x && map[nx] >= 0 && map[nx] != b.necAt(y)) ok = false;
      }
      if (ok && place(x + 1)) return true;
      used[y] = 0;
      map[x] = -1;
    }
    return false;
  };
  if (place(0)) return map;
  return std::nullopt;
}

std::optional<int> orderMeet(const FiniteAlgebra& a, int x, int y) {
  std::optional<int> best;
  for (int z = 0; z < a.n; ++z) {
    if (!a.leq(z, x) || !a.leq(z, y)) continue;
    if (!best || a.leq(*best, z)) best = z;
  }
  if (!best) return std::nullopt;
  for (int z = 0; z < a.n; ++z)
    if (a.leq(z, x) && a.leq(z, y) && !a.leq(z, *best)) return std::nullopt;
  return best;
}

std::optional<int> orderJoin(const FiniteAlgebra& a, int x, int y) {
  std::optional<int> best;
  for (int z = 0; z < a.n; ++z) {
    if (!a.leq(x, z) || !a.leq(y, z)) continue;
    if (!best || a.leq(z, *best)) best = z;
  }
  if (!best) return std::nullopt;
  for (int z = 0; z < a.n; ++z)
    if (a.leq(x, z) && a.leq(y, z) && !a.leq(*best, z)) return std::nullopt;
  return best;
}

FoldMeet meetOfSet(const FiniteAlgebra& a, const std::vector<int>& elems) {
  FoldMeet out;
  if (elems.empty()) {
    out.value = a.one;
    return out;
  }
  int acc = elems[0];
  for (std::size_t i = 1; i < elems.size(); ++i) {
    std::optional<int> m = orderMeet(a, acc, elems[i]);
    if (!m) {
      out.failX = acc;
      out.failY = elems[i];
      return out;
    }
    acc = *m;
  }
  out.value = acc;
  return out;
}

int joinOfSet(const FiniteAlgebra& a, const std::vector<int>& elems) {
  if (elems.empty()) throw Error(ErrorKind::Precondition, "join of the empty set");
  if (a.sig != SigKind::Sup) throw Error(ErrorKind::Precondition, "joinOfSet expects Sup");
  int acc = elems[0];
  for (std::size_t i = 1; i < elems.size(); ++i) acc = a.latAt(acc, elems[i]);
  return acc;
}

std::optional<MeetGap> findMeetGap(const std::vector<GeneratedSubalgebra>& subs) {
  for (std::size_t s = 0; s < subs.size(); ++s) {
    const FiniteAlgebra& a = subs[s].algebra;
    for (int x = 0; x < a.n; ++x)
      for (int y = x + 1; y < a.n; ++y)
        if (!orderMeet(a, x, y)) return MeetGap{s, x, y};
  }
  return std::nullopt;
}

} // namespace triv
