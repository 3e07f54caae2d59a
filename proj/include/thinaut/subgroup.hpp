#pragma once

// Subgroups as explicit element sets with generator witnesses, and the
// standard constructions on them: closures, centralizers, central series,
// Frattini subgroup, omega_1.  Everything works on element indices; a
// Subgroup carries a sorted index list plus a membership mask.

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "group.hpp"

namespace thinaut {

struct Subgroup {
  std::vector<uint32_t> elems;  // sorted element indices
  std::vector<char> mask;       // size |G|
  std::vector<uint32_t> gens;   // witnesses; elems == closure(gens)

  int64_t order() const { return static_cast<int64_t>(elems.size()); }
  bool contains(uint32_t i) const { return mask[i] != 0; }
  bool subset_of(const Subgroup& o) const {
    for (uint32_t e : elems)
      if (!o.contains(e)) return false;
    return true;
  }
  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.elems == b.elems; }
};

namespace detail {
inline Subgroup from_mask(const Group& G, std::vector<char> mask, std::vector<uint32_t> gens) {
  Subgroup S;
  S.mask = std::move(mask);
  S.gens = std::move(gens);
  for (uint32_t i = 0; i < S.mask.size(); ++i)
    if (S.mask[i]) S.elems.push_back(i);
  (void)G;
  return S;
}
}  // namespace detail

// Smallest subgroup containing gens: right-multiplication saturation.
inline Subgroup closure(const Group& G, const std::vector<uint32_t>& gens) {
  std::vector<char> mask(static_cast<size_t>(G.order()), 0);
  std::vector<uint32_t> work{0};
  mask[0] = 1;
  for (size_t w = 0; w < work.size(); ++w) {
    for (uint32_t g : gens) {
      uint32_t y = G.mul_idx(work[w], g);
      if (!mask[y]) {
        mask[y] = 1;
        work.push_back(y);
      }
    }
  }
  std::vector<uint32_t> keep;
  for (uint32_t g : gens)
    if (g != 0 && std::find(keep.begin(), keep.end(), g) == keep.end()) keep.push_back(g);
  return detail::from_mask(G, std::move(mask), std::move(keep));
}

inline Subgroup trivial_subgroup(const Group& G) { return closure(G, {}); }

inline Subgroup whole_group(const Group& G) {
  std::vector<uint32_t> gens;
  for (int i = 1; i <= G.ngens(); ++i)
    gens.push_back(static_cast<uint32_t>(G.index_of(G.generator(i))));
  return closure(G, gens);
}

// Smallest normal subgroup containing seed.  First saturate the seed under
// conjugation by the pc generators (and inverses), then take the plain
// closure of that orbit: a subgroup generated by a conjugation-invariant
// set is normal.
inline Subgroup normal_closure(const Group& G, const std::vector<uint32_t>& seed) {
  std::vector<GroupElement> gens, gens_inv;
  for (int i = 1; i <= G.ngens(); ++i) {
    gens.push_back(G.generator(i));
    gens_inv.push_back(G.inv(gens.back()));
  }
  std::vector<char> in_orbit(static_cast<size_t>(G.order()), 0);
  std::vector<uint32_t> orbit;
  auto add = [&](uint32_t y) {
    if (!in_orbit[y]) {
      in_orbit[y] = 1;
      orbit.push_back(y);
    }
  };
  for (uint32_t s : seed) add(s);
  for (size_t w = 0; w < orbit.size(); ++w) {
    GroupElement ex = G.element_at(orbit[w]);
    for (int i = 0; i < G.ngens(); ++i) {
      add(static_cast<uint32_t>(G.index_of(G.conj(ex, gens[static_cast<size_t>(i)]))));
      add(static_cast<uint32_t>(G.index_of(G.conj(ex, gens_inv[static_cast<size_t>(i)]))));
    }
  }
  // closure() keeps the (conjugation-invariant) orbit as the witness set,
  // so elems == closure(gens) holds for the result.
  return closure(G, orbit);
}

inline bool is_normal(const Group& G, const Subgroup& S) {
  for (uint32_t s : S.gens) {
    GroupElement es = G.element_at(s);
    for (int i = 1; i <= G.ngens(); ++i) {
      if (!S.contains(static_cast<uint32_t>(G.index_of(G.conj(es, G.generator(i)))))) return false;
    }
  }
  return true;
}

inline bool is_abelian(const Group& G, const Subgroup& S) {
  for (uint32_t a : S.gens)
    for (uint32_t b : S.gens)
      if (G.mul_idx(a, b) != G.mul_idx(b, a)) return false;
  return true;
}

// [A, B]: for desk-sized inputs the subgroup generated by all pair
// commutators; for larger inputs both arguments must be normal and the
// generator-level normal closure is used instead.
inline Subgroup commutator_subgroup(const Group& G, const Subgroup& A, const Subgroup& B) {
  constexpr int64_t kAllPairsBudget = 2'000'000;
  if (A.order() * B.order() <= kAllPairsBudget) {
    std::vector<char> seen(static_cast<size_t>(G.order()), 0);
    std::vector<uint32_t> vals;
    for (uint32_t a : A.elems) {
      GroupElement ea = G.element_at(a);
      for (uint32_t b : B.elems) {
        auto c = static_cast<uint32_t>(G.index_of(G.comm(ea, G.element_at(b))));
        if (!seen[c]) {
          seen[c] = 1;
          vals.push_back(c);
        }
      }
    }
    return closure(G, vals);
  }
  if (!is_normal(G, A) || !is_normal(G, B))
    throw BoundExceeded("commutator_subgroup: all-pairs budget exceeded for non-normal arguments");
  std::vector<uint32_t> seed;
  for (uint32_t a : A.gens) {
    GroupElement ea = G.element_at(a);
    for (uint32_t b : B.gens)
      seed.push_back(static_cast<uint32_t>(G.index_of(G.comm(ea, G.element_at(b)))));
  }
  return normal_closure(G, seed);
}

// Everything commuting with all generators of S (= the centralizer of S).
inline Subgroup centralizer(const Group& G, const Subgroup& S) {
  std::vector<char> mask(static_cast<size_t>(G.order()), 0);
  std::vector<GroupElement> sgens;
  for (uint32_t s : S.gens) sgens.push_back(G.element_at(s));
  std::vector<uint32_t> witness;
  for (int64_t x = 0; x < G.order(); ++x) {
    GroupElement ex = G.element_at(static_cast<uint64_t>(x));
    bool ok = true;
    for (const auto& s : sgens) {
      if (G.mul(ex, s) != G.mul(s, ex)) {
        ok = false;
        break;
      }
    }
    if (ok) mask[static_cast<size_t>(x)] = 1;
  }
  Subgroup C = detail::from_mask(G, std::move(mask), {});
  C.gens = C.elems;  // witnesses: the full (small) element list
  return C;
}

inline Subgroup center(const Group& G) { return centralizer(G, whole_group(G)); }

// <A u B>; equals the product set AB when either is normal.
inline Subgroup subgroup_join(const Group& G, const Subgroup& A, const Subgroup& B) {
  std::vector<uint32_t> gens = A.gens.empty() ? A.elems : A.gens;
  const std::vector<uint32_t>& bg = B.gens.empty() ? B.elems : B.gens;
  gens.insert(gens.end(), bg.begin(), bg.end());
  return closure(G, gens);
}

struct CentralSeries {
  enum class Kind { lower, upper } kind;
  std::vector<Subgroup> terms;
  // lower: terms[0] = G, ..., terms[c] = 1; upper: terms[0] = 1, ..., terms[c] = G.
  int nilpotency_class() const { return static_cast<int>(terms.size()) - 1; }
  std::vector<int64_t> orders() const {
    std::vector<int64_t> o;
    for (const auto& t : terms) o.push_back(t.order());
    return o;
  }
};

inline CentralSeries lower_central_series(const Group& G) {
  CentralSeries s{CentralSeries::Kind::lower, {}};
  Subgroup whole = whole_group(G);
  s.terms.push_back(whole);
  while (s.terms.back().order() > 1) {
    Subgroup next = commutator_subgroup(G, s.terms.back(), whole);
    if (next.order() >= s.terms.back().order())
      throw InternalError("lower central series does not descend; inconsistent presentation?");
    s.terms.push_back(std::move(next));
  }
  return s;
}

inline CentralSeries upper_central_series(const Group& G) {
  CentralSeries s{CentralSeries::Kind::upper, {}};
  s.terms.push_back(trivial_subgroup(G));
  std::vector<GroupElement> gens;
  for (int i = 1; i <= G.ngens(); ++i) gens.push_back(G.generator(i));
  while (s.terms.back().order() < G.order()) {
    const Subgroup& prev = s.terms.back();
    std::vector<char> mask(static_cast<size_t>(G.order()), 0);
    for (int64_t x = 0; x < G.order(); ++x) {
      GroupElement ex = G.element_at(static_cast<uint64_t>(x));
      bool ok = true;
      for (const auto& g : gens) {
        if (!prev.contains(static_cast<uint32_t>(G.index_of(G.comm(ex, g))))) {
          ok = false;
          break;
        }
      }
      if (ok) mask[static_cast<size_t>(x)] = 1;
    }
    Subgroup next = detail::from_mask(G, std::move(mask), {});
    next.gens = next.elems;
    if (next.order() <= prev.order())
      throw InternalError("upper central series does not ascend; inconsistent presentation?");
    s.terms.push_back(std::move(next));
  }
  return s;
}

// Phi(G) = G^p [G,G].  Modulo [G,G] the p-th power map is a homomorphism,
// so the generator p-th powers suffice on the power side.
inline Subgroup frattini(const Group& G) {
  Subgroup whole = whole_group(G);
  Subgroup der = commutator_subgroup(G, whole, whole);
  std::vector<uint32_t> gens = der.gens;
  for (int i = 1; i <= G.ngens(); ++i)
    gens.push_back(static_cast<uint32_t>(G.index_of(G.pow(G.generator(i), G.prime()))));
  Subgroup phi = normal_closure(G, gens);
  return phi;
}

// Elements of order dividing p in an abelian subgroup.
inline Subgroup omega1(const Group& G, const Subgroup& A) {
  if (!is_abelian(G, A)) throw ValidationError("omega1: subgroup is not abelian");
  std::vector<char> mask(static_cast<size_t>(G.order()), 0);
  std::vector<uint32_t> members;
  for (uint32_t a : A.elems) {
    if (G.is_identity(G.pow(G.element_at(a), G.prime()))) {
      mask[a] = 1;
      members.push_back(a);
    }
  }
  Subgroup S = detail::from_mask(G, std::move(mask), {});
  // small independent witness set
  Subgroup acc = trivial_subgroup(G);
  for (uint32_t m : members) {
    if (!acc.contains(m)) {
      S.gens.push_back(m);
      std::vector<uint32_t> g = S.gens;
      acc = closure(G, g);
    }
  }
  return S;
}

// Greedy minimal generating set over the pc generators (Burnside basis).
inline std::vector<uint32_t> minimal_generating_set(const Group& G) {
  Subgroup phi = frattini(G);
  std::vector<uint32_t> sel;
  Subgroup reach = phi;
  for (int i = 1; i <= G.ngens() && reach.order() < G.order(); ++i) {
    auto gi = static_cast<uint32_t>(G.index_of(G.generator(i)));
    if (!reach.contains(gi)) {
      sel.push_back(gi);
      std::vector<uint32_t> gens = phi.gens.empty() ? phi.elems : phi.gens;
      gens.insert(gens.end(), sel.begin(), sel.end());
      reach = closure(G, gens);
    }
  }
  if (reach.order() != G.order()) throw InternalError("pc generators failed to generate the group");
  return sel;
}

// d(G) from |G / Phi(G)|.
inline int min_generators(const Group& G) {
  int64_t q = G.order() / frattini(G).order();
  int d = 0;
  while (q > 1) {
    q /= G.prime();
    ++d;
  }
  return d;
}

}  // namespace thinaut
