#pragma once

// Derivations delta: F -> M for M a normal abelian subgroup of G acted on by
// conjugation through a projection pi: F -> G.  Evaluation is the cocycle
// law delta(w1 w2) = delta(w1)^{pi(w2)} delta(w2), processed left to right;
// the inverse case delta(x^-1) = (delta(x)^-1)^{pi(x)^-1} is forced by it.
//
// A derivation on the quotient group reuses the same evaluator on stored
// preimage words of normal forms.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "structure.hpp"

namespace thinaut {

struct FreeLetter {
  int gen = 0;  // 0-based index into the assignment
  int exp = 0;
  friend bool operator==(const FreeLetter&, const FreeLetter&) = default;
};
using FreeWord = std::vector<FreeLetter>;

inline FreeWord fw_gen(int g, int e = 1) { return {{g, e}}; }
inline FreeWord fw_concat(const FreeWord& a, const FreeWord& b) {
  FreeWord r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}
inline FreeWord fw_inv(const FreeWord& w) {
  FreeWord r;
  for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back({it->gen, -it->exp});
  return r;
}
inline FreeWord fw_pow(const FreeWord& w, int k) {
  FreeWord r;
  FreeWord base = k < 0 ? fw_inv(w) : w;
  for (int t = 0; t < (k < 0 ? -k : k); ++t) r = fw_concat(r, base);
  return r;
}
inline FreeWord fw_comm(const FreeWord& a, const FreeWord& b) {
  return fw_concat(fw_concat(fw_inv(a), fw_inv(b)), fw_concat(a, b));
}

// A normal abelian subgroup of G viewed as a G-module under conjugation.
class GroupModule {
 public:
  GroupModule(const Group& G, Subgroup carrier) : G_(&G), carrier_(std::move(carrier)) {
    if (!is_normal(G, carrier_)) throw ValidationError("module carrier is not normal");
    if (!is_abelian(G, carrier_)) throw ValidationError("module carrier is not abelian");
  }
  const Group& group() const { return *G_; }
  const Subgroup& carrier() const { return carrier_; }
  bool contains(const GroupElement& m) const {
    return carrier_.contains(static_cast<uint32_t>(G_->index_of(m)));
  }
  GroupElement act(const GroupElement& m, const GroupElement& g) const {
    return G_->conj(m, g);
  }

 private:
  const Group* G_;
  Subgroup carrier_;
};

// Uniquely determined by its generator images (free-group side) and the
// projection of the free generators into G.
class Derivation {
 public:
  Derivation(const GroupModule& mod, std::vector<GroupElement> images,
             std::vector<GroupElement> projections)
      : mod_(&mod), images_(std::move(images)), proj_(std::move(projections)) {
    if (images_.size() != proj_.size())
      throw ValidationError("derivation: images and projections must align");
    for (const auto& u : images_)
      if (!mod_->contains(u)) throw ValidationError("derivation image outside the module carrier");
  }

  const GroupModule& module() const { return *mod_; }
  int arity() const { return static_cast<int>(images_.size()); }
  const GroupElement& image(int g) const { return images_.at(static_cast<size_t>(g)); }
  const GroupElement& projection(int g) const { return proj_.at(static_cast<size_t>(g)); }

  GroupElement project(const FreeWord& w) const {
    const Group& G = mod_->group();
    GroupElement q = G.identity();
    for (const auto& l : w) q = G.mul(q, G.pow(proj_.at(idx(l)), l.exp));
    return q;
  }

  GroupElement eval(const FreeWord& w) const {
    const Group& G = mod_->group();
    GroupElement m = G.identity();
    for (const auto& l : w) {
      const GroupElement& pg = proj_.at(idx(l));
      const GroupElement& u = images_.at(idx(l));
      int reps = l.exp < 0 ? -l.exp : l.exp;
      for (int t = 0; t < reps; ++t) {
        if (l.exp > 0) {
          m = G.mul(mod_->act(m, pg), u);
        } else {
          GroupElement pginv = G.inv(pg);
          m = G.mul(mod_->act(m, pginv), mod_->act(G.inv(u), pginv));
        }
      }
    }
    return m;
  }

 private:
  size_t idx(const FreeLetter& l) const {
    if (l.gen < 0 || l.gen >= arity()) throw ValidationError("unknown free generator in word");
    return static_cast<size_t>(l.gen);
  }
  const GroupModule* mod_;
  std::vector<GroupElement> images_;
  std::vector<GroupElement> proj_;
};

inline Derivation extend_from_generators(const GroupModule& mod,
                                         std::vector<GroupElement> images,
                                         std::vector<GroupElement> projections) {
  return Derivation(mod, std::move(images), std::move(projections));
}

struct KernelEntry {
  FreeWord relation;
  GroupElement value;
};
struct KernelReport {
  std::vector<KernelEntry> entries;
  bool kernel_ok = true;
};

inline KernelReport check_relation_kernel(const Derivation& d,
                                          const std::vector<FreeWord>& relations) {
  KernelReport rep;
  const Group& G = d.module().group();
  for (const auto& r : relations) {
    GroupElement v = d.eval(r);
    rep.kernel_ok = rep.kernel_ok && G.is_identity(v);
    rep.entries.push_back({r, std::move(v)});
  }
  return rep;
}

// One positive word over the given generating elements for every element of
// G, by breadth-first search from the identity.
inline std::vector<FreeWord> preimage_words(const Group& G, const std::vector<uint32_t>& gens) {
  std::vector<FreeWord> words(static_cast<size_t>(G.order()));
  std::vector<char> seen(static_cast<size_t>(G.order()), 0);
  std::vector<uint32_t> queue{0};
  seen[0] = 1;
  for (size_t w = 0; w < queue.size(); ++w) {
    uint32_t x = queue[w];
    for (size_t g = 0; g < gens.size(); ++g) {
      uint32_t y = G.mul_idx(x, gens[g]);
      if (!seen[y]) {
        seen[y] = 1;
        words[y] = fw_concat(words[x], fw_gen(static_cast<int>(g)));
        queue.push_back(y);
      }
    }
  }
  if (queue.size() != static_cast<size_t>(G.order()))
    throw ValidationError("projection images do not generate the group");
  return words;
}

// A derivation evaluated on group elements rather than free words.
class QuotientDerivation {
 public:
  QuotientDerivation(Derivation base, const std::vector<FreeWord>& preimages)
      : base_(std::move(base)) {
    const Group& G = base_.module().group();
    if (preimages.size() != static_cast<size_t>(G.order()))
      throw ValidationError("need one preimage word per group element");
    values_.reserve(preimages.size());
    for (const auto& w : preimages) values_.push_back(base_.eval(w));
  }

  const Derivation& base() const { return base_; }
  const Group& group() const { return base_.module().group(); }
  const GroupElement& value_at(uint32_t idx) const { return values_.at(idx); }
  const GroupElement& eval_elem(const GroupElement& g) const {
    return values_.at(static_cast<uint32_t>(group().index_of(g)));
  }

 private:
  Derivation base_;
  std::vector<GroupElement> values_;
};

// Lemma-style induction to the quotient: requires the relation kernel to
// vanish, then spot-checks that evaluation is constant on cosets of the
// relators' normal closure (random f, random conjugated relator products).
inline QuotientDerivation induce_on_quotient(const Derivation& d,
                                             const std::vector<FreeWord>& relations,
                                             const std::vector<FreeWord>& preimages,
                                             uint64_t seed = 42, int spot_checks = 20) {
  KernelReport k = check_relation_kernel(d, relations);
  if (!k.kernel_ok) throw ValidationError("relation kernel check failed; cannot induce");
  QuotientDerivation q(d, preimages);

  if (!relations.empty() && spot_checks > 0) {
    std::mt19937_64 rng(seed);
    const int arity = d.arity();
    auto rand_word = [&](int len) {
      FreeWord w;
      for (int t = 0; t < len; ++t) {
        int g = static_cast<int>(rng() % static_cast<uint64_t>(arity));
        int e = 1 + static_cast<int>(rng() % 2);
        if (rng() & 1) e = -e;
        w.push_back({g, e});
      }
      return w;
    };
    for (int t = 0; t < spot_checks; ++t) {
      FreeWord f = rand_word(1 + static_cast<int>(rng() % 6));
      const FreeWord& rel = relations[rng() % relations.size()];
      FreeWord c = rand_word(static_cast<int>(rng() % 4));
      FreeWord fr = fw_concat(f, fw_concat(fw_inv(c), fw_concat(rel, c)));
      if (d.eval(fr) != d.eval(f))
        throw ValidationError("derivation is not constant on relator cosets");
    }
  }
  return q;
}

// ----- endomorphisms -------------------------------------------------------

enum class EndoTag { endomorphism, automorphism };

// A map of G determined by images of the pc generators.
struct Endo {
  const Group* owner = nullptr;
  std::vector<GroupElement> images;  // one per pc generator
  EndoTag tag = EndoTag::endomorphism;

  GroupElement apply(const GroupElement& g) const {
    GroupElement r = owner->identity();
    for (size_t i = 0; i < g.size(); ++i)
      if (g[i]) r = owner->mul(r, owner->pow(images[i], g[i]));
    return r;
  }
  uint32_t apply_idx(uint32_t x) const {
    return static_cast<uint32_t>(owner->index_of(apply(owner->element_at(x))));
  }
  bool is_identity_map() const {
    for (size_t i = 0; i < images.size(); ++i)
      if (owner->index_of(images[i]) != owner->index_of(owner->generator(static_cast<int>(i) + 1)))
        return false;
    return true;
  }
  friend bool operator==(const Endo& a, const Endo& b) { return a.images == b.images; }
};

inline Endo identity_endo(const Group& G) {
  Endo e{&G, {}, EndoTag::automorphism};
  for (int i = 1; i <= G.ngens(); ++i) e.images.push_back(G.generator(i));
  return e;
}

inline Endo conjugation_endo(const Group& G, const GroupElement& h) {
  Endo e{&G, {}, EndoTag::automorphism};
  for (int i = 1; i <= G.ngens(); ++i) e.images.push_back(G.conj(G.generator(i), h));
  return e;
}

// f after g (apply g, then f).
inline Endo compose(const Endo& f, const Endo& g) {
  Endo r{f.owner, {}, EndoTag::endomorphism};
  for (const auto& img : g.images) r.images.push_back(f.apply(img));
  if (f.tag == EndoTag::automorphism && g.tag == EndoTag::automorphism)
    r.tag = EndoTag::automorphism;
  return r;
}

// Check that generator images satisfy every defining relation.
inline bool respects_relations(const Group& G, const std::vector<GroupElement>& images) {
  const PcPresentation& P = G.presentation();
  auto eval_word = [&](const Word& w) {
    GroupElement r = G.identity();
    for (const auto& f : w) r = G.mul(r, G.pow(images[static_cast<size_t>(f.gen) - 1], f.exp));
    return r;
  };
  for (int i = 1; i <= P.ngens; ++i) {
    if (G.pow(images[static_cast<size_t>(i) - 1], P.prime) != eval_word(P.power_tail(i)))
      return false;
  }
  for (int j = 2; j <= P.ngens; ++j)
    for (int i = 1; i < j; ++i) {
      if (G.comm(images[static_cast<size_t>(j) - 1], images[static_cast<size_t>(i) - 1]) !=
          eval_word(P.comm_tail(j, i)))
        return false;
    }
  return true;
}

inline bool is_surjective(const Group& G, const std::vector<GroupElement>& images) {
  std::vector<uint32_t> idx;
  for (const auto& m : images) idx.push_back(static_cast<uint32_t>(G.index_of(m)));
  return closure(G, idx).order() == G.order();
}

// phi(g) = g delta(g).  Requires delta(M) = 1 (checked by exhausting the
// carrier); with that, the lift of a derivation is an automorphism, so a
// homomorphism-check failure here is an internal error, not data.
inline Endo lift_to_automorphism(const QuotientDerivation& qd) {
  const Group& G = qd.group();
  const Subgroup& M = qd.base().module().carrier();
  bool kills_carrier = true;
  for (uint32_t m : M.elems)
    if (!G.is_identity(qd.value_at(m))) {
      kills_carrier = false;
      break;
    }
  Endo e{&G, {}, EndoTag::endomorphism};
  for (int i = 1; i <= G.ngens(); ++i) {
    GroupElement gi = G.generator(i);
    e.images.push_back(G.mul(gi, qd.eval_elem(gi)));
  }
  if (!respects_relations(G, e.images))
    throw InternalError("derivation lift is not a homomorphism");
  if (!kills_carrier) return e;  // honest endomorphism, no automorphism claim
  if (!is_surjective(G, e.images))
    throw InternalError("derivation lift with delta(M)=1 failed to be bijective");
  e.tag = EndoTag::automorphism;
  return e;
}

// ----- free-derivation identities -----------------------------------------

struct PropertyClause {
  std::string clause;
  bool applicable = false;
  bool passed = true;
  int trials = 0;
  std::string note;
};
struct PropertyReport {
  std::vector<PropertyClause> clauses;
  bool all_passed() const {
    for (const auto& c : clauses)
      if (c.applicable && !c.passed) return false;
    return true;
  }
};

// Randomized checks of the p-th power and commutator value laws:
//  (a) delta(f^p) = delta(f)^{1 + pi(f) + ... + pi(f)^{p-1}} (always),
//  (b) if [M,G,G] = 1: delta(f^p) = delta(f)^p [delta(f), pi(f)]^{p(p-1)/2},
//  (c) if [M,_i G] = 1: delta of an i-fold commutator word lies in
//      [<delta image>^G, _{i-1} G],
//  (d) if [M, Phi(G)] = 1: delta([f,g]) = [delta(f), pi(g)] [pi(f), delta(g)],
//      with the value central whenever M <= Z2(G).
inline PropertyReport verify_free_derivation_identities(const Derivation& d, int samples,
                                                        uint64_t seed) {
  PropertyReport rep;
  const Group& G = d.module().group();
  const Subgroup& M = d.module().carrier();
  const int p = G.prime();
  std::mt19937_64 rng(seed);
  auto rand_word = [&](int maxlen) {
    FreeWord w;
    int len = 1 + static_cast<int>(rng() % static_cast<uint64_t>(maxlen));
    for (int t = 0; t < len; ++t) {
      int g = static_cast<int>(rng() % static_cast<uint64_t>(d.arity()));
      int e = 1 + static_cast<int>(rng() % static_cast<uint64_t>(2 * p));
      if (rng() & 1) e = -e;
      w.push_back({g, e});
    }
    return w;
  };

  Subgroup whole = whole_group(G);
  Subgroup mg = commutator_subgroup(G, M, whole);
  Subgroup mgg = commutator_subgroup(G, mg, whole);

  {
    PropertyClause c{"power-law-direct", true, true, samples, ""};
    for (int t = 0; t < samples; ++t) {
      FreeWord f = rand_word(5);
      GroupElement lhs = d.eval(fw_pow(f, p));
      GroupElement df = d.eval(f);
      GroupElement pf = d.project(f);
      GroupElement rhs = G.identity();
      GroupElement conjby = G.identity();
      for (int k = 0; k < p; ++k) {
        rhs = G.mul(rhs, G.conj(df, conjby));
        conjby = G.mul(conjby, pf);
      }
      if (lhs != rhs) {
        c.passed = false;
        c.note = "trial " + std::to_string(t);
        break;
      }
    }
    rep.clauses.push_back(std::move(c));
  }

  {
    PropertyClause c{"power-law-binomial", mgg.order() == 1, true, samples, "needs [M,G,G]=1"};
    if (c.applicable) {
      for (int t = 0; t < samples; ++t) {
        FreeWord f = rand_word(5);
        GroupElement lhs = d.eval(fw_pow(f, p));
        GroupElement df = d.eval(f);
        GroupElement pf = d.project(f);
        GroupElement rhs =
            G.mul(G.pow(df, p), G.pow(G.comm(df, pf), static_cast<long long>(p) * (p - 1) / 2));
        if (lhs != rhs) {
          c.passed = false;
          c.note = "trial " + std::to_string(t);
          break;
        }
      }
    }
    rep.clauses.push_back(std::move(c));
  }

  {
    // Entering iteration i, m_chain = [M,_i G] and d_chain = [D,_{i-1} G]
    // where D = <image>^G.
    std::vector<uint32_t> im;
    for (int g = 0; g < d.arity(); ++g)
      im.push_back(static_cast<uint32_t>(G.index_of(d.image(g))));
    Subgroup m_chain = mg;       // [M,_1 G]
    Subgroup d_chain = normal_closure(G, im);  // [D,_0 G]
    for (int i = 2; i <= G.ngens() + 2; ++i) {
      m_chain = commutator_subgroup(G, m_chain, whole);
      d_chain = commutator_subgroup(G, d_chain, whole);
      bool applicable = m_chain.order() == 1;  // [M,_i G] = 1 at this level?
      PropertyClause c{"gamma" + std::to_string(i) + "-image", applicable, true, samples, ""};
      if (applicable) {
        for (int t = 0; t < samples; ++t) {
          FreeWord w = rand_word(3);
          for (int s = 1; s < i; ++s) w = fw_comm(w, rand_word(3));
          if (!d_chain.contains(static_cast<uint32_t>(G.index_of(d.eval(w))))) {
            c.passed = false;
            c.note = "trial " + std::to_string(t);
            break;
          }
        }
        rep.clauses.push_back(std::move(c));
        break;  // once [M,_i G] = 1 the higher levels add nothing
      }
      rep.clauses.push_back(std::move(c));
    }
  }

  {
    Subgroup phi = frattini(G);
    Subgroup m_phi = commutator_subgroup(G, M, phi);
    PropertyClause c{"commutator-value-law", m_phi.order() == 1, true, samples,
                     "needs [M,Phi(G)]=1"};
    if (c.applicable) {
      CentralSeries ucs = upper_central_series(G);
      const Subgroup& z2 = ucs.terms.size() > 2 ? ucs.terms[2] : ucs.terms.back();
      bool m_in_z2 = M.subset_of(z2);
      Subgroup zg = center(G);
      for (int t = 0; t < samples; ++t) {
        FreeWord f = rand_word(4), g = rand_word(4);
        GroupElement lhs = d.eval(fw_comm(f, g));
        GroupElement df = d.eval(f), dg = d.eval(g);
        GroupElement pf = d.project(f), pg = d.project(g);
        GroupElement rhs = G.mul(G.comm(df, pg), G.comm(pf, dg));
        bool ok = lhs == rhs;
        if (ok && m_in_z2) ok = zg.contains(static_cast<uint32_t>(G.index_of(lhs)));
        if (!ok) {
          c.passed = false;
          c.note = "trial " + std::to_string(t);
          break;
        }
      }
    }
    rep.clauses.push_back(std::move(c));
  }

  return rep;
}

}  // namespace thinaut
