#pragma once

// Ground truth by exhaustion: enumerate Aut(G) for small G by trying every
// tuple of candidate images of a minimal generating set, classify inner
// maps, and re-verify certificates independently of the pipeline (sharing
// only the pc arithmetic layer).

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "certificate.hpp"
#include "derivation.hpp"

namespace thinaut {

inline constexpr int64_t kDefaultOracleBound = 729;  // 3^6

// Every automorphism of G, in deterministic (lexicographic image-tuple)
// order.  Candidate images of a weight-w generator are pruned to elements of
// the same lower-central weight whose order divides the generator's order;
// an automorphism permutes each gamma_i \ gamma_{i+1} and cannot raise
// element orders, so pruning never loses a valid map.
inline std::vector<Endo> all_automorphisms(const Group& G,
                                           int64_t bound = kDefaultOracleBound) {
  if (G.order() > bound)
    throw BoundExceeded("all_automorphisms: order " + std::to_string(G.order()) +
                        " exceeds oracle bound " + std::to_string(bound));
  const auto n = static_cast<size_t>(G.order());
  std::vector<uint32_t> min_gens = minimal_generating_set(G);
  std::vector<FreeWord> words = preimage_words(G, min_gens);

  CentralSeries lcs = lower_central_series(G);
  auto weight = [&](uint32_t x) {
    int w = 0;
    for (const auto& t : lcs.terms)
      if (t.contains(x)) ++w;
      else break;
    return w;  // number of gamma terms containing x; identity has max weight
  };

  std::vector<int64_t> elt_order(n);
  for (uint32_t x = 0; x < n; ++x) elt_order[x] = G.element_order(G.element_at(x));

  const size_t d = min_gens.size();
  std::vector<std::vector<uint32_t>> cand(d);
  for (size_t s = 0; s < d; ++s) {
    int w = weight(min_gens[s]);
    int64_t o = elt_order[min_gens[s]];
    for (uint32_t x = 1; x < n; ++x)
      if (weight(x) == w && o % elt_order[x] == 0) cand[s].push_back(x);
  }

  // Free-word evaluation over a candidate tuple (positive words only).
  auto eval_word = [&](const FreeWord& w, const std::vector<uint32_t>& tuple) {
    uint32_t r = 0;
    for (const auto& l : w)
      for (int t = 0; t < l.exp; ++t) r = G.mul_idx(r, tuple[static_cast<size_t>(l.gen)]);
    return r;
  };

  std::vector<Endo> out;
  for (size_t s = 0; s < d; ++s)
    if (cand[s].empty()) return out;
  std::vector<size_t> pos(d, 0);
  std::vector<uint32_t> tuple(d);
  std::vector<GroupElement> images(static_cast<size_t>(G.ngens()));
  while (true) {
    for (size_t s = 0; s < d; ++s) tuple[s] = cand[s][pos[s]];
    for (int i = 1; i <= G.ngens(); ++i) {
      uint32_t img = eval_word(words[G.index_of(G.generator(i))], tuple);
      images[static_cast<size_t>(i) - 1] = G.element_at(img);
    }
    if (respects_relations(G, images) && is_surjective(G, images))
      out.push_back(Endo{&G, images, EndoTag::automorphism});
    // odometer, last position fastest
    size_t s = d;
    while (s > 0) {
      --s;
      if (++pos[s] < cand[s].size()) break;
      pos[s] = 0;
      if (s == 0) return out;
    }
  }
}

inline std::vector<Endo> inner_automorphisms(const Group& G) {
  Subgroup z = center(G);
  std::vector<Endo> out;
  std::vector<char> covered(static_cast<size_t>(G.order()), 0);
  for (int64_t h = 0; h < G.order(); ++h) {
    if (covered[static_cast<size_t>(h)]) continue;
    GroupElement eh = G.element_at(static_cast<uint64_t>(h));
    // mark the whole coset hZ
    for (uint32_t zi : z.elems)
      covered[G.mul_idx(static_cast<uint32_t>(h), zi)] = 1;
    out.push_back(conjugation_endo(G, eh));
  }
  return out;
}

inline int64_t endo_order(const Endo& e) {
  const Group& G = *e.owner;
  if (!respects_relations(G, e.images) || !is_surjective(G, e.images))
    throw ValidationError("endo_order: map is not an automorphism");
  Endo acc = e;
  int64_t k = 1;
  while (!acc.is_identity_map()) {
    acc = compose(e, acc);
    ++k;
    if (k > G.order() * G.order()) throw InternalError("automorphism order runaway");
  }
  return k;
}

struct AutSearchResult {
  std::string group_name;
  int64_t total = 0;
  int64_t inner = 0;
  int64_t noninner_order_p = 0;
  std::optional<Endo> representative;  // first non-inner of order p
};

inline AutSearchResult automorphism_search(const Group& G,
                                           int64_t bound = kDefaultOracleBound) {
  AutSearchResult res;
  res.group_name = G.name();
  std::vector<Endo> all = all_automorphisms(G, bound);
  res.total = static_cast<int64_t>(all.size());
  std::vector<Endo> inner = inner_automorphisms(G);
  res.inner = static_cast<int64_t>(inner.size());
  std::vector<std::vector<GroupElement>> inner_images;
  for (const auto& e : inner) inner_images.push_back(e.images);
  std::sort(inner_images.begin(), inner_images.end());
  for (const auto& e : all) {
    if (std::binary_search(inner_images.begin(), inner_images.end(), e.images)) continue;
    if (endo_order(e) == G.prime()) {
      ++res.noninner_order_p;
      if (!res.representative) res.representative = e;
    }
  }
  return res;
}

// ----- independent certificate verification --------------------------------
//
// Everything below re-derives its facts from the presentation and the
// certificate's generator images, on purpose duplicating logic that exists
// elsewhere: only the pc arithmetic layer is shared with the pipeline.

struct CertificateCheckResult {
  bool group_match = false;
  bool wellformed = false;
  bool homomorphism = false;
  bool bijective = false;
  bool order_p = false;
  bool fixes_frattini = false;
  bool noninner = false;
  bool all_passed() const {
    return group_match && wellformed && homomorphism && bijective && order_p && fixes_frattini &&
           noninner;
  }
};

namespace oracle_detail {

inline std::vector<char> frattini_mask(const Group& G) {
  // Phi = <generator p-th powers and generator commutators>^G: saturate the
  // seed under conjugation, then close the orbit under products.
  std::vector<uint32_t> seed;
  for (int i = 1; i <= G.ngens(); ++i)
    seed.push_back(static_cast<uint32_t>(G.index_of(G.pow(G.generator(i), G.prime()))));
  for (int j = 2; j <= G.ngens(); ++j)
    for (int i = 1; i < j; ++i)
      seed.push_back(
          static_cast<uint32_t>(G.index_of(G.comm(G.generator(j), G.generator(i)))));

  std::vector<char> in_orbit(static_cast<size_t>(G.order()), 0);
  std::vector<uint32_t> orbit;
  auto touch = [&](uint32_t y) {
    if (!in_orbit[y]) {
      in_orbit[y] = 1;
      orbit.push_back(y);
    }
  };
  for (uint32_t s : seed) touch(s);
  for (size_t w = 0; w < orbit.size(); ++w) {
    GroupElement e = G.element_at(orbit[w]);
    for (int i = 1; i <= G.ngens(); ++i) {
      GroupElement gi = G.generator(i);
      touch(static_cast<uint32_t>(G.index_of(G.conj(e, gi))));
      touch(static_cast<uint32_t>(G.index_of(G.conj(e, G.inv(gi)))));
    }
  }

  std::vector<char> mask(static_cast<size_t>(G.order()), 0);
  std::vector<uint32_t> work{0};
  mask[0] = 1;
  for (size_t w = 0; w < work.size(); ++w)
    for (uint32_t s : orbit) {
      uint32_t y = G.mul_idx(work[w], s);
      if (!mask[y]) {
        mask[y] = 1;
        work.push_back(y);
      }
    }
  return mask;
}

}  // namespace oracle_detail

inline CertificateCheckResult verify_certificate(const Group& G,
                                                 const NonInnerCertificate& cert) {
  CertificateCheckResult r;
  r.group_match = cert.group_name == G.name() && cert.group_order == G.order() &&
                  cert.prime == G.prime() && cert.ngens == G.ngens();
  if (!r.group_match) return r;

  r.wellformed = cert.images.size() == static_cast<size_t>(G.ngens());
  for (const auto& img : cert.images) {
    if (img.size() != static_cast<size_t>(G.ngens())) r.wellformed = false;
    for (uint8_t x : img)
      if (x >= G.prime()) r.wellformed = false;
  }
  if (!r.wellformed) return r;

  const auto n = static_cast<size_t>(G.order());
  auto apply = [&](uint32_t x) {
    GroupElement g = G.element_at(x);
    GroupElement out = G.identity();
    for (size_t i = 0; i < g.size(); ++i)
      if (g[i]) out = G.mul(out, G.pow(cert.images[i], g[i]));
    return static_cast<uint32_t>(G.index_of(out));
  };

  // homomorphism: every defining relation maps to a relation
  {
    const PcPresentation& P = G.presentation();
    auto eval_tail = [&](const Word& w) {
      GroupElement r2 = G.identity();
      for (const auto& f : w)
        r2 = G.mul(r2, G.pow(cert.images[static_cast<size_t>(f.gen) - 1], f.exp));
      return r2;
    };
    r.homomorphism = true;
    for (int i = 1; i <= P.ngens && r.homomorphism; ++i)
      r.homomorphism =
          G.pow(cert.images[static_cast<size_t>(i) - 1], P.prime) == eval_tail(P.power_tail(i));
    for (int j = 2; j <= P.ngens && r.homomorphism; ++j)
      for (int i = 1; i < j && r.homomorphism; ++i)
        r.homomorphism = G.comm(cert.images[static_cast<size_t>(j) - 1],
                                cert.images[static_cast<size_t>(i) - 1]) ==
                         eval_tail(P.comm_tail(j, i));
    if (!r.homomorphism) return r;
  }

  // bijective: the full map hits every element exactly once
  std::vector<uint32_t> image_of(n);
  {
    std::vector<char> hit(n, 0);
    r.bijective = true;
    for (uint32_t x = 0; x < n; ++x) {
      image_of[x] = apply(x);
      if (hit[image_of[x]]) {
        r.bijective = false;
        break;
      }
      hit[image_of[x]] = 1;
    }
    if (!r.bijective) return r;
  }

  // order p: iterate the map p times on every generator; also demand != id
  {
    bool is_id = true;
    for (int i = 1; i <= G.ngens(); ++i)
      if (image_of[G.index_of(G.generator(i))] != G.index_of(G.generator(i))) is_id = false;
    bool pth_id = true;
    for (int i = 1; i <= G.ngens(); ++i) {
      uint32_t x = static_cast<uint32_t>(G.index_of(G.generator(i)));
      uint32_t y = x;
      for (int t = 0; t < G.prime(); ++t) y = image_of[y];
      if (y != x) pth_id = false;
    }
    r.order_p = !is_id && pth_id;
  }

  // Phi(G) fixed elementwise
  {
    std::vector<char> phi = oracle_detail::frattini_mask(G);
    r.fixes_frattini = true;
    for (uint32_t x = 0; x < n; ++x)
      if (phi[x] && image_of[x] != x) {
        r.fixes_frattini = false;
        break;
      }
  }

  // non-inner: no h conjugates every generator the same way
  {
    r.noninner = true;
    for (uint32_t h = 0; h < n && r.noninner; ++h) {
      GroupElement eh = G.element_at(h);
      bool matches = true;
      for (int i = 1; i <= G.ngens() && matches; ++i)
        matches = G.conj(G.generator(i), eh) == cert.images[static_cast<size_t>(i) - 1];
      if (matches) r.noninner = false;
    }
  }
  return r;
}

}  // namespace thinaut
