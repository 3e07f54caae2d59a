#pragma once

#include <fstream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "thinaut/group.hpp"

namespace testutil {

inline thinaut::PcPresentation load_presentation(const std::string& name) {
  std::ifstream in(std::string(THINAUT_DATA_DIR) + "/" + name);
  if (!in) throw std::runtime_error("missing corpus file " + name);
  return thinaut::parse_presentation(in);
}

inline const thinaut::Group& corpus_group(const std::string& name) {
  static std::map<std::string, thinaut::Group> cache;
  auto it = cache.find(name);
  if (it == cache.end())
    it = cache.emplace(name, thinaut::Group(load_presentation(name))).first;
  return it->second;
}

inline const thinaut::Group& es27() { return corpus_group("es27.pcp"); }
inline const thinaut::Group& w81() { return corpus_group("w81.pcp"); }
inline const thinaut::Group& t243() { return corpus_group("t243.pcp"); }
inline const thinaut::Group& e9() { return corpus_group("e9.pcp"); }
inline const thinaut::Group& e27() { return corpus_group("e27.pcp"); }
inline const thinaut::Group& m625() { return corpus_group("m625.pcp"); }

inline std::vector<std::string> corpus_files() {
  return {"es27.pcp", "w81.pcp", "t243.pcp", "e9.pcp", "e27.pcp", "m625.pcp"};
}

inline thinaut::Word random_word(std::mt19937_64& rng, int ngens, int p, int maxlen) {
  thinaut::Word w;
  int len = 1 + static_cast<int>(rng() % static_cast<uint64_t>(maxlen));
  for (int t = 0; t < len; ++t) {
    int g = 1 + static_cast<int>(rng() % static_cast<uint64_t>(ngens));
    long long e = 1 + static_cast<long long>(rng() % static_cast<uint64_t>(2 * p));
    if (rng() & 1) e = -e;
    w.push_back({g, e});
  }
  return w;
}

// Independent multiplication oracle: base Z_M^rank with an order-p generator
// s acting by the matrix T (s^-1 v s = T v).  Elements are written s^k v.
struct SemidirectModel {
  int p = 3;
  long long M = 3;
  std::vector<std::vector<long long>> T;  // rank x rank
  using Elt = std::pair<int, std::vector<long long>>;

  int rank() const { return static_cast<int>(T.size()); }

  std::vector<long long> apply_T(const std::vector<long long>& v) const {
    std::vector<long long> r(v.size(), 0);
    for (size_t i = 0; i < v.size(); ++i) {
      for (size_t j = 0; j < v.size(); ++j) r[i] += T[i][j] * v[j];
      r[i] = ((r[i] % M) + M) % M;
    }
    return r;
  }
  std::vector<long long> act(std::vector<long long> v, int k) const {
    k = ((k % p) + p) % p;
    for (int t = 0; t < k; ++t) v = apply_T(v);
    return v;
  }
  Elt mul(const Elt& a, const Elt& b) const {
    Elt r;
    r.first = (a.first + b.first) % p;
    r.second = act(a.second, b.first);
    for (size_t i = 0; i < r.second.size(); ++i)
      r.second[i] = ((r.second[i] + b.second[i]) % M + M) % M;
    return r;
  }
  Elt identity() const { return {0, std::vector<long long>(static_cast<size_t>(rank()), 0)}; }
  Elt inv(const Elt& a) const {
    Elt r;
    r.first = (p - a.first) % p;
    auto v = act(a.second, (p - a.first) % p);
    for (auto& x : v) x = (M - x) % M;
    r.second = v;
    return r;
  }
};

struct ModeledGroup {
  SemidirectModel model;
  std::vector<SemidirectModel::Elt> pc_gens;  // model image of a1..an
};

// a1 = s; a2..an = e_rank, e_{rank-1}, ..., e_1 (a chief-series refinement).
inline ModeledGroup shift_model(int p, int rank) {
  ModeledGroup mg;
  mg.model.p = p;
  mg.model.M = p;
  mg.model.T.assign(static_cast<size_t>(rank), std::vector<long long>(static_cast<size_t>(rank), 0));
  for (int i = 0; i < rank; ++i) {
    mg.model.T[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;
    if (i + 1 < rank) mg.model.T[static_cast<size_t>(i)][static_cast<size_t>(i) + 1] = 1;
  }
  mg.pc_gens.push_back({1, std::vector<long long>(static_cast<size_t>(rank), 0)});
  for (int g = rank; g >= 1; --g) {
    std::vector<long long> v(static_cast<size_t>(rank), 0);
    v[static_cast<size_t>(g) - 1] = 1;
    mg.pc_gens.push_back({0, v});
  }
  return mg;
}

inline ModeledGroup es27_model() { return shift_model(3, 2); }
inline ModeledGroup w81_model() { return shift_model(3, 3); }
inline ModeledGroup m625_model() { return shift_model(5, 3); }

// (Z[w]/9) : C3 with s acting as multiplication by the cube root of unity w;
// coordinates (x, y) stand for x + y w, and w (x + y w) = -y + (x - y) w.
inline ModeledGroup t243_model() {
  ModeledGroup mg;
  mg.model.p = 3;
  mg.model.M = 9;
  mg.model.T = {{0, -1}, {1, -1}};
  mg.pc_gens = {
      {1, {0, 0}},  // a1 = s
      {0, {1, 0}},  // a2 = 1
      {0, {8, 1}},  // a3 = w - 1
      {0, {0, 6}},  // a4 = (w - 1)^2 = -3w
      {0, {3, 6}},  // a5 = (w - 1)^3 = 3 + 6w
  };
  return mg;
}

// Model image of a pc normal form.
inline SemidirectModel::Elt model_of(const ModeledGroup& mg, const thinaut::GroupElement& e) {
  auto r = mg.model.identity();
  for (size_t i = 0; i < e.size(); ++i)
    for (int t = 0; t < e[i]; ++t) r = mg.model.mul(r, mg.pc_gens[i]);
  return r;
}

}  // namespace testutil
