#pragma once

// Collection: rewriting an arbitrary word over the pc generators into its
// unique normal form.  The working word is a letter sequence; we repeatedly
// fix the leftmost violation of normal-form shape:
//
//   exp < 0      a_i^e          ->  a_i^{e+p} w_i^{-1}        (w_i = pow tail)
//   exp >= p     a_i^e          ->  a_i^{e-p} w_i
//   a_j a_i adjacent with j > i ->  a_j^{s-1} a_i a_j w_ji a_i^{t-1}
//
// Tails only involve higher-indexed generators, so for a consistent
// nilpotent presentation this terminates; the step budget turns a
// non-terminating bug into a diagnostic instead of a hang.

#include <string>
#include <vector>

#include "presentation.hpp"

namespace thinaut {

inline constexpr long long kDefaultCollectBudget = 1'000'000;

inline GroupElement collect(const PcPresentation& P, const Word& w,
                            long long budget = kDefaultCollectBudget) {
  const int p = P.prime;
  const int n = P.ngens;
  std::vector<WordFactor> ls;
  ls.reserve(w.size() + 8);
  for (const auto& f : w) {
    if (f.gen < 1 || f.gen > n)
      throw ValidationError("collect: generator index " + std::to_string(f.gen) + " out of range");
    if (f.exp != 0) ls.push_back(f);
  }

  long long steps = 0;
  auto charge = [&] {
    if (++steps > budget) throw InternalError("collect: rewrite budget exhausted");
  };

  size_t k = 0;
  while (k < ls.size()) {
    WordFactor& cur = ls[k];
    if (cur.exp == 0) {
      ls.erase(ls.begin() + k);
      if (k > 0) --k;
      continue;
    }
    if (cur.exp < 0) {
      charge();
      cur.exp += p;
      Word tinv = inverse_word(P.power_tail(cur.gen));
      ls.insert(ls.begin() + k + 1, tinv.begin(), tinv.end());
      continue;
    }
    if (cur.exp >= p) {
      charge();
      cur.exp -= p;
      const Word& t = P.power_tail(cur.gen);
      ls.insert(ls.begin() + k + 1, t.begin(), t.end());
      continue;
    }
    if (k + 1 < ls.size()) {
      WordFactor& nx = ls[k + 1];
      if (nx.gen == cur.gen) {
        charge();
        cur.exp += nx.exp;
        ls.erase(ls.begin() + k + 1);
        continue;
      }
      if (cur.gen > nx.gen) {
        charge();
        // a_j^s a_i^t -> a_j^{s-1} (a_i a_j w_ji) a_i^{t-1}
        const int j = cur.gen, i = nx.gen;
        const long long s = cur.exp, t = nx.exp;
        const Word& tail = P.comm_tail(j, i);
        std::vector<WordFactor> repl;
        repl.reserve(tail.size() + 4);
        if (s > 1) repl.push_back({j, s - 1});
        repl.push_back({i, 1});
        repl.push_back({j, 1});
        repl.insert(repl.end(), tail.begin(), tail.end());
        if (t > 1) repl.push_back({i, t - 1});
        ls.erase(ls.begin() + k, ls.begin() + k + 2);
        ls.insert(ls.begin() + k, repl.begin(), repl.end());
        if (k > 0) --k;  // the moved a_i may now clash with its left neighbour
        continue;
      }
    }
    ++k;
  }

  GroupElement e(static_cast<size_t>(n), 0);
  int last = 0;
  for (const auto& f : ls) {
    if (f.gen <= last || f.exp < 1 || f.exp >= p)
      throw InternalError("collect: produced a non-normal word");
    last = f.gen;
    e[static_cast<size_t>(f.gen) - 1] = static_cast<uint8_t>(f.exp);
  }
  return e;
}

// ----- consistency --------------------------------------------------------

struct OverlapFailure {
  std::string kind;  // "assoc", "pow-right", "pow-left", "pow-self"
  int i = 0, j = 0, k = 0;
  GroupElement lhs, rhs;
};

struct ConsistencyReport {
  std::vector<OverlapFailure> failures;
  long long overlaps_checked = 0;
  bool ok() const { return failures.empty(); }
};

namespace detail {
// The one-step rewrite image of a_j a_i (j > i): a_i a_j [a_j, a_i].
inline Word swap_image(const PcPresentation& P, int j, int i) {
  Word w{{i, 1}, {j, 1}};
  const Word& t = P.comm_tail(j, i);
  w.insert(w.end(), t.begin(), t.end());
  return w;
}
}  // namespace detail

// Evaluates the standard overlap identities for a refined pc presentation
// (all relative orders equal p) by collecting both routes of each critical
// pair.  Failures are data, not errors.
inline ConsistencyReport check_consistency(const PcPresentation& P,
                                           long long budget = kDefaultCollectBudget) {
  validate_presentation(P);
  ConsistencyReport rep;
  const int n = P.ngens;
  const int p = P.prime;
  auto record = [&](const std::string& kind, int i, int j, int k, const Word& lw,
                    const Word& rw) {
    ++rep.overlaps_checked;
    GroupElement l = collect(P, lw, budget);
    GroupElement r = collect(P, rw, budget);
    if (l != r) rep.failures.push_back({kind, i, j, k, l, r});
  };

  // (a_k a_j) a_i vs a_k (a_j a_i) for k > j > i.
  for (int k = 3; k <= n; ++k)
    for (int j = 2; j < k; ++j)
      for (int i = 1; i < j; ++i)
        record("assoc", i, j, k,
               word_concat(detail::swap_image(P, k, j), {{i, 1}}),
               word_concat({{k, 1}}, detail::swap_image(P, j, i)));

  // a_j^p a_i vs a_j^{p-1} (a_j a_i)  and  a_j a_i^p vs (a_j a_i) a_i^{p-1}.
  for (int j = 2; j <= n; ++j)
    for (int i = 1; i < j; ++i) {
      record("pow-right", i, j, 0,
             word_concat(P.power_tail(j), {{i, 1}}),
             word_concat({{j, p - 1}}, detail::swap_image(P, j, i)));
      record("pow-left", i, j, 0,
             word_concat({{j, 1}}, P.power_tail(i)),
             word_concat(detail::swap_image(P, j, i), {{i, p - 1}}));
    }

  // a_i a_i^p vs a_i^p a_i.
  for (int i = 1; i <= n; ++i)
    record("pow-self", i, 0, 0,
           word_concat({{i, 1}}, P.power_tail(i)),
           word_concat(P.power_tail(i), {{i, 1}}));

  return rep;
}

}  // namespace thinaut
