#pragma once

// A finite p-group presented by a consistent pc presentation.  Elements are
// exponent vectors; the element of index m has the exponents of m written in
// base p, most significant digit first, so index order equals lexicographic
// order of normal forms.
//
// Everything is immutable after construction; the multiplication table (for
// small orders) is built eagerly, so a Group can be shared across workers.

#include <cstdint>
#include <string>
#include <vector>

#include "collect.hpp"
#include "errors.hpp"
#include "presentation.hpp"

namespace thinaut {

struct GroupOptions {
  int64_t desk_bound = 78125;   // 5^7: largest order we materialize
  int64_t memo_bound = 243;     // 3^5: full multiplication table cutoff
  long long collect_budget = kDefaultCollectBudget;
};

class Group {
 public:
  explicit Group(PcPresentation pres, GroupOptions opt = {}) : pres_(std::move(pres)), opt_(opt) {
    validate_presentation(pres_);
    order_ = 1;
    for (int i = 0; i < pres_.ngens; ++i) {
      order_ *= pres_.prime;
      if (order_ > opt_.desk_bound)
        throw BoundExceeded("group order p^n exceeds the desk-scale bound " +
                            std::to_string(opt_.desk_bound));
    }
    ConsistencyReport rep = check_consistency(pres_, opt_.collect_budget);
    if (!rep.ok()) {
      const auto& f = rep.failures.front();
      throw ConsistencyError("presentation '" + pres_.name + "' is inconsistent: " + f.kind +
                             " overlap (" + std::to_string(f.i) + "," + std::to_string(f.j) + "," +
                             std::to_string(f.k) + ") disagrees; " +
                             std::to_string(rep.failures.size()) + " failing overlap(s)");
    }
    if (order_ <= opt_.memo_bound) build_tables();
  }

  const PcPresentation& presentation() const { return pres_; }
  const std::string& name() const { return pres_.name; }
  int prime() const { return pres_.prime; }
  int ngens() const { return pres_.ngens; }
  int64_t order() const { return order_; }
  bool memoized() const { return !mul_table_.empty(); }

  GroupElement identity() const { return GroupElement(static_cast<size_t>(pres_.ngens), 0); }
  bool is_identity(const GroupElement& a) const {
    for (uint8_t x : a)
      if (x) return false;
    return true;
  }
  GroupElement generator(int i) const {
    if (i < 1 || i > pres_.ngens) throw ValidationError("generator index out of range");
    GroupElement e = identity();
    e[static_cast<size_t>(i) - 1] = 1;
    return e;
  }

  uint64_t index_of(const GroupElement& a) const {
    check(a);
    uint64_t idx = 0;
    for (uint8_t x : a) idx = idx * static_cast<uint64_t>(pres_.prime) + x;
    return idx;
  }
  GroupElement element_at(uint64_t idx) const {
    GroupElement e(static_cast<size_t>(pres_.ngens), 0);
    for (int i = pres_.ngens - 1; i >= 0; --i) {
      e[static_cast<size_t>(i)] = static_cast<uint8_t>(idx % pres_.prime);
      idx /= pres_.prime;
    }
    if (idx != 0) throw ValidationError("element index out of range");
    return e;
  }

  // All p^n normal forms in lexicographic order.
  std::vector<GroupElement> elements() const {
    std::vector<GroupElement> out;
    out.reserve(static_cast<size_t>(order_));
    for (int64_t m = 0; m < order_; ++m) out.push_back(element_at(static_cast<uint64_t>(m)));
    return out;
  }

  GroupElement collect_word(const Word& w) const { return collect(pres_, w, opt_.collect_budget); }

  GroupElement mul(const GroupElement& a, const GroupElement& b) const {
    check(a);
    check(b);
    if (memoized()) return element_at(mul_table_[index_of(a) * static_cast<uint64_t>(order_) + index_of(b)]);
    return collect(pres_, word_concat(word_of(a), word_of(b)), opt_.collect_budget);
  }
  uint32_t mul_idx(uint32_t a, uint32_t b) const {
    if (memoized()) return mul_table_[static_cast<uint64_t>(a) * static_cast<uint64_t>(order_) + b];
    return static_cast<uint32_t>(index_of(mul(element_at(a), element_at(b))));
  }

  GroupElement inv(const GroupElement& a) const {
    check(a);
    if (memoized()) return element_at(inv_table_[index_of(a)]);
    return collect(pres_, inverse_word(word_of(a)), opt_.collect_budget);
  }
  uint32_t inv_idx(uint32_t a) const {
    if (memoized()) return inv_table_[a];
    return static_cast<uint32_t>(index_of(inv(element_at(a))));
  }

  // g^-1 a g
  GroupElement conj(const GroupElement& a, const GroupElement& g) const {
    return mul(mul(inv(g), a), g);
  }
  // a^-1 b^-1 a b
  GroupElement comm(const GroupElement& a, const GroupElement& b) const {
    return mul(mul(inv(a), inv(b)), mul(a, b));
  }

  GroupElement pow(const GroupElement& a, long long k) const {
    check(a);
    if (k < 0) return pow(inv(a), -k);
    k %= element_order(a);
    GroupElement acc = identity(), base = a;
    while (k > 0) {
      if (k & 1) acc = mul(acc, base);
      base = mul(base, base);
      k >>= 1;
    }
    return acc;
  }

  int64_t element_order(const GroupElement& a) const {
    check(a);
    int64_t ord = 1;
    GroupElement x = a;
    while (!is_identity(x)) {
      GroupElement y = identity();
      for (int t = 0; t < pres_.prime; ++t) y = mul(y, x);
      x = y;
      ord *= pres_.prime;
      if (ord > order_) throw InternalError("element order exceeds group order");
    }
    return ord;
  }

 private:
  void check(const GroupElement& a) const {
    if (a.size() != static_cast<size_t>(pres_.ngens))
      throw ValidationError("element does not belong to this group (wrong rank)");
  }

  void build_tables() {
    const auto ord = static_cast<uint64_t>(order_);
    mul_table_.assign(ord * ord, 0);
    inv_table_.assign(ord, 0);
    std::vector<GroupElement> elems;
    elems.reserve(ord);
    for (uint64_t m = 0; m < ord; ++m) elems.push_back(element_at(m));
    for (uint64_t a = 0; a < ord; ++a) {
      const Word wa = word_of(elems[a]);
      for (uint64_t b = 0; b < ord; ++b) {
        GroupElement r = collect(pres_, word_concat(wa, word_of(elems[b])), opt_.collect_budget);
        uint64_t ri = 0;
        for (uint8_t x : r) ri = ri * static_cast<uint64_t>(pres_.prime) + x;
        mul_table_[a * ord + b] = static_cast<uint32_t>(ri);
        if (ri == 0) inv_table_[a] = static_cast<uint32_t>(b);
      }
    }
  }

  PcPresentation pres_;
  GroupOptions opt_;
  int64_t order_ = 0;
  std::vector<uint32_t> mul_table_;
  std::vector<uint32_t> inv_table_;
};

}  // namespace thinaut
