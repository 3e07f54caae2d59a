#pragma once

// Power-commutator presentations of finite p-groups.
//
// Generators a1..an over an odd or even prime p, with relations
//   pow i      -> tail of a_i^p, a canonical word in generators of index > i
//   comm j i   -> tail of [a_j, a_i] (j > i), canonical word in generators of index > j
// An omitted pow means a_i^p = 1; an omitted comm means the pair commutes.
// Every generator has relative order p, so normal forms are exponent
// vectors in [0, p-1]^n and the group has order p^n once the presentation
// is consistent.

#include <cstdint>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace thinaut {

struct WordFactor {
  int gen = 0;        // 1-based generator index
  long long exp = 0;  // arbitrary integer before collection
  friend bool operator==(const WordFactor&, const WordFactor&) = default;
};

// A free word over the pc generators; not necessarily in normal form.
using Word = std::vector<WordFactor>;

// Normal form: exponent vector, entry i-1 is the exponent of a_i in [0, p-1].
using GroupElement = std::vector<uint8_t>;

inline Word inverse_word(const Word& w) {
  Word r;
  r.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back({it->gen, -it->exp});
  return r;
}

inline Word word_concat(const Word& a, const Word& b) {
  Word r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

// a^-1 b^-1 a b as a word.
inline Word word_comm(const Word& a, const Word& b) {
  return word_concat(word_concat(inverse_word(a), inverse_word(b)), word_concat(a, b));
}

inline Word word_of(const GroupElement& e) {
  Word w;
  for (size_t i = 0; i < e.size(); ++i)
    if (e[i] != 0) w.push_back({static_cast<int>(i) + 1, e[i]});
  return w;
}

inline bool is_prime(long long v) {
  if (v < 2) return false;
  for (long long d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

struct PcPresentation {
  std::string name;
  int prime = 0;
  int ngens = 0;
  std::map<int, Word> power_tails;                 // i -> tail of a_i^p
  std::map<std::pair<int, int>, Word> comm_tails;  // (j, i), j > i -> tail of [a_j, a_i]

  const Word& power_tail(int i) const {
    static const Word kEmpty;
    auto it = power_tails.find(i);
    return it == power_tails.end() ? kEmpty : it->second;
  }
  const Word& comm_tail(int j, int i) const {
    static const Word kEmpty;
    auto it = comm_tails.find({j, i});
    return it == comm_tails.end() ? kEmpty : it->second;
  }
  bool commutes(int j, int i) const { return !comm_tails.count({j, i}); }
};

// Canonical tail: strictly increasing indices, all > min_index, exponents in [1, p-1].
inline void validate_canonical_tail(const Word& w, int prime, int ngens, int min_index,
                                    const std::string& ctx) {
  int last = min_index;
  for (const auto& f : w) {
    if (f.gen <= min_index)
      throw ValidationError(ctx + ": index-ordering violation (index " +
                            std::to_string(f.gen) + " not above " + std::to_string(min_index) + ")");
    if (f.gen <= last)
      throw ValidationError(ctx + ": indices must be strictly increasing");
    if (f.gen > ngens)
      throw ValidationError(ctx + ": generator index " + std::to_string(f.gen) + " out of range");
    if (f.exp < 1 || f.exp > prime - 1)
      throw ValidationError(ctx + ": exponent out of range [1, p-1]");
    last = f.gen;
  }
}

inline void validate_presentation(const PcPresentation& P) {
  if (!is_prime(P.prime)) throw ValidationError("prime field is not a prime");
  if (P.ngens < 1) throw ValidationError("ngens must be positive");
  for (const auto& [i, tail] : P.power_tails) {
    if (i < 1 || i > P.ngens) throw ValidationError("pow index out of range");
    validate_canonical_tail(tail, P.prime, P.ngens, i, "pow " + std::to_string(i));
  }
  for (const auto& [key, tail] : P.comm_tails) {
    auto [j, i] = key;
    if (i < 1 || j <= i || j > P.ngens)
      throw ValidationError("comm " + std::to_string(j) + " " + std::to_string(i) +
                            ": requires n >= j > i >= 1");
    validate_canonical_tail(tail, P.prime, P.ngens, j,
                            "comm " + std::to_string(j) + " " + std::to_string(i));
  }
}

namespace detail {

inline std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string tok;
  while (is >> tok) out.push_back(tok);
  return out;
}

inline long long parse_int(const std::string& tok, int line, const std::string& what) {
  try {
    size_t pos = 0;
    long long v = std::stoll(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, "expected integer for " + what + ", got '" + tok + "'");
  }
}

// Factor token: a<k> or a<k>^<e>.
inline WordFactor parse_factor(const std::string& tok, int line) {
  if (tok.size() < 2 || tok[0] != 'a')
    throw ParseError(line, "bad word factor '" + tok + "'");
  auto caret = tok.find('^');
  std::string idx = tok.substr(1, caret == std::string::npos ? std::string::npos : caret - 1);
  WordFactor f;
  f.gen = static_cast<int>(parse_int(idx, line, "generator index"));
  f.exp = caret == std::string::npos ? 1 : parse_int(tok.substr(caret + 1), line, "exponent");
  return f;
}

inline Word parse_word(const std::vector<std::string>& toks, size_t from, int line) {
  if (from >= toks.size()) throw ParseError(line, "missing word after '='");
  if (toks.size() == from + 1 && toks[from] == "1") return {};
  Word w;
  for (size_t t = from; t < toks.size(); ++t) w.push_back(parse_factor(toks[t], line));
  return w;
}

}  // namespace detail

inline PcPresentation parse_presentation(std::istream& in) {
  PcPresentation P;
  bool have_name = false, have_prime = false, have_ngens = false;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    auto toks = detail::split_ws(raw);
    if (toks.empty()) continue;
    const std::string& kw = toks[0];
    if (kw == "group") {
      if (toks.size() != 2) throw ParseError(line, "usage: group <identifier>");
      P.name = toks[1];
      have_name = true;
    } else if (kw == "prime") {
      if (toks.size() != 2) throw ParseError(line, "usage: prime <p>");
      long long p = detail::parse_int(toks[1], line, "prime");
      if (!is_prime(p)) throw ParseError(line, "'" + toks[1] + "' is not prime");
      if (p > 251) throw ParseError(line, "prime too large for exponent-vector encoding");
      P.prime = static_cast<int>(p);
      have_prime = true;
    } else if (kw == "ngens") {
      if (toks.size() != 2) throw ParseError(line, "usage: ngens <n>");
      long long n = detail::parse_int(toks[1], line, "ngens");
      if (n < 1 || n > 64) throw ParseError(line, "ngens out of range [1, 64]");
      P.ngens = static_cast<int>(n);
      have_ngens = true;
    } else if (kw == "pow") {
      if (!have_prime || !have_ngens) throw ParseError(line, "pow before prime/ngens");
      if (toks.size() < 4 || toks[2] != "=") throw ParseError(line, "usage: pow <i> = <word>");
      int i = static_cast<int>(detail::parse_int(toks[1], line, "pow index"));
      if (i < 1 || i > P.ngens) throw ParseError(line, "pow index out of range");
      if (P.power_tails.count(i)) throw ParseError(line, "duplicate pow relation");
      Word w = detail::parse_word(toks, 3, line);
      try {
        validate_canonical_tail(w, P.prime, P.ngens, i, "pow " + std::to_string(i));
      } catch (const ValidationError& e) {
        throw ParseError(line, e.what());
      }
      if (!w.empty()) P.power_tails.emplace(i, std::move(w));
    } else if (kw == "comm") {
      if (!have_prime || !have_ngens) throw ParseError(line, "comm before prime/ngens");
      if (toks.size() < 5 || toks[3] != "=") throw ParseError(line, "usage: comm <j> <i> = <word>");
      int j = static_cast<int>(detail::parse_int(toks[1], line, "comm index j"));
      int i = static_cast<int>(detail::parse_int(toks[2], line, "comm index i"));
      if (j <= i || i < 1 || j > P.ngens)
        throw ParseError(line, "index-ordering violation: comm requires n >= j > i >= 1");
      if (P.comm_tails.count({j, i})) throw ParseError(line, "duplicate comm relation");
      Word w = detail::parse_word(toks, 4, line);
      try {
        validate_canonical_tail(w, P.prime, P.ngens, j,
                                "comm " + std::to_string(j) + " " + std::to_string(i));
      } catch (const ValidationError& e) {
        throw ParseError(line, e.what());
      }
      if (!w.empty()) P.comm_tails.emplace(std::make_pair(j, i), std::move(w));
    } else {
      throw ParseError(line, "unknown directive '" + kw + "'");
    }
  }
  if (!have_name) throw ParseError(line, "missing 'group' directive");
  if (!have_prime) throw ParseError(line, "missing 'prime' directive");
  if (!have_ngens) throw ParseError(line, "missing 'ngens' directive");
  return P;
}

inline PcPresentation parse_presentation(const std::string& text) {
  std::istringstream is(text);
  return parse_presentation(is);
}

}  // namespace thinaut
