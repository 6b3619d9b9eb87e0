#pragma once

// Independent oracles and generators for the tests. Nothing here calls into
// the library's search or construction code; only the plain data accessors of
// Nfa, SltSpec and Code are used.

#include <algorithm>
#include <filesystem>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "sltk/automata.hpp"
#include "sltk/codes.hpp"
#include "sltk/io.hpp"
#include "sltk/slt.hpp"

namespace oracle {

using sltk::DigitWord;
using sltk::Nfa;
using sltk::State;
using sltk::Symbol;
using sltk::Word;

inline bool is_final(const Nfa& m, State q) {
  return std::find(m.finals().begin(), m.finals().end(), q) != m.finals().end();
}

/// Subset simulation over the raw transition list.
inline bool accepts(const Nfa& m, const Word& w) {
  if (w.empty()) return false;
  std::set<State> current{m.initial()};
  for (Symbol a : w) {
    std::set<State> next;
    for (const auto& t : m.transitions()) {
      if (t.letter == a && current.count(t.from)) next.insert(t.to);
    }
    current = std::move(next);
  }
  return std::any_of(current.begin(), current.end(), [&](State q) { return is_final(m, q); });
}

/// Every word of exactly `length` letters over {0..alphabet-1}, lexicographic.
inline std::vector<Word> all_words(std::size_t alphabet, std::size_t length) {
  std::vector<Word> out{Word{}};
  for (std::size_t i = 0; i < length; ++i) {
    std::vector<Word> next;
    for (const Word& w : out) {
      for (Symbol a = 0; a < alphabet; ++a) {
        Word x = w;
        x.push_back(a);
        next.push_back(std::move(x));
      }
    }
    out = std::move(next);
  }
  return out;
}

/// Accepted words of length 1..max_len, shortlex.
inline std::vector<Word> language(const Nfa& m, std::size_t max_len) {
  std::vector<Word> out;
  for (std::size_t len = 1; len <= max_len; ++len) {
    for (Word& w : all_words(m.alphabet_size(), len)) {
      if (oracle::accepts(m, w)) out.push_back(std::move(w));
    }
  }
  return out;
}

/// The only "00" in w is its last two digits.
inline bool in_S(const DigitWord& w) {
  const std::size_t n = w.size();
  if (n < 2 || w[n - 1] != 0 || w[n - 2] != 0) return false;
  for (std::size_t i = 0; i + 2 < n; ++i) {
    if (w[i] == 0 && w[i + 1] == 0) return false;
  }
  return true;
}

inline std::vector<DigitWord> brute_S(std::size_t h, std::size_t m) {
  std::vector<DigitWord> out;
  for (const Word& w : all_words(h, m)) {
    DigitWord d(w.begin(), w.end());
    if (in_S(d)) out.push_back(d);
  }
  return out;
}

inline std::set<Word> as_set(const sltk::FixedWordSet& s) {
  const auto words = s.words();
  return {words.begin(), words.end()};
}

/// Membership straight from the definition of a k-slt language.
class SltOracle {
 public:
  explicit SltOracle(const sltk::SltSpec& s)
      : k_(s.width()), short_(s.short_words().begin(), s.short_words().end()),
        I_(as_set(s.prefixes())), T_(as_set(s.suffixes())), F_(as_set(s.factors())) {}

  bool operator()(const Word& w) const {
    if (w.empty()) return false;
    if (w.size() < k_) return short_.count(w) > 0;
    if (!I_.count(Word(w.begin(), w.begin() + k_ - 1))) return false;
    if (!T_.count(Word(w.end() - (k_ - 1), w.end()))) return false;
    for (std::size_t i = 0; i + k_ <= w.size(); ++i) {
      if (!F_.count(Word(w.begin() + i, w.begin() + i + k_))) return false;
    }
    return true;
  }

 private:
  std::size_t k_;
  std::set<Word> short_, I_, T_, F_;
};

inline bool slt_member(const sltk::SltSpec& s, const Word& w) { return SltOracle(s)(w); }

/// All paths of exactly `length` transitions leaving `origin`, as state lists
/// plus labels.
struct RawPath {
  std::vector<State> states;  // length + 1 entries
  Word label;
};

inline void extend(const Nfa& m, RawPath& p, std::size_t length, std::vector<RawPath>& out) {
  if (p.label.size() == length) {
    out.push_back(p);
    return;
  }
  for (const auto& t : m.transitions()) {
    if (t.from != p.states.back()) continue;
    p.states.push_back(t.to);
    p.label.push_back(t.letter);
    extend(m, p, length, out);
    p.states.pop_back();
    p.label.pop_back();
  }
}

inline std::vector<RawPath> paths(const Nfa& m, State origin, std::size_t length) {
  std::vector<RawPath> out;
  RawPath p{{origin}, {}};
  extend(m, p, length, out);
  return out;
}

/// Block-wise [eta]: block i starts at transition i*m and pairs its letters with
/// the leading digits of its origin's codeword.
inline Word encode(const RawPath& p, const sltk::Code& code, std::size_t h) {
  Word z;
  const std::size_t m = code.m();
  for (std::size_t i = 0; i < p.label.size(); ++i) {
    const State origin = p.states[(i / m) * m];
    z.push_back(static_cast<Symbol>(p.label[i] * h + code[origin][i % m]));
  }
  return z;
}

struct MainSets {
  std::set<Word> I, T, F;
};

/// I, T and F of the main construction by explicit enumeration of consecutive
/// m-path pairs and triples.
inline MainSets main_sets(const Nfa& m, const sltk::Code& code, std::size_t h) {
  const std::size_t b = code.m();
  MainSets out;
  for (const RawPath& p : paths(m, m.initial(), 2 * b)) {
    const Word z = encode(p, code, h);
    out.I.insert(Word(z.begin(), z.begin() + 2 * b - 1));
  }
  for (State q = 0; q < m.num_states(); ++q) {
    for (const RawPath& p : paths(m, q, 3 * b)) {
      const Word z = encode(p, code, h);
      for (std::size_t i = 0; i + 2 * b <= z.size(); ++i) out.F.insert(Word(z.begin() + i, z.begin() + i + 2 * b));
    }
    for (std::size_t j = 0; j < b; ++j) {
      for (const RawPath& p : paths(m, q, 2 * b + j)) {
        if (!is_final(m, p.states.back())) continue;
        const Word z = encode(p, code, h);
        out.T.insert(Word(z.end() - (2 * b - 1), z.end()));
      }
    }
  }
  return out;
}

/// Uniformly picks a transition among those that can still end in a final
/// state after exactly the remaining number of steps. Empty when impossible.
inline Word random_member(const Nfa& m, std::size_t length, std::mt19937_64& rng) {
  // can[r][q]: some path of r steps from q ends in a final state.
  std::vector<std::vector<char>> can(length + 1, std::vector<char>(m.num_states(), 0));
  for (State q = 0; q < m.num_states(); ++q) can[0][q] = is_final(m, q);
  for (std::size_t r = 1; r <= length; ++r) {
    for (const auto& t : m.transitions()) {
      if (can[r - 1][t.to]) can[r][t.from] = 1;
    }
  }
  if (length == 0 || !can[length][m.initial()]) return {};
  Word w;
  State q = m.initial();
  for (std::size_t r = length; r > 0; --r) {
    std::vector<sltk::Transition> options;
    for (const auto& t : m.transitions()) {
      if (t.from == q && can[r - 1][t.to]) options.push_back(t);
    }
    const auto& t = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
    w.push_back(t.letter);
    q = t.to;
  }
  return w;
}

inline std::string corpus_dir() { return SLTK_CORPUS_DIR; }

inline Nfa load(const std::string& name) {
  return sltk::parse_nfa(sltk::read_file(corpus_dir() + "/" + name));
}

inline std::vector<std::string> corpus_files() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(corpus_dir())) {
    if (e.path().extension() == ".nfa") out.push_back(e.path().filename().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// (a b^h)+ : a machine whose language is (h+1)-slt and not h-slt.
inline Nfa ab_power_plus(std::size_t h) {
  std::vector<sltk::Transition> t;
  // 0 -a-> 1 -b-> 2 ... -b-> h+1 -a-> 1
  t.push_back({0, 0, 1});
  for (State q = 1; q <= h; ++q) t.push_back({q, 1, q + 1});
  t.push_back({static_cast<State>(h + 1), 0, 1});
  return Nfa({"a", "b"}, h + 2, 0, {static_cast<State>(h + 1)}, t);
}

}  // namespace oracle
