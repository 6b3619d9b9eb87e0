#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sltk/automata.hpp"
#include "sltk/types.hpp"

namespace sltk {

/// Sorted, deduplicated set of words sharing one length, stored flat.
class FixedWordSet {
 public:
  explicit FixedWordSet(std::size_t word_length = 0) : length_(word_length) {}
  /// Throws InvalidInput if some word has the wrong length.
  FixedWordSet(std::size_t word_length, const std::vector<Word>& words);
  /// `flat` holds consecutive words of `word_length` symbols, in any order.
  static FixedWordSet from_flat(std::size_t word_length, std::vector<Symbol> flat);

  std::size_t word_length() const noexcept { return length_; }
  std::size_t size() const noexcept { return count_; }
  bool empty() const noexcept { return count_ == 0; }
  std::span<const Symbol> operator[](std::size_t i) const {
    return {data_.data() + i * length_, length_};
  }
  bool contains(std::span<const Symbol> w) const { return index_of(w).has_value(); }
  std::optional<std::size_t> index_of(std::span<const Symbol> w) const;
  /// Index range [first, last) of words starting with `prefix`.
  std::pair<std::size_t, std::size_t> prefix_range(std::span<const Symbol> prefix) const;
  std::vector<Word> words() const;
  /// Copy with the i-th word removed.
  FixedWordSet without(std::size_t i) const;

  friend bool operator==(const FixedWordSet&, const FixedWordSet&) = default;

 private:
  std::size_t length_;
  std::size_t count_ = 0;
  std::vector<Symbol> data_;
};

/// A k-strictly locally testable language over an ordered local alphabet.
///
/// Words of length >= k are members iff their (k-1)-prefix is in `prefixes`,
/// their (k-1)-suffix is in `suffixes` and every k-factor is in `factors`.
/// Words of length 1..k-1 (including exactly k-1) are members iff listed in
/// `short_words`.
class SltSpec {
 public:
  SltSpec(std::size_t width, std::vector<std::string> alphabet, FixedWordSet prefixes,
          FixedWordSet suffixes, FixedWordSet factors, std::vector<Word> short_words);
  SltSpec(std::size_t width, std::vector<std::string> alphabet, const std::vector<Word>& prefixes,
          const std::vector<Word>& suffixes, const std::vector<Word>& factors,
          std::vector<Word> short_words);

  std::size_t width() const noexcept { return width_; }
  const std::vector<std::string>& alphabet() const noexcept { return alphabet_; }
  const FixedWordSet& prefixes() const noexcept { return prefixes_; }
  const FixedWordSet& suffixes() const noexcept { return suffixes_; }
  const FixedWordSet& factors() const noexcept { return factors_; }
  /// Shortlex-sorted.
  const std::vector<Word>& short_words() const noexcept { return short_words_; }
  bool is_short_word(std::span<const Symbol> w) const;

  SltSpec with_prefixes(FixedWordSet s) const;
  SltSpec with_suffixes(FixedWordSet s) const;
  SltSpec with_factors(FixedWordSet s) const;

  friend bool operator==(const SltSpec&, const SltSpec&) = default;

 private:
  std::size_t width_;
  std::vector<std::string> alphabet_;
  FixedWordSet prefixes_;
  FixedWordSet suffixes_;
  FixedWordSet factors_;
  std::vector<Word> short_words_;
};

struct Windows {
  Word prefix;
  Word suffix;
  /// Distinct factors, sorted.
  std::vector<Word> factors;

  friend bool operator==(const Windows&, const Windows&) = default;
};

/// Prefix and suffix of length k (or w itself when shorter) and the set of
/// length-k factors (empty when |w| < k).
Windows window_ops(const Word& w, std::size_t k);

/// Factor from 1-based position `from` to `to` inclusive; empty when to < from.
Word subword(const Word& w, std::size_t from, std::size_t to);

bool slt_membership(const SltSpec& s, std::span<const Symbol> x);

/// Sliding-window recognizer keeping O(k) symbols of state. The spec must
/// outlive the recognizer.
class StreamRecognizer {
 public:
  explicit StreamRecognizer(const SltSpec& spec);

  void feed(Symbol b);
  bool finish();
  void reset();

 private:
  const SltSpec* spec_;
  std::vector<Symbol> head_;
  std::vector<Symbol> window_;
  std::size_t count_ = 0;
  bool failed_ = false;
  bool finished_ = false;
};

inline StreamRecognizer make_stream_recognizer(const SltSpec& s) { return StreamRecognizer(s); }

/// Window-overlap automaton over the local alphabet accepting exactly the
/// members of `s`. Deterministic by construction.
Nfa slt_to_nfa(const SltSpec& s);

/// Tightest spec of width k containing the sample.
SltSpec infer_slt(const std::vector<Word>& sample, std::size_t k, std::vector<std::string> alphabet);

struct WidthSearch {
  std::optional<std::size_t> width;
  std::size_t horizon = 0;
};

/// Smallest k in 2..max_k whose inferred spec agrees with L(m) on all words up
/// to max_len. Requires max_len >= 3 * max_k.
WidthSearch min_slt_width(const Nfa& m, std::size_t max_k, std::size_t max_len,
                          std::size_t cap = 1'000'000);

}  // namespace sltk
