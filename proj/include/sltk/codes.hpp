#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "sltk/types.hpp"

namespace sltk {

using BigInt = boost::multiprecision::cpp_int;

/// Digits 0..h-1; 0 is the distinguished digit.
using Digit = std::uint32_t;
using DigitWord = std::vector<Digit>;

/// Words of D^m whose only occurrence of "00" is the suffix, in lexicographic
/// order. Throws ResourceLimit when more than `cap` words would be produced.
std::vector<DigitWord> enumerate_S(std::size_t h, std::size_t m, std::size_t cap = 1'000'000);

/// |S(m)| via |S(m)| = (h-1)(|S(m-1)| + |S(m-2)|), |S(2)| = 1, |S(3)| = h-1.
BigInt count_S(std::size_t h, std::size_t m);

/// Coefficients of the closed-form block length ceil(g(h) + f(h) lg2 n).
struct ClosedForm {
  double f = 0;
  double g_printed = 0;
  double g_reconciled = 0;
};

ClosedForm fg_values(std::size_t h);

/// lg2 of a big integer; exact enough for n up to ~10^300.
double log2_big(const BigInt& n);

struct BlockLength {
  /// Smallest m >= 2 with |S(m)| >= n.
  std::size_t m = 0;
  /// ceil(g_reconciled(h) + f(h) lg2 n), for comparison only.
  std::size_t closed_form = 0;
  /// The unrounded closed-form value.
  double closed_form_value = 0;
  /// ceil(log_h n), the information-theoretic floor.
  std::size_t floor = 0;
};

BlockLength choose_m(const BigInt& n, std::size_t h);

/// Fixed-length injective state code over h digits.
class Code {
 public:
  /// Throws InvalidInput unless all codewords share one length >= 2, use
  /// digits < h, and are pairwise distinct.
  Code(std::size_t h, std::vector<DigitWord> codewords);

  std::size_t h() const noexcept { return h_; }
  std::size_t m() const noexcept { return m_; }
  std::size_t size() const noexcept { return codewords_.size(); }
  const DigitWord& operator[](std::size_t state) const { return codewords_.at(state); }
  const std::vector<DigitWord>& codewords() const noexcept { return codewords_; }
  /// State whose codeword equals `w`, if any.
  std::optional<std::size_t> state_of(std::span<const Digit> w) const;
  /// First codeword (by state) that does not end in "00" with no other
  /// "00", or that breaks m >= ceil(log_h n); nullopt if the code is disciplined.
  std::optional<std::string> discipline_violation() const;

 private:
  std::size_t h_;
  std::size_t m_;
  std::vector<DigitWord> codewords_;
  std::vector<std::size_t> sorted_;  // indices ordered by codeword
};

/// m = choose_m(n, h); states 0..n-1 get the first n words of S(m) in order.
Code build_code(std::size_t n, std::size_t h, std::size_t cap = 1'000'000);

struct Decoded {
  /// 1-based start position in the window.
  std::size_t position = 0;
  std::size_t state = 0;

  friend bool operator==(const Decoded&, const Decoded&) = default;
};

/// Unique codeword occurrence among start positions 1..m of a (2m-1)-window;
/// nullopt when there is none or more than one.
std::optional<Decoded> factor_decode(const Code& c, std::span<const Digit> window);

/// All start positions (1-based) of codeword occurrences among 1..m.
std::vector<Decoded> codeword_occurrences(const Code& c, std::span<const Digit> window);

struct DecodabilityReport {
  bool pass = true;
  std::size_t windows_checked = 0;
  std::optional<DigitWord> witness;
  std::string reason;
};

/// Sweeps every (2m-1)-window of every [q1][q2][q3]. Throws ResourceLimit when
/// n^3 (m+2) exceeds `cap`.
DecodabilityReport verify_factor_decodable(const Code& c, std::size_t cap = 100'000'000);

std::string format_digits(const DigitWord& w, std::size_t h);

}  // namespace sltk
