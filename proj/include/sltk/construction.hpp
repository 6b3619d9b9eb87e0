#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "sltk/automata.hpp"
#include "sltk/codes.hpp"
#include "sltk/slt.hpp"
#include "sltk/types.hpp"

namespace sltk {

enum class ConstructionKind { width2, main };

std::string to_string(ConstructionKind kind);

/// Letter-to-letter map from the local alphabet onto the source alphabet.
class Homomorphism {
 public:
  Homomorphism() = default;
  Homomorphism(std::vector<Symbol> image, std::size_t source_size);

  Symbol operator()(Symbol b) const;
  Word operator()(std::span<const Symbol> z) const;
  std::size_t local_size() const noexcept { return image_.size(); }
  const std::vector<Symbol>& image() const noexcept { return image_; }

  friend bool operator==(const Homomorphism&, const Homomorphism&) = default;

 private:
  std::vector<Symbol> image_;
};

/// An slt language over a local alphabet plus a projection onto the source
/// alphabet and a finite set of residual source words. The intended meaning is
/// pi(L(slt)) U residual = L(source); verification checks it, nothing assumes it.
struct Decomposition {
  ConstructionKind kind = ConstructionKind::width2;
  /// Digits per source letter (main) or number of states (width2).
  std::size_t h = 0;
  /// Block length; 1 for width2.
  std::size_t m = 1;
  /// States of the (totalized) source automaton.
  std::size_t num_states = 0;
  std::vector<std::string> source_alphabet;
  SltSpec slt;
  Homomorphism pi;
  /// Shortlex-sorted source words.
  std::vector<Word> residual;
  std::string fingerprint;

  std::size_t width() const noexcept { return slt.width(); }
  friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

/// Local alphabet Q x A with tokens "q<i>|<letter>", index q * |A| + a.
std::vector<std::string> state_letter_alphabet(const Nfa& m);
/// Local alphabet A x D with tokens "<letter>|<digit>", index a * h + d.
std::vector<std::string> letter_digit_alphabet(const std::vector<std::string>& source, std::size_t h);

/// Width-2 construction over Q x A. Requires a total automaton.
Decomposition medvedev_width2(const Nfa& m);

/// <p,a> for every transition (p,a,q) of a successful path.
Word encode_path_width2(const Nfa& m, const Path& path);

/// Pairs the labels of a path of length t <= m with the first t digits of the
/// origin's codeword. Symbols index A x D as a * h + d.
Word encode_m_path(const Code& code, const Path& path, std::size_t alphabet_size);

/// Splits a path longer than m into its m-blocks and a trailing block of
/// length |path| mod m (possibly empty).
std::vector<Path> canonical_decomposition(const Path& path, std::size_t m);

/// Block-wise encoding of any path.
Word encode_path(const Code& code, const Path& path, std::size_t alphabet_size);

struct BuildOptions {
  /// Limit on the size of any generated set (before deduplication).
  std::size_t set_cap = 1'000'000;
};

/// Width-2m construction over A x D with the code build_code(n, h).
/// Requires a total automaton with at least two states.
Decomposition medvedev_main(const Nfa& m, std::size_t h, const BuildOptions& options = {});

/// The code a main decomposition was built with.
Code decomposition_code(const Decomposition& d);

struct Encoding {
  /// True when the word is shorter than 3m and carried by the residual.
  bool in_residual = false;
  Word local;
  /// Origins of the canonical blocks of the chosen path (main) or every
  /// visited state but the last (width2).
  std::vector<State> block_origins;
};

/// Encodes a member of L(nfa) as a member of the slt language. `nfa` is
/// totalized first and must match the decomposition's fingerprint.
Encoding encode_word(const Nfa& nfa, const Decomposition& d, const Word& w);

Word decode_word(const Decomposition& d, std::span<const Symbol> z);

}  // namespace sltk
