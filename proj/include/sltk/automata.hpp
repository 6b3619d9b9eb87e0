#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sltk/types.hpp"

namespace sltk {

struct Transition {
  State from = 0;
  Symbol letter = 0;
  State to = 0;

  auto operator<=>(const Transition&) const = default;
};

/// Nondeterministic automaton without epsilon moves. The initial state is
/// never final, so the empty word is never accepted.
///
/// Transitions are kept sorted by (from, letter, to) and deduplicated; that
/// order is the canonical iteration order used by every search in the library.
class Nfa {
 public:
  /// Validates and normalizes; throws InvalidInput naming the violated rule.
  Nfa(std::vector<std::string> alphabet, std::size_t num_states, State initial,
      std::vector<State> finals, std::vector<Transition> transitions);

  const std::vector<std::string>& alphabet() const noexcept { return alphabet_; }
  std::size_t alphabet_size() const noexcept { return alphabet_.size(); }
  std::size_t num_states() const noexcept { return num_states_; }
  State initial() const noexcept { return initial_; }
  /// Sorted, deduplicated.
  const std::vector<State>& finals() const noexcept { return finals_; }
  const std::vector<Transition>& transitions() const noexcept { return transitions_; }
  bool is_final(State q) const noexcept { return final_flags_[q]; }
  bool is_total() const noexcept { return total_; }

  /// Transitions leaving `q`, in canonical order.
  std::span<const Transition> outgoing(State q) const;
  /// Transitions leaving `q` labelled `a`, in canonical order.
  std::span<const Transition> outgoing(State q, Symbol a) const;

  /// Index of a letter name, or nullopt.
  std::optional<Symbol> letter_index(const std::string& name) const;

  friend bool operator==(const Nfa& a, const Nfa& b) {
    return a.alphabet_ == b.alphabet_ && a.num_states_ == b.num_states_ &&
           a.initial_ == b.initial_ && a.finals_ == b.finals_ &&
           a.transitions_ == b.transitions_;
  }

 private:
  std::vector<std::string> alphabet_;
  std::size_t num_states_;
  State initial_;
  std::vector<State> finals_;
  std::vector<bool> final_flags_;
  std::vector<Transition> transitions_;
  // offsets_[q * |A| + a] .. offsets_[q * |A| + a + 1] index into transitions_.
  std::vector<std::size_t> offsets_;
  bool total_ = false;
};

/// A sequence of consecutive transitions. The empty path still remembers the
/// state it sits on so that t = 0 blocks have a well-defined origin.
class Path {
 public:
  explicit Path(State origin) : origin_(origin) {}
  /// Throws InvalidInput if the transitions are not consecutive.
  explicit Path(std::vector<Transition> transitions);

  State origin() const noexcept { return origin_; }
  State end() const noexcept { return steps_.empty() ? origin_ : steps_.back().to; }
  std::size_t size() const noexcept { return steps_.size(); }
  bool empty() const noexcept { return steps_.empty(); }
  const std::vector<Transition>& transitions() const noexcept { return steps_; }
  Word label() const;
  bool is_successful(const Nfa& m) const;

  /// Sub-path of `count` transitions starting at transition index `start`.
  Path slice(std::size_t start, std::size_t count) const;

  friend bool operator==(const Path&, const Path&) = default;

 private:
  State origin_;
  std::vector<Transition> steps_;
};

/// Adds one non-final sink as the highest-indexed state when some
/// (state, letter) pair has no successor. Identity on total machines.
Nfa totalize(const Nfa& m);

/// Throws InvalidInput on letters outside the alphabet. The empty word is rejected.
bool accepts(const Nfa& m, const Word& w);

/// States reachable from the initial state that can still reach a final state.
std::vector<bool> useful_states(const Nfa& m);

/// All accepted words of length 1..max_len in shortlex order.
/// Throws ResourceLimit when the result (or the live frontier) exceeds `cap`.
std::vector<Word> enumerate_language(const Nfa& m, std::size_t max_len,
                                     std::size_t cap = 1'000'000);

enum class EquivalenceVerdict { equivalent, inequivalent, cap_exceeded };

struct EquivalenceResult {
  EquivalenceVerdict verdict = EquivalenceVerdict::equivalent;
  /// Shortest word in the symmetric difference (shortlex-first among shortest).
  std::optional<Word> witness;
  /// Number of subset pairs explored.
  std::size_t explored = 0;
};

struct EquivalenceOptions {
  /// When set, only words up to this length are compared.
  std::optional<std::size_t> max_len;
  std::size_t state_cap = 1'000'000;
};

/// Decides L(a) = L(b) (or its restriction to words of length <= max_len) by
/// breadth-first search over pairs of determinized subsets. The alphabets must
/// be identical, in the same order.
EquivalenceResult nfa_equivalent(const Nfa& a, const Nfa& b, const EquivalenceOptions& options = {});

/// All paths of exactly `length` transitions leaving `origin`, in canonical order.
std::vector<Path> enumerate_m_paths(const Nfa& m, State origin, std::size_t length,
                                    std::size_t cap = 1'000'000);

/// First successful path labelled `w` under canonical transition order, if any.
std::optional<Path> find_successful_path(const Nfa& m, const Word& w);

/// Builds an automaton accepting exactly the given nonempty words (a trie).
Nfa finite_language_nfa(std::vector<std::string> alphabet, const std::vector<Word>& words);

/// Union by a fresh initial state copying both initial states' moves.
Nfa nfa_union(const Nfa& a, const Nfa& b);

/// Renames every letter through `map` (old letter index -> new letter index).
Nfa relabel(const Nfa& m, std::vector<std::string> new_alphabet, const std::vector<Symbol>& map);

}  // namespace sltk
