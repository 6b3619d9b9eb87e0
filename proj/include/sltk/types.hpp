#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sltk {

/// Index of a letter in some ordered alphabet (source or local).
using Symbol = std::uint32_t;
/// Index of an automaton state.
using State = std::uint32_t;
/// A word is a sequence of alphabet indices; the alphabet lives elsewhere.
using Word = std::vector<Symbol>;

/// Thrown when an input violates a documented precondition or invariant.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a configurable resource cap is hit.
class ResourceLimit : public std::runtime_error {
 public:
  ResourceLimit(const std::string& what, std::size_t observed)
      : std::runtime_error(what), observed_(observed) {}
  std::size_t observed() const noexcept { return observed_; }

 private:
  std::size_t observed_;
};

/// Syntax error in one of the text formats, with a 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Length-then-lexicographic order on words.
inline bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

}  // namespace sltk
