#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sltk/automata.hpp"
#include "sltk/codes.hpp"
#include "sltk/construction.hpp"
#include "sltk/types.hpp"

namespace sltk {

// NFA text format, one directive per line, '#' starts a comment:
//
//   alphabet a b      letters in iteration order (tokens may be "quoted")
//   states 3          optional, inferred from the largest index otherwise
//   initial 0         optional, defaults to 0
//   final 2           repeatable
//   trans 0 a 1       repeatable; duplicates are ignored

/// Throws ParseError (syntax, with line) or InvalidInput (semantics).
Nfa parse_nfa(std::string_view text);
/// Canonical text: alphabet, states, initial, finals, then sorted transitions.
std::string format_nfa(const Nfa& m);
/// FNV-1a 64 of the canonical text of the totalized automaton, as 16 hex digits.
std::string nfa_fingerprint(const Nfa& m);

// Decomposition text format:
//
//   kind main|width2
//   h <h>
//   m <m>
//   k <k>
//   states <n>
//   fingerprint <hex>
//   alphabet <source letters>
//   symbol <token> -> <letter>   one per local symbol, in index order
//   I / T / F / SHORT             local words, symbols '.'-separated
//   RESIDUAL                      source words, letters '.'-separated

Decomposition parse_decomposition(std::string_view text);
std::string format_decomposition(const Decomposition& d);

/// Joins symbol tokens with '.'.
std::string format_word(const std::vector<std::string>& alphabet, const Word& w);
/// Splits on '.' and resolves every token; throws InvalidInput on unknown tokens.
Word parse_word(const std::vector<std::string>& alphabet, std::string_view text);
/// Like parse_word, but a text without '.' over single-character letters is
/// read one character per letter ("aab").
Word parse_source_word(const std::vector<std::string>& alphabet, std::string_view text);

/// `h`, `m` header lines then `state <i> <codeword>` lines.
std::string format_code(const Code& c);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

}  // namespace sltk
