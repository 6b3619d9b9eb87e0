#include "sltk/construction.hpp"

#include <algorithm>

#include "sltk/io.hpp"

namespace sltk {

namespace {

using LabelSet = std::vector<Word>;

void normalize(LabelSet& s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
}

// labels[t][x * n + y]: labels of length-t paths from x to y.
class PathLabels {
 public:
  PathLabels(const Nfa& m, std::size_t max_t)
      : n_(m.num_states()), sets_(max_t + 1), any_(max_t + 1), final_(max_t + 1) {
    for (auto& level : sets_) level.resize(n_ * n_);
    for (State x = 0; x < n_; ++x) at(0, x, x).push_back(Word{});
    for (std::size_t t = 1; t <= max_t; ++t) {
      for (State x = 0; x < n_; ++x) {
        for (const Transition& tr : m.outgoing(x)) {
          for (State y = 0; y < n_; ++y) {
            for (const Word& rest : at(t - 1, tr.to, y)) {
              Word w;
              w.reserve(t);
              w.push_back(tr.letter);
              w.insert(w.end(), rest.begin(), rest.end());
              at(t, x, y).push_back(std::move(w));
            }
          }
        }
        for (State y = 0; y < n_; ++y) normalize(at(t, x, y));
      }
    }
    for (std::size_t t = 0; t <= max_t; ++t) {
      for (State x = 0; x < n_; ++x) {
        LabelSet any, fin;
        for (State y = 0; y < n_; ++y) {
          const auto& s = (*this)(t, x, y);
          any.insert(any.end(), s.begin(), s.end());
          if (m.is_final(y)) fin.insert(fin.end(), s.begin(), s.end());
        }
        normalize(any);
        normalize(fin);
        any_[t].push_back(std::move(any));
        final_[t].push_back(std::move(fin));
      }
    }
  }

  const LabelSet& operator()(std::size_t t, State x, State y) const { return sets_[t][x * n_ + y]; }

  /// Labels of length t leaving x.
  const LabelSet& any(std::size_t t, State x) const { return any_[t][x]; }
  /// Labels of length t leading from x to a final state.
  const LabelSet& to_final(std::size_t t, State x) const { return final_[t][x]; }

 private:
  LabelSet& at(std::size_t t, State x, State y) { return sets_[t][x * n_ + y]; }

  std::size_t n_;
  std::vector<std::vector<LabelSet>> sets_;
  std::vector<std::vector<LabelSet>> any_;
  std::vector<std::vector<LabelSet>> final_;
};

// Collects fixed-length local words (A x D symbols) into a flat buffer.
class WindowSink {
 public:
  WindowSink(std::size_t length, std::size_t h, std::size_t cap, const char* name)
      : length_(length), h_(h), cap_(cap), name_(name) {}

  // Emits every combination of the three label parts against fixed digits.
  void emit(const DigitWord& digits, const LabelSet& first, const LabelSet& second, const LabelSet& third) {
    for (const Word& a : first) {
      for (const Word& b : second) {
        for (const Word& c : third) {
          std::size_t i = 0;
          for (const Word* part : {&a, &b, &c}) {
            for (Symbol letter : *part) {
              flat_.push_back(letter * static_cast<Symbol>(h_) + digits[i]);
              ++i;
            }
          }
          if (flat_.size() / length_ > cap_) {
            throw ResourceLimit(std::string("set ") + name_ + " exceeds the cap", flat_.size() / length_);
          }
        }
      }
    }
  }

  FixedWordSet finish() { return FixedWordSet::from_flat(length_, std::move(flat_)); }

 private:
  std::size_t length_;
  std::size_t h_;
  std::size_t cap_;
  const char* name_;
  std::vector<Symbol> flat_;
};

DigitWord concat_digits(const DigitWord& a, std::size_t a_from, const DigitWord& b, const DigitWord& c,
                        std::size_t c_len) {
  DigitWord out(a.begin() + a_from, a.end());
  out.insert(out.end(), b.begin(), b.end());
  out.insert(out.end(), c.begin(), c.begin() + c_len);
  return out;
}

// Pairs (codeword suffix of r from `offset`, u) with u reachable from r in `offset` steps.
std::vector<std::pair<DigitWord, State>> contexts(const Nfa& nfa, const Code& code, const PathLabels& labels,
                                                  std::size_t offset) {
  std::vector<std::pair<DigitWord, State>> out;
  for (State r = 0; r < nfa.num_states(); ++r) {
    for (State u = 0; u < nfa.num_states(); ++u) {
      if (labels(offset, r, u).empty()) continue;
      out.emplace_back(DigitWord(code[r].begin() + offset, code[r].end()), u);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

void require_total(const Nfa& m) {
  if (!m.is_total()) throw InvalidInput("construction needs a total automaton; totalize it first");
}

}  // namespace

std::string to_string(ConstructionKind kind) {
  return kind == ConstructionKind::main ? "main" : "width2";
}

Homomorphism::Homomorphism(std::vector<Symbol> image, std::size_t source_size) : image_(std::move(image)) {
  for (Symbol a : image_) {
    if (a >= source_size) throw InvalidInput("homomorphism image outside the source alphabet");
  }
}

Symbol Homomorphism::operator()(Symbol b) const {
  if (b >= image_.size()) throw InvalidInput("unknown local symbol index " + std::to_string(b));
  return image_[b];
}

Word Homomorphism::operator()(std::span<const Symbol> z) const {
  Word w;
  w.reserve(z.size());
  for (Symbol b : z) w.push_back((*this)(b));
  return w;
}

std::vector<std::string> state_letter_alphabet(const Nfa& m) {
  std::vector<std::string> out;
  for (State q = 0; q < m.num_states(); ++q) {
    for (const std::string& a : m.alphabet()) out.push_back("q" + std::to_string(q) + "|" + a);
  }
  return out;
}

std::vector<std::string> letter_digit_alphabet(const std::vector<std::string>& source, std::size_t h) {
  std::vector<std::string> out;
  for (const std::string& a : source) {
    for (std::size_t d = 0; d < h; ++d) out.push_back(a + "|" + std::to_string(d));
  }
  return out;
}

Decomposition medvedev_width2(const Nfa& m) {
  require_total(m);
  const auto width = static_cast<Symbol>(m.alphabet_size());
  auto sym = [&](State q, Symbol a) { return q * width + a; };

  std::vector<Word> prefixes, suffixes, factors, short_words;
  for (Symbol a = 0; a < width; ++a) prefixes.push_back({sym(m.initial(), a)});
  for (const Transition& t : m.transitions()) {
    for (Symbol b = 0; b < width; ++b) factors.push_back({sym(t.from, t.letter), sym(t.to, b)});
    if (m.is_final(t.to)) suffixes.push_back({sym(t.from, t.letter)});
  }
  std::sort(suffixes.begin(), suffixes.end());
  suffixes.erase(std::unique(suffixes.begin(), suffixes.end()), suffixes.end());
  std::set_intersection(prefixes.begin(), prefixes.end(), suffixes.begin(), suffixes.end(),
                        std::back_inserter(short_words));

  std::vector<Symbol> image;
  for (State q = 0; q < m.num_states(); ++q) {
    for (Symbol a = 0; a < width; ++a) image.push_back(a);
  }
  return Decomposition{
      .kind = ConstructionKind::width2,
      .h = m.num_states(),
      .m = 1,
      .num_states = m.num_states(),
      .source_alphabet = m.alphabet(),
      .slt = SltSpec(2, state_letter_alphabet(m), prefixes, suffixes, factors, short_words),
      .pi = Homomorphism(std::move(image), m.alphabet_size()),
      .residual = {},
      .fingerprint = nfa_fingerprint(m),
  };
}

Word encode_path_width2(const Nfa& m, const Path& path) {
  if (!path.is_successful(m)) throw InvalidInput("path is not successful");
  Word z;
  for (const Transition& t : path.transitions()) {
    z.push_back(t.from * static_cast<Symbol>(m.alphabet_size()) + t.letter);
  }
  return z;
}

Word encode_m_path(const Code& code, const Path& path, std::size_t alphabet_size) {
  if (path.size() > code.m()) throw InvalidInput("path longer than the block length");
  const DigitWord& digits = code[path.origin()];
  Word z;
  z.reserve(path.size());
  for (std::size_t i = 0; i < path.size(); ++i) {
    const Symbol letter = path.transitions()[i].letter;
    if (letter >= alphabet_size) throw InvalidInput("letter outside the source alphabet");
    z.push_back(letter * static_cast<Symbol>(code.h()) + digits[i]);
  }
  return z;
}

std::vector<Path> canonical_decomposition(const Path& path, std::size_t m) {
  if (m == 0) throw InvalidInput("block length must be positive");
  if (path.size() <= m) throw InvalidInput("canonical decomposition needs a path longer than m");
  std::vector<Path> blocks;
  const std::size_t full = path.size() / m;
  for (std::size_t b = 0; b < full; ++b) blocks.push_back(path.slice(b * m, m));
  blocks.push_back(path.slice(full * m, path.size() % m));
  return blocks;
}

Word encode_path(const Code& code, const Path& path, std::size_t alphabet_size) {
  if (path.size() <= code.m()) return encode_m_path(code, path, alphabet_size);
  Word z;
  z.reserve(path.size());
  for (const Path& block : canonical_decomposition(path, code.m())) {
    const Word part = encode_m_path(code, block, alphabet_size);
    z.insert(z.end(), part.begin(), part.end());
  }
  return z;
}

Decomposition medvedev_main(const Nfa& nfa, std::size_t h, const BuildOptions& options) {
  require_total(nfa);
  if (nfa.num_states() < 2) throw InvalidInput("the main construction needs at least 2 states");
  const Code code = build_code(nfa.num_states(), h);
  const std::size_t m = code.m();
  const std::size_t n = nfa.num_states();
  const PathLabels labels(nfa, m);
  const LabelSet empty_label{Word{}};

  // Prefixes: first 2m-1 symbols of [eta' eta''] with eta' leaving q0.
  WindowSink prefixes(2 * m - 1, h, options.set_cap, "I");
  const State q0 = nfa.initial();
  for (State p = 0; p < n; ++p) {
    const LabelSet& head = labels(m, q0, p);
    if (head.empty()) continue;
    prefixes.emit(concat_digits(code[q0], 0, DigitWord{}, code[p], m - 1), head, labels.any(m - 1, p),
                  empty_label);
  }

  // Factors: 2m-windows at offset s of [eta' eta'' eta'''].
  WindowSink factors(2 * m, h, options.set_cap, "F");
  for (std::size_t s = 0; s <= m; ++s) {
    for (const auto& [head_digits, u] : contexts(nfa, code, labels, s)) {
      for (State p1 = 0; p1 < n; ++p1) {
        const LabelSet& first = labels(m - s, u, p1);
        if (first.empty()) continue;
        for (State p2 = 0; p2 < n; ++p2) {
          const LabelSet& second = labels(m, p1, p2);
          if (second.empty()) continue;
          factors.emit(concat_digits(head_digits, 0, code[p1], code[p2], s), first, second, labels.any(s, p2));
        }
      }
    }
  }

  // Suffixes: last 2m-1 symbols of [eta' eta'' eta'''] with |eta'''| = j < m
  // and the path ending in a final state.
  WindowSink suffixes(2 * m - 1, h, options.set_cap, "T");
  for (std::size_t j = 0; j < m; ++j) {
    for (const auto& [head_digits, u] : contexts(nfa, code, labels, j + 1)) {
      for (State p1 = 0; p1 < n; ++p1) {
        const LabelSet& first = labels(m - 1 - j, u, p1);
        if (first.empty()) continue;
        for (State p2 = 0; p2 < n; ++p2) {
          const LabelSet& second = labels(m, p1, p2);
          if (second.empty()) continue;
          const LabelSet& third = labels.to_final(j, p2);
          if (third.empty()) continue;
          suffixes.emit(concat_digits(head_digits, 0, code[p1], code[p2], j), first, second, third);
        }
      }
    }
  }

  std::vector<Symbol> image;
  for (Symbol a = 0; a < nfa.alphabet_size(); ++a) {
    for (std::size_t d = 0; d < h; ++d) image.push_back(a);
  }
  auto residual = enumerate_language(nfa, 3 * m - 1, options.set_cap);
  return Decomposition{
      .kind = ConstructionKind::main,
      .h = h,
      .m = m,
      .num_states = n,
      .source_alphabet = nfa.alphabet(),
      .slt = SltSpec(2 * m, letter_digit_alphabet(nfa.alphabet(), h), prefixes.finish(), suffixes.finish(),
                     factors.finish(), {}),
      .pi = Homomorphism(std::move(image), nfa.alphabet_size()),
      .residual = std::move(residual),
      .fingerprint = nfa_fingerprint(nfa),
  };
}

Code decomposition_code(const Decomposition& d) {
  if (d.kind != ConstructionKind::main) throw InvalidInput("only main decompositions carry a code");
  Code code = build_code(d.num_states, d.h);
  if (code.m() != d.m) throw InvalidInput("decomposition block length does not match its code");
  return code;
}

Encoding encode_word(const Nfa& nfa, const Decomposition& d, const Word& w) {
  const Nfa total = totalize(nfa);
  if (nfa_fingerprint(total) != d.fingerprint) {
    throw InvalidInput("automaton does not match the decomposition fingerprint");
  }
  auto path = find_successful_path(total, w);
  if (!path) throw InvalidInput("word is not in the language of the automaton");
  Encoding out;
  if (d.kind == ConstructionKind::width2) {
    out.local = encode_path_width2(total, *path);
    for (const Transition& t : path->transitions()) out.block_origins.push_back(t.from);
  } else {
    if (w.size() < 3 * d.m) {
      out.in_residual = true;
      return out;
    }
    const Code code = decomposition_code(d);
    out.local = encode_path(code, *path, total.alphabet_size());
    for (std::size_t i = 0; i < path->size(); i += d.m) out.block_origins.push_back(path->transitions()[i].from);
  }
  if (!slt_membership(d.slt, out.local)) {
    throw std::logic_error("encoded word is rejected by the slt language");
  }
  return out;
}

Word decode_word(const Decomposition& d, std::span<const Symbol> z) { return d.pi(z); }

}  // namespace sltk
