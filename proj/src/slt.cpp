#include "sltk/slt.hpp"

#include <algorithm>
#include <numeric>

namespace sltk {

namespace {

bool span_less(std::span<const Symbol> a, std::span<const Symbol> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

void check_symbols(std::span<const Symbol> w, std::size_t alphabet_size) {
  for (Symbol b : w) {
    if (b >= alphabet_size) throw InvalidInput("unknown symbol index " + std::to_string(b));
  }
}

}  // namespace

FixedWordSet::FixedWordSet(std::size_t word_length, const std::vector<Word>& words)
    : length_(word_length) {
  std::vector<Symbol> flat;
  flat.reserve(words.size() * word_length);
  for (const Word& w : words) {
    if (w.size() != word_length) {
      throw InvalidInput("word of length " + std::to_string(w.size()) + " in a set of length-" +
                         std::to_string(word_length) + " words");
    }
    flat.insert(flat.end(), w.begin(), w.end());
  }
  *this = from_flat(word_length, std::move(flat));
}

FixedWordSet FixedWordSet::from_flat(std::size_t word_length, std::vector<Symbol> flat) {
  FixedWordSet out(word_length);
  if (word_length == 0) {
    out.count_ = flat.empty() ? 0 : 1;
    return out;
  }
  if (flat.size() % word_length != 0) throw InvalidInput("flat word buffer is ragged");
  const std::size_t n = flat.size() / word_length;
  auto at = [&](std::size_t i) { return std::span<const Symbol>(flat.data() + i * word_length, word_length); };
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return span_less(at(a), at(b)); });
  out.data_.reserve(flat.size());
  for (std::size_t k = 0; k < n; ++k) {
    auto w = at(order[k]);
    if (out.count_ > 0 && std::equal(w.begin(), w.end(), out.data_.end() - word_length)) continue;
    out.data_.insert(out.data_.end(), w.begin(), w.end());
    ++out.count_;
  }
  out.data_.shrink_to_fit();
  return out;
}

std::optional<std::size_t> FixedWordSet::index_of(std::span<const Symbol> w) const {
  if (w.size() != length_) return std::nullopt;
  std::size_t lo = 0, hi = count_;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (span_less((*this)[mid], w)) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo < count_ && std::equal(w.begin(), w.end(), (*this)[lo].begin())) return lo;
  return std::nullopt;
}

std::pair<std::size_t, std::size_t> FixedWordSet::prefix_range(std::span<const Symbol> prefix) const {
  const std::size_t p = std::min(prefix.size(), length_);
  auto head = [&](std::size_t i) { return (*this)[i].first(p); };
  auto key = prefix.first(p);
  std::size_t lo = 0, hi = count_;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (span_less(head(mid), key)) lo = mid + 1; else hi = mid;
  }
  const std::size_t first = lo;
  hi = count_;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (!span_less(key, head(mid))) lo = mid + 1; else hi = mid;
  }
  return {first, lo};
}

std::vector<Word> FixedWordSet::words() const {
  std::vector<Word> out;
  out.reserve(count_);
  for (std::size_t i = 0; i < count_; ++i) out.emplace_back((*this)[i].begin(), (*this)[i].end());
  return out;
}

FixedWordSet FixedWordSet::without(std::size_t i) const {
  if (i >= count_) throw InvalidInput("index out of range");
  FixedWordSet out = *this;
  out.data_.erase(out.data_.begin() + i * length_, out.data_.begin() + (i + 1) * length_);
  --out.count_;
  return out;
}

SltSpec::SltSpec(std::size_t width, std::vector<std::string> alphabet, FixedWordSet prefixes,
                 FixedWordSet suffixes, FixedWordSet factors, std::vector<Word> short_words)
    : width_(width),
      alphabet_(std::move(alphabet)),
      prefixes_(std::move(prefixes)),
      suffixes_(std::move(suffixes)),
      factors_(std::move(factors)),
      short_words_(std::move(short_words)) {
  if (width_ < 2) throw InvalidInput("width must be at least 2");
  if (alphabet_.empty()) throw InvalidInput("local alphabet must be nonempty");
  if (prefixes_.word_length() != width_ - 1 || suffixes_.word_length() != width_ - 1) {
    throw InvalidInput("prefix and suffix words must have length k-1");
  }
  if (factors_.word_length() != width_) throw InvalidInput("factor words must have length k");
  for (const FixedWordSet* set : {&prefixes_, &suffixes_, &factors_}) {
    for (std::size_t i = 0; i < set->size(); ++i) check_symbols((*set)[i], alphabet_.size());
  }
  for (const Word& w : short_words_) {
    if (w.empty() || w.size() >= width_) throw InvalidInput("short words must have length 1..k-1");
    check_symbols(w, alphabet_.size());
  }
  std::sort(short_words_.begin(), short_words_.end(), shortlex_less);
  short_words_.erase(std::unique(short_words_.begin(), short_words_.end()), short_words_.end());
}

SltSpec::SltSpec(std::size_t width, std::vector<std::string> alphabet, const std::vector<Word>& prefixes,
                 const std::vector<Word>& suffixes, const std::vector<Word>& factors,
                 std::vector<Word> short_words)
    : SltSpec(width, std::move(alphabet),
              FixedWordSet(width == 0 ? 0 : width - 1, prefixes),
              FixedWordSet(width == 0 ? 0 : width - 1, suffixes), FixedWordSet(width, factors),
              std::move(short_words)) {}

bool SltSpec::is_short_word(std::span<const Symbol> w) const {
  Word key(w.begin(), w.end());
  return std::binary_search(short_words_.begin(), short_words_.end(), key, shortlex_less);
}

SltSpec SltSpec::with_prefixes(FixedWordSet s) const {
  return SltSpec(width_, alphabet_, std::move(s), suffixes_, factors_, short_words_);
}
SltSpec SltSpec::with_suffixes(FixedWordSet s) const {
  return SltSpec(width_, alphabet_, prefixes_, std::move(s), factors_, short_words_);
}
SltSpec SltSpec::with_factors(FixedWordSet s) const {
  return SltSpec(width_, alphabet_, prefixes_, suffixes_, std::move(s), short_words_);
}

Windows window_ops(const Word& w, std::size_t k) {
  if (w.empty()) throw InvalidInput("window operators need a nonempty word");
  if (k == 0) throw InvalidInput("window length must be positive");
  Windows out;
  const std::size_t p = std::min(k, w.size());
  out.prefix.assign(w.begin(), w.begin() + p);
  out.suffix.assign(w.end() - p, w.end());
  if (w.size() >= k) {
    for (std::size_t i = 0; i + k <= w.size(); ++i) out.factors.emplace_back(w.begin() + i, w.begin() + i + k);
    std::sort(out.factors.begin(), out.factors.end());
    out.factors.erase(std::unique(out.factors.begin(), out.factors.end()), out.factors.end());
  }
  return out;
}

Word subword(const Word& w, std::size_t from, std::size_t to) {
  if (from < 1 || to < 1 || from > w.size() || to > w.size()) {
    throw InvalidInput("subword positions out of range");
  }
  if (to < from) return {};
  return Word(w.begin() + (from - 1), w.begin() + to);
}

bool slt_membership(const SltSpec& s, std::span<const Symbol> x) {
  check_symbols(x, s.alphabet().size());
  const std::size_t k = s.width();
  if (x.empty()) return false;
  if (x.size() < k) return s.is_short_word(x);
  if (!s.prefixes().contains(x.first(k - 1))) return false;
  if (!s.suffixes().contains(x.last(k - 1))) return false;
  for (std::size_t i = 0; i + k <= x.size(); ++i) {
    if (!s.factors().contains(x.subspan(i, k))) return false;
  }
  return true;
}

StreamRecognizer::StreamRecognizer(const SltSpec& spec) : spec_(&spec) {
  head_.reserve(spec.width());
  window_.reserve(spec.width() + 1);
}

void StreamRecognizer::feed(Symbol b) {
  if (finished_) throw std::logic_error("feed after finish; call reset() first");
  if (b >= spec_->alphabet().size()) throw InvalidInput("unknown symbol index " + std::to_string(b));
  const std::size_t k = spec_->width();
  ++count_;
  if (head_.size() < k - 1) head_.push_back(b);
  window_.push_back(b);
  if (window_.size() > k) window_.erase(window_.begin());
  if (!failed_) {
    if (count_ == k - 1 && !spec_->prefixes().contains(head_)) failed_ = true;
    if (window_.size() == k && !spec_->factors().contains(window_)) failed_ = true;
  }
}

bool StreamRecognizer::finish() {
  finished_ = true;
  const std::size_t k = spec_->width();
  if (count_ == 0) return false;
  if (count_ < k) return spec_->is_short_word(head_);
  if (failed_) return false;
  return spec_->suffixes().contains(std::span<const Symbol>(window_).last(k - 1));
}

void StreamRecognizer::reset() {
  head_.clear();
  window_.clear();
  count_ = 0;
  failed_ = false;
  finished_ = false;
}

Nfa slt_to_nfa(const SltSpec& s) {
  const std::size_t k = s.width();
  const FixedWordSet& factors = s.factors();

  // Trie over prefixes of I and of the short words.
  std::vector<Transition> ts;
  std::vector<State> finals;
  std::vector<Word> trie_word{Word{}};
  std::vector<std::vector<std::pair<Symbol, State>>> children(1);
  auto child = [&](State q, Symbol b) -> State {
    for (auto [sym, to] : children[q]) {
      if (sym == b) return to;
    }
    const auto fresh = static_cast<State>(trie_word.size());
    Word w = trie_word[q];
    w.push_back(b);
    trie_word.push_back(std::move(w));
    children.emplace_back();
    children[q].emplace_back(b, fresh);
    ts.push_back({q, b, fresh});
    return fresh;
  };
  auto insert = [&](std::span<const Symbol> w) {
    State q = 0;
    for (Symbol b : w) q = child(q, b);
    return q;
  };
  std::vector<State> prefix_leaves;
  for (std::size_t i = 0; i < s.prefixes().size(); ++i) prefix_leaves.push_back(insert(s.prefixes()[i]));
  for (const Word& w : s.short_words()) finals.push_back(insert(w));

  // Window states: the last k-1 symbols once at least k have been read.
  std::vector<Symbol> tails;
  tails.reserve(factors.size() * (k - 1));
  for (std::size_t i = 0; i < factors.size(); ++i) {
    auto f = factors[i];
    tails.insert(tails.end(), f.begin() + 1, f.end());
  }
  const FixedWordSet windows = FixedWordSet::from_flat(k - 1, std::move(tails));
  const auto base = static_cast<State>(trie_word.size());
  for (std::size_t i = 0; i < windows.size(); ++i) {
    if (s.suffixes().contains(windows[i])) finals.push_back(base + static_cast<State>(i));
  }
  auto link = [&](State from, std::span<const Symbol> context) {
    auto [lo, hi] = factors.prefix_range(context);
    for (std::size_t i = lo; i < hi; ++i) {
      auto f = factors[i];
      const auto target = windows.index_of(f.subspan(1));
      ts.push_back({from, f[k - 1], base + static_cast<State>(*target)});
    }
  };
  for (State leaf : prefix_leaves) link(leaf, trie_word[leaf]);
  for (std::size_t i = 0; i < windows.size(); ++i) link(base + static_cast<State>(i), windows[i]);

  return Nfa(s.alphabet(), trie_word.size() + windows.size(), 0, std::move(finals), std::move(ts));
}

SltSpec infer_slt(const std::vector<Word>& sample, std::size_t k, std::vector<std::string> alphabet) {
  if (sample.empty()) throw InvalidInput("sample must be nonempty");
  if (k < 2) throw InvalidInput("width must be at least 2");
  std::vector<Symbol> prefixes, suffixes, factors;
  std::vector<Word> short_words;
  for (const Word& w : sample) {
    if (w.empty()) throw InvalidInput("sample contains the empty word");
    if (w.size() < k) short_words.push_back(w);
    if (w.size() >= k - 1) {
      prefixes.insert(prefixes.end(), w.begin(), w.begin() + (k - 1));
      suffixes.insert(suffixes.end(), w.end() - (k - 1), w.end());
    }
    for (std::size_t i = 0; i + k <= w.size(); ++i) {
      factors.insert(factors.end(), w.begin() + i, w.begin() + i + k);
    }
  }
  return SltSpec(k, std::move(alphabet), FixedWordSet::from_flat(k - 1, std::move(prefixes)),
                 FixedWordSet::from_flat(k - 1, std::move(suffixes)),
                 FixedWordSet::from_flat(k, std::move(factors)), std::move(short_words));
}

WidthSearch min_slt_width(const Nfa& m, std::size_t max_k, std::size_t max_len, std::size_t cap) {
  if (max_k < 2) throw InvalidInput("max_k must be at least 2");
  if (max_len < 3 * max_k) throw InvalidInput("max_len must be at least 3 * max_k");
  WidthSearch out;
  out.horizon = max_len;
  const auto sample = enumerate_language(m, max_len, cap);
  if (sample.empty()) {
    out.width = 2;
    return out;
  }
  for (std::size_t k = 2; k <= max_k; ++k) {
    const SltSpec spec = infer_slt(sample, k, m.alphabet());
    // The inferred language contains the sample, so a bounded equivalence check
    // only has to look for extra words; enumerating them could explode.
    const auto eq = nfa_equivalent(m, slt_to_nfa(spec), {.max_len = max_len, .state_cap = cap});
    if (eq.verdict == EquivalenceVerdict::cap_exceeded) throw ResourceLimit("width search exceeds cap", eq.explored);
    if (eq.verdict == EquivalenceVerdict::equivalent) {
      out.width = k;
      return out;
    }
  }
  return out;
}

}  // namespace sltk
