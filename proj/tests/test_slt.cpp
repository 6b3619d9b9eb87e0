#include "doctest.h"
#include "support.hpp"

#include "sltk/slt.hpp"

using namespace sltk;

namespace {

// Local language of a+ b (width 2): prefixes {a}, suffixes {b}, factors {aa, ab}.
SltSpec a_plus_b() {
  return SltSpec(2, {"a", "b"}, std::vector<Word>{{0}}, std::vector<Word>{{1}},
                 std::vector<Word>{{0, 0}, {0, 1}}, {});
}

SltSpec random_spec(std::mt19937_64& rng, std::size_t k, std::size_t letters) {
  std::bernoulli_distribution keep(0.6);
  auto pick = [&](std::size_t len) {
    std::vector<Word> out;
    for (Word& w : oracle::all_words(letters, len))
      if (keep(rng)) out.push_back(std::move(w));
    return out;
  };
  std::vector<Word> shorts;
  for (std::size_t len = 1; len < k; ++len)
    for (Word& w : pick(len)) shorts.push_back(std::move(w));
  std::vector<std::string> alphabet;
  for (std::size_t a = 0; a < letters; ++a) alphabet.push_back("s" + std::to_string(a));
  return SltSpec(k, alphabet, pick(k - 1), pick(k - 1), pick(k), shorts);
}

}  // namespace

TEST_CASE("fixed word sets") {
  const FixedWordSet s(2, {{1, 0}, {0, 1}, {1, 0}, {0, 0}});
  CHECK(s.size() == 3);
  CHECK(s.words() == std::vector<Word>{{0, 0}, {0, 1}, {1, 0}});
  CHECK(s.contains(Word{0, 1}));
  CHECK_FALSE(s.contains(Word{1, 1}));
  CHECK(s.index_of(Word{1, 0}) == 2);
  CHECK(s.prefix_range(Word{0}) == std::pair<std::size_t, std::size_t>{0, 2});
  CHECK(s.without(0).words() == std::vector<Word>{{0, 1}, {1, 0}});
  CHECK(FixedWordSet::from_flat(2, {1, 0, 0, 1, 1, 0}) == FixedWordSet(2, {{0, 1}, {1, 0}}));
  CHECK_THROWS_AS(FixedWordSet(2, {{0}}), InvalidInput);
}

TEST_CASE("spec validation") {
  CHECK_THROWS_AS(SltSpec(1, {"a"}, std::vector<Word>{}, std::vector<Word>{}, std::vector<Word>{}, {}), InvalidInput);
  // Prefix of the wrong length.
  CHECK_THROWS_AS(SltSpec(3, {"a"}, std::vector<Word>{{0}}, std::vector<Word>{}, std::vector<Word>{}, {}),
                  InvalidInput);
  // Unknown symbol.
  CHECK_THROWS_AS(SltSpec(2, {"a"}, std::vector<Word>{{1}}, std::vector<Word>{}, std::vector<Word>{}, {}),
                  InvalidInput);
  // Short word too long.
  CHECK_THROWS_AS(SltSpec(2, {"a"}, std::vector<Word>{}, std::vector<Word>{}, std::vector<Word>{}, {{0, 0}}),
                  InvalidInput);
}

TEST_CASE("window operations") {
  const Word w{0, 1, 1, 0, 1};
  const Windows win = window_ops(w, 2);
  CHECK(win.prefix == Word{0, 1});
  CHECK(win.suffix == Word{0, 1});
  CHECK(win.factors == std::vector<Word>{{0, 1}, {1, 0}, {1, 1}});
  CHECK(window_ops(Word{0}, 3).prefix == Word{0});
  CHECK(window_ops(Word{0}, 3).factors.empty());
  CHECK(subword(w, 2, 3) == Word{1, 1});
  CHECK(subword(w, 3, 2).empty());
}

TEST_CASE("membership on a small language") {
  const SltSpec s = a_plus_b();
  CHECK(slt_membership(s, Word{0, 1}));
  CHECK(slt_membership(s, Word{0, 0, 0, 1}));
  CHECK_FALSE(slt_membership(s, Word{1}));
  CHECK_FALSE(slt_membership(s, Word{0, 1, 1}));
  CHECK_FALSE(slt_membership(s, Word{}));
}

TEST_CASE("words of length k-1 are decided by the short list only") {
  // k = 3, prefix and suffix {ab}: "ab" would pass the window test, but only
  // the short list counts at length k-1.
  const SltSpec without(3, {"a", "b"}, std::vector<Word>{{0, 1}}, std::vector<Word>{{0, 1}},
                        std::vector<Word>{{0, 1, 0}}, {});
  CHECK_FALSE(slt_membership(without, Word{0, 1}));
  const SltSpec with(3, {"a", "b"}, std::vector<Word>{{0, 1}}, std::vector<Word>{{0, 1}},
                     std::vector<Word>{{0, 1, 0}}, {{0, 1}});
  CHECK(slt_membership(with, Word{0, 1}));
}

TEST_CASE("membership, streaming and the window automaton agree with the definition") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t k = 2 + trial % 3;
    const std::size_t letters = 2 + trial % 2;
    const SltSpec s = random_spec(rng, k, letters);
    const Nfa automaton = slt_to_nfa(s);
    StreamRecognizer r(s);
    const oracle::SltOracle member(s);
    for (std::size_t len = 1; len <= 7; ++len) {
      for (const Word& w : oracle::all_words(letters, len)) {
        const bool expected = member(w);
        REQUIRE(slt_membership(s, w) == expected);
        r.reset();
        for (Symbol b : w) r.feed(b);
        REQUIRE(r.finish() == expected);
        REQUIRE(oracle::accepts(automaton, w) == expected);
      }
    }
  }
}

TEST_CASE("window automaton is deterministic") {
  std::mt19937_64 rng(23);
  const Nfa a = slt_to_nfa(random_spec(rng, 3, 2));
  for (State q = 0; q < a.num_states(); ++q)
    for (Symbol b = 0; b < 2; ++b) CHECK(a.outgoing(q, b).size() <= 1);
}

TEST_CASE("stream recognizer lifecycle") {
  const SltSpec s = a_plus_b();
  StreamRecognizer r(s);
  CHECK_FALSE(r.finish());  // empty input
  r.reset();
  r.feed(0);
  r.feed(1);
  CHECK(r.finish());
  CHECK_THROWS_AS(r.feed(0), std::logic_error);
  r.reset();
  r.feed(1);
  r.feed(0);
  CHECK_FALSE(r.finish());
}

TEST_CASE("inferred spec is the tightest one containing the sample") {
  const std::vector<Word> sample{{0, 1}, {0, 0, 1}, {0, 0, 0, 1}};
  const SltSpec s = infer_slt(sample, 2, {"a", "b"});
  for (const Word& w : sample) CHECK(slt_membership(s, w));
  CHECK(s == a_plus_b().with_prefixes(s.prefixes()).with_suffixes(s.suffixes()).with_factors(s.factors()));
  CHECK(s.factors().words() == std::vector<Word>{{0, 0}, {0, 1}});
  // Dropping any generated factor loses a sample word.
  for (std::size_t i = 0; i < s.factors().size(); ++i) {
    const SltSpec smaller = s.with_factors(s.factors().without(i));
    CHECK(std::any_of(sample.begin(), sample.end(), [&](const Word& w) { return !slt_membership(smaller, w); }));
  }
}

TEST_CASE("minimum width on the hierarchy machines") {
  for (std::size_t h = 2; h <= 4; ++h) {
    const auto r = min_slt_width(oracle::ab_power_plus(h), 2 * (h + 1), 6 * (h + 1));
    REQUIRE(r.width.has_value());
    CHECK(*r.width == h + 1);
  }
  CHECK(min_slt_width(oracle::load("aplus.nfa"), 4, 12).width == 2);
  CHECK_FALSE(min_slt_width(oracle::load("aa_or_bb.nfa"), 8, 24).width.has_value());
  CHECK_THROWS_AS(min_slt_width(oracle::load("aplus.nfa"), 4, 11), InvalidInput);
}
