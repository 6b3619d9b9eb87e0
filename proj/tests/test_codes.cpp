#include "doctest.h"
#include "support.hpp"

#include <cmath>

#include "sltk/codes.hpp"

using namespace sltk;

namespace {

// Every window of every concatenation q1 q2 q3, decoded the slow way: scan all
// m start positions and compare against every codeword.
bool brute_decodable(const Code& c) {
  const std::size_t m = c.m();
  for (const auto& x : c.codewords())
    for (const auto& y : c.codewords())
      for (const auto& z : c.codewords()) {
        DigitWord s = x;
        s.insert(s.end(), y.begin(), y.end());
        s.insert(s.end(), z.begin(), z.end());
        for (std::size_t start = 0; start + 2 * m - 1 <= s.size(); ++start) {
          std::size_t hits = 0;
          for (std::size_t p = 0; p < m; ++p)
            for (const auto& w : c.codewords())
              if (std::equal(w.begin(), w.end(), s.begin() + start + p)) ++hits;
          if (hits != 1) return false;
        }
      }
  return true;
}

}  // namespace

TEST_CASE("S(m) enumeration matches brute-force filtering") {
  for (std::size_t h = 2; h <= 4; ++h) {
    for (std::size_t m = 2; m <= 8; ++m) {
      const auto expected = oracle::brute_S(h, m);
      REQUIRE(enumerate_S(h, m) == expected);
      CHECK(count_S(h, m) == expected.size());
    }
  }
  CHECK(enumerate_S(2, 2) == std::vector<DigitWord>{{0, 0}});
  CHECK(enumerate_S(3, 3) == std::vector<DigitWord>{{1, 0, 0}, {2, 0, 0}});
}

TEST_CASE("count_S recurrence values") {
  CHECK(count_S(2, 2) == 1);
  CHECK(count_S(2, 3) == 1);
  CHECK(count_S(2, 4) == 2);
  // h = 2 gives Fibonacci numbers.
  CHECK(count_S(2, 12) == 89);
  CHECK(count_S(3, 4) == 2 * (2 + 1));
  // Exact beyond 64 bits.
  CHECK(count_S(2, 200) > BigInt(1) << 130);
  CHECK_THROWS_AS(count_S(1, 4), InvalidInput);
  CHECK_THROWS_AS(count_S(2, 1), InvalidInput);
}

TEST_CASE("enumeration cap") { CHECK_THROWS_AS(enumerate_S(4, 14, 1000), ResourceLimit); }

TEST_CASE("closed-form coefficients") {
  const ClosedForm c2 = fg_values(2);
  // h = 2: f = 1 / (lg2(1 + sqrt 5) - 1) = 1 / lg2(golden ratio).
  CHECK(c2.f == doctest::Approx(1.0 / std::log2((1 + std::sqrt(5.0)) / 2)).epsilon(1e-12));
  CHECK(c2.g_reconciled == doctest::Approx(1 + c2.f * (1 + std::log2(5.0) / 2)).epsilon(1e-12));
  CHECK(c2.g_printed == doctest::Approx(1 + c2.f / 2 * std::log2(5.0)).epsilon(1e-12));
  for (std::size_t h : {3u, 10u, 100u, 1000u, 100000u}) {
    const ClosedForm c = fg_values(h);
    CHECK(c.f > 0);
    CHECK(c.g_reconciled >= 2);
    CHECK(c.f * std::log2(double(h)) >= 1);
    CHECK(c.f < fg_values(h - 1).f);
  }
  CHECK_THROWS_AS(fg_values(1), InvalidInput);
}

TEST_CASE("block length") {
  CHECK(choose_m(2, 2).m == 4);
  CHECK(choose_m(2, 3).m == 3);
  CHECK(choose_m(3, 3).m == 4);
  CHECK(choose_m(10, 10).m == 4);
  const auto b = choose_m(10, 2);
  CHECK(b.m == 8);
  CHECK(b.closed_form == 9);
  CHECK(b.floor == 4);
  for (std::size_t h : {2u, 3u, 4u, 10u}) {
    for (std::size_t n = 2; n <= 400; n += 7) {
      const auto r = choose_m(n, h);
      CHECK(count_S(h, r.m) >= n);
      CHECK(count_S(h, r.m - 1) < n);
      CHECK(r.m <= r.closed_form);
      CHECK(r.m >= r.floor);
    }
  }
  CHECK(log2_big(BigInt(1) << 200) == doctest::Approx(200));
}

TEST_CASE("built codes are disciplined and decodable") {
  for (std::size_t h = 2; h <= 4; ++h) {
    for (std::size_t n = 2; n <= 9; ++n) {
      const Code c = build_code(n, h);
      CHECK(c.size() == n);
      CHECK_FALSE(c.discipline_violation().has_value());
      for (const auto& w : c.codewords()) CHECK(oracle::in_S(w));
      const auto report = verify_factor_decodable(c);
      CHECK(report.pass);
      CHECK(brute_decodable(c));
      CHECK(report.windows_checked == n * n * n * (c.m() + 2));
    }
  }
}

TEST_CASE("code construction rejects malformed codes") {
  CHECK_THROWS_AS(Code(2, {{0, 0}, {0, 0}}), InvalidInput);
  CHECK_THROWS_AS(Code(2, {{0, 0}, {1, 0, 0}}), InvalidInput);
  CHECK_THROWS_AS(Code(2, {{0, 2}}), InvalidInput);
  CHECK_THROWS_AS(Code(2, {{0}}), InvalidInput);
}

TEST_CASE("an undisciplined code is caught with a witness window") {
  const Code broken(2, {{0, 0, 0, 0}, {1, 1, 0, 0}});
  CHECK(broken.discipline_violation().has_value());
  const auto report = verify_factor_decodable(broken);
  CHECK_FALSE(report.pass);
  REQUIRE(report.witness.has_value());
  CHECK(report.witness->size() == 2 * broken.m() - 1);
  CHECK(codeword_occurrences(broken, *report.witness).size() != 1);
  CHECK_FALSE(brute_decodable(broken));
}

TEST_CASE("factor decoding") {
  const Code c = build_code(3, 2);
  REQUIRE(c.m() == 5);
  const DigitWord q0 = c[0], q1 = c[1], q2 = c[2];
  DigitWord s = q0;
  s.insert(s.end(), q1.begin(), q1.end());
  s.insert(s.end(), q2.begin(), q2.end());
  for (std::size_t start = 0; start + 9 <= s.size(); ++start) {
    const std::span<const Digit> window(s.data() + start, 9);
    const auto d = factor_decode(c, window);
    REQUIRE(d.has_value());
    const std::size_t aligned = (5 - start % 5) % 5 + 1;
    CHECK(d->position == aligned);
    CHECK(d->state == (start + aligned - 1) / 5);
  }
  CHECK_FALSE(factor_decode(c, DigitWord(9, 1)).has_value());
  CHECK(c.state_of(q2) == 2);
  CHECK_FALSE(c.state_of(DigitWord{1, 1, 1, 1, 1}).has_value());
}

TEST_CASE("sweep cap") { CHECK_THROWS_AS(verify_factor_decodable(build_code(40, 2), 1000), ResourceLimit); }

TEST_CASE("digit formatting") {
  CHECK(format_digits({0, 1, 2}, 3) == "012");
  CHECK(format_digits({0, 11, 2}, 12) == "0.11.2");
}
