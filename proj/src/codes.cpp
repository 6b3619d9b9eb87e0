#include "sltk/codes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sltk {

namespace {

bool digits_less(std::span<const Digit> a, std::span<const Digit> b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::size_t ceil_log(const BigInt& n, std::size_t h) {
  std::size_t e = 0;
  BigInt power = 1;
  while (power < n) {
    power *= h;
    ++e;
  }
  return e;
}

// Lexicographic generation of S(m), stopping after `limit` words.
std::vector<DigitWord> generate_S(std::size_t h, std::size_t m, std::size_t limit, std::size_t cap) {
  if (h < 2) throw InvalidInput("digit alphabet needs at least 2 digits");
  if (m < 2) throw InvalidInput("block length must be at least 2");
  std::vector<DigitWord> out;
  // The first m-2 digits avoid "00" and do not end in 0; the word then ends in 00.
  DigitWord word(m, 0);
  const std::size_t free = m - 2;
  auto fill = [&](auto&& self, std::size_t pos) -> void {
    if (out.size() >= limit) return;
    if (pos == free) {
      out.push_back(word);
      if (out.size() > cap) throw ResourceLimit("S(m) enumeration exceeds cap", out.size());
      return;
    }
    for (Digit d = 0; d < h; ++d) {
      if (d == 0 && (pos + 1 == free || (pos > 0 && word[pos - 1] == 0))) continue;
      word[pos] = d;
      self(self, pos + 1);
    }
  };
  fill(fill, 0);
  return out;
}

}  // namespace

std::vector<DigitWord> enumerate_S(std::size_t h, std::size_t m, std::size_t cap) {
  return generate_S(h, m, static_cast<std::size_t>(-1), cap);
}

BigInt count_S(std::size_t h, std::size_t m) {
  if (h < 2) throw InvalidInput("digit alphabet needs at least 2 digits");
  if (m < 2) throw InvalidInput("block length must be at least 2");
  if (m == 2) return 1;
  BigInt before = 1;
  BigInt current = h - 1;
  for (std::size_t i = 3; i < m; ++i) {
    BigInt next = (h - 1) * (current + before);
    before = std::move(current);
    current = std::move(next);
  }
  return current;
}

ClosedForm fg_values(std::size_t h) {
  if (h < 2) throw InvalidInput("h must be at least 2");
  const double hm1 = static_cast<double>(h) - 1.0;
  const double hp3 = static_cast<double>(h) + 3.0;
  ClosedForm c;
  c.f = 1.0 / (std::log2(hm1 + std::sqrt(hm1 * hp3)) - 1.0);
  const double logs = std::log2(hm1) + std::log2(hp3);
  c.g_printed = 1.0 + c.f / 2.0 * logs;
  c.g_reconciled = 1.0 + c.f * (1.0 + logs / 2.0);
  return c;
}

double log2_big(const BigInt& n) {
  if (n <= 0) throw InvalidInput("log2 of a non-positive number");
  return std::log2(n.convert_to<double>());
}

BlockLength choose_m(const BigInt& n, std::size_t h) {
  if (n < 2) throw InvalidInput("need at least 2 states");
  if (h < 2) throw InvalidInput("h must be at least 2");
  BlockLength out;
  std::size_t m = 2;
  BigInt before = 0;
  BigInt current = 1;  // |S(2)|
  while (current < n) {
    BigInt next = (m == 2) ? BigInt(h - 1) : BigInt((h - 1) * (current + before));
    before = std::move(current);
    current = std::move(next);
    ++m;
  }
  out.m = m;
  const ClosedForm c = fg_values(h);
  out.closed_form_value = c.g_reconciled + c.f * log2_big(n);
  out.closed_form = static_cast<std::size_t>(std::ceil(out.closed_form_value));
  out.floor = ceil_log(n, h);
  return out;
}

Code::Code(std::size_t h, std::vector<DigitWord> codewords) : h_(h), m_(0), codewords_(std::move(codewords)) {
  if (h_ < 2) throw InvalidInput("digit alphabet needs at least 2 digits");
  if (codewords_.empty()) throw InvalidInput("code must have at least one codeword");
  m_ = codewords_.front().size();
  if (m_ < 2) throw InvalidInput("codeword length must be at least 2");
  for (const DigitWord& w : codewords_) {
    if (w.size() != m_) throw InvalidInput("codewords must share one length");
    for (Digit d : w) {
      if (d >= h_) throw InvalidInput("digit out of range");
    }
  }
  sorted_.resize(codewords_.size());
  std::iota(sorted_.begin(), sorted_.end(), 0);
  std::sort(sorted_.begin(), sorted_.end(),
            [&](std::size_t a, std::size_t b) { return codewords_[a] < codewords_[b]; });
  for (std::size_t i = 1; i < sorted_.size(); ++i) {
    if (codewords_[sorted_[i - 1]] == codewords_[sorted_[i]]) throw InvalidInput("code is not injective");
  }
}

std::optional<std::size_t> Code::state_of(std::span<const Digit> w) const {
  if (w.size() != m_) return std::nullopt;
  auto it = std::lower_bound(sorted_.begin(), sorted_.end(), w, [&](std::size_t i, std::span<const Digit> key) {
    return digits_less(codewords_[i], key);
  });
  if (it != sorted_.end() && std::equal(w.begin(), w.end(), codewords_[*it].begin())) return *it;
  return std::nullopt;
}

std::optional<std::string> Code::discipline_violation() const {
  for (std::size_t q = 0; q < codewords_.size(); ++q) {
    const DigitWord& w = codewords_[q];
    if (w[m_ - 2] != 0 || w[m_ - 1] != 0) return "codeword of state " + std::to_string(q) + " does not end in 00";
    for (std::size_t i = 0; i + 2 < m_; ++i) {
      if (w[i] == 0 && w[i + 1] == 0) {
        return "codeword of state " + std::to_string(q) + " has 00 before its suffix";
      }
    }
  }
  if (m_ < ceil_log(codewords_.size(), h_)) return "block length below ceil(log_h n)";
  return std::nullopt;
}

Code build_code(std::size_t n, std::size_t h, std::size_t cap) {
  if (n < 2) throw InvalidInput("a code needs at least 2 states");
  const BlockLength block = choose_m(n, h);
  auto pool = generate_S(h, block.m, n, std::max(cap, n));
  return Code(h, std::move(pool));
}

std::vector<Decoded> codeword_occurrences(const Code& c, std::span<const Digit> window) {
  const std::size_t m = c.m();
  if (window.size() != 2 * m - 1) throw InvalidInput("window must have length 2m-1");
  std::vector<Decoded> hits;
  for (std::size_t j = 0; j < m; ++j) {
    if (auto q = c.state_of(window.subspan(j, m))) hits.push_back({j + 1, *q});
  }
  return hits;
}

std::optional<Decoded> factor_decode(const Code& c, std::span<const Digit> window) {
  auto hits = codeword_occurrences(c, window);
  if (hits.size() != 1) return std::nullopt;
  return hits.front();
}

DecodabilityReport verify_factor_decodable(const Code& c, std::size_t cap) {
  const std::size_t n = c.size();
  const std::size_t m = c.m();
  const std::size_t work = n * n * n * (m + 2);
  if (work > cap) throw ResourceLimit("factor-decodability sweep exceeds cap", work);
  DecodabilityReport report;
  DigitWord text(3 * m);
  std::vector<std::optional<std::size_t>> occurrence(2 * m + 1);
  for (std::size_t q1 = 0; q1 < n; ++q1) {
    std::copy(c[q1].begin(), c[q1].end(), text.begin());
    for (std::size_t q2 = 0; q2 < n; ++q2) {
      std::copy(c[q2].begin(), c[q2].end(), text.begin() + m);
      for (std::size_t q3 = 0; q3 < n; ++q3) {
        std::copy(c[q3].begin(), c[q3].end(), text.begin() + 2 * m);
        const std::size_t states[3] = {q1, q2, q3};
        // Each length-m factor of the text is looked up once; windows then
        // only count the hits among their m start positions.
        for (std::size_t p = 0; p + m <= 3 * m; ++p) occurrence[p] = c.state_of({text.data() + p, m});
        for (std::size_t s = 0; s + 2 * m - 1 <= 3 * m; ++s) {
          ++report.windows_checked;
          const std::size_t aligned = (m - s % m) % m + 1;
          const std::size_t expected = states[(s + aligned - 1) / m];
          std::size_t hits = 0, position = 0, state = 0;
          for (std::size_t j = 0; j < m; ++j) {
            if (occurrence[s + j]) {
              ++hits;
              position = j + 1;
              state = *occurrence[s + j];
            }
          }
          if (hits == 1 && position == aligned && state == expected) continue;
          report.pass = false;
          report.witness = DigitWord(text.begin() + s, text.begin() + s + 2 * m - 1);
          if (hits == 0) {
            report.reason = "no codeword occurrence";
          } else if (hits > 1) {
            report.reason = std::to_string(hits) + " codeword occurrences";
          } else {
            report.reason = "decoded position " + std::to_string(position) + " state " + std::to_string(state) +
                            ", expected position " + std::to_string(aligned) + " state " + std::to_string(expected);
          }
          return report;
        }
      }
    }
  }
  return report;
}

std::string format_digits(const DigitWord& w, std::size_t h) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (h > 10 && i > 0) out += '.';
    out += std::to_string(w[i]);
  }
  return out;
}

}  // namespace sltk
