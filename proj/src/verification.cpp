#include "sltk/verification.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "sltk/io.hpp"
#include "sltk/slt.hpp"

namespace sltk {

namespace {

std::optional<Word> preimage_in(const Nfa& slt_nfa, const Homomorphism& pi, const Word& w,
                                const std::vector<std::string>& source_alphabet) {
  const Nfa projected = relabel(slt_nfa, source_alphabet, pi.image());
  auto path = find_successful_path(projected, w);
  if (!path) return std::nullopt;
  Word z;
  for (const Transition& t : path->transitions()) {
    for (const Transition& original : slt_nfa.outgoing(t.from)) {
      if (original.to == t.to && pi(original.letter) == t.letter) {
        z.push_back(original.letter);
        break;
      }
    }
  }
  return z;
}

Word power(Symbol s, std::size_t n) { return Word(n, s); }

}  // namespace

std::string to_string(Discrepancy d) {
  switch (d) {
    case Discrepancy::none: return "none";
    case Discrepancy::missing_from_image: return "missing_from_image";
    case Discrepancy::extra_in_image: return "extra_in_image";
    case Discrepancy::extra_in_residual: return "extra_in_residual";
  }
  return "unknown";
}

std::size_t default_horizon(const Decomposition& d) { return std::max(3 * d.m + 6, 2 * d.width() + 4); }

Nfa image_automaton(const Decomposition& d) {
  const Nfa slt_image = relabel(slt_to_nfa(d.slt), d.source_alphabet, d.pi.image());
  if (d.residual.empty()) return slt_image;
  return nfa_union(slt_image, finite_language_nfa(d.source_alphabet, d.residual));
}

VerificationReport verify_decomposition(const Nfa& source, const Decomposition& d, const VerifyOptions& options) {
  if (source.alphabet() != d.source_alphabet) throw InvalidInput("decomposition was built for another alphabet");
  const auto start = std::chrono::steady_clock::now();
  VerificationReport report;
  report.prefixes = d.slt.prefixes().size();
  report.suffixes = d.slt.suffixes().size();
  report.factors = d.slt.factors().size();
  report.residual = d.residual.size();

  const Nfa slt_nfa = slt_to_nfa(d.slt);
  Nfa image = relabel(slt_nfa, d.source_alphabet, d.pi.image());
  if (!d.residual.empty()) image = nfa_union(image, finite_language_nfa(d.source_alphabet, d.residual));

  EquivalenceResult eq;
  report.mode = options.mode;
  if (options.mode == VerifyMode::exact) {
    eq = nfa_equivalent(source, image, {.max_len = std::nullopt, .state_cap = options.state_cap});
    if (eq.verdict == EquivalenceVerdict::cap_exceeded) {
      report.notice = "exact check exceeded " + std::to_string(options.state_cap) +
                      " subset pairs; downgraded to bounded mode";
      report.mode = VerifyMode::bounded;
    }
  }
  if (report.mode == VerifyMode::bounded) {
    report.horizon = options.horizon.value_or(default_horizon(d));
    eq = nfa_equivalent(source, image, {.max_len = report.horizon, .state_cap = static_cast<std::size_t>(-1)});
  }
  report.explored = eq.explored;
  if (eq.verdict == EquivalenceVerdict::inequivalent) {
    report.pass = false;
    const Word& w = *eq.witness;
    report.source_witness = w;
    if (accepts(source, w)) {
      report.discrepancy = Discrepancy::missing_from_image;
    } else if (auto z = preimage_in(slt_nfa, d.pi, w, d.source_alphabet)) {
      report.discrepancy = Discrepancy::extra_in_image;
      report.local_witness = std::move(z);
    } else {
      report.discrepancy = Discrepancy::extra_in_residual;
    }
  }
  report.millis =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string format_report_summary(const VerificationReport& r, const std::vector<std::string>& source_alphabet) {
  std::ostringstream out;
  out << "mode=" << (r.mode == VerifyMode::exact ? "exact" : "bounded") << '\n';
  out << "horizon=" << r.horizon << '\n';
  out << "verdict=" << (r.pass ? "pass" : "fail") << '\n';
  out << "discrepancy=" << to_string(r.discrepancy) << '\n';
  out << "source_witness=" << (r.source_witness ? format_word(source_alphabet, *r.source_witness) : "") << '\n';
  out << "prefixes=" << r.prefixes << '\n';
  out << "suffixes=" << r.suffixes << '\n';
  out << "factors=" << r.factors << '\n';
  out << "residual=" << r.residual << '\n';
  out << "downgraded=" << (r.notice ? "yes" : "no") << '\n';
  return out.str();
}

std::string format_report(const VerificationReport& r, const std::vector<std::string>& source_alphabet,
                          const std::vector<std::string>& local_alphabet) {
  std::ostringstream out;
  out << "verification " << (r.pass ? "PASSED" : "FAILED") << " ("
      << (r.mode == VerifyMode::exact ? std::string("exact") : "bounded, horizon " + std::to_string(r.horizon))
      << ")\n";
  if (r.notice) out << "note: " << *r.notice << '\n';
  out << "  |I| = " << r.prefixes << ", |T| = " << r.suffixes << ", |F| = " << r.factors
      << ", |residual| = " << r.residual << '\n';
  if (!r.pass) {
    out << "  counterexample (" << to_string(r.discrepancy) << "): "
        << format_word(source_alphabet, *r.source_witness) << '\n';
    if (r.local_witness) out << "  local word: " << format_word(local_alphabet, *r.local_witness) << '\n';
  }
  return out.str();
}

bool in_even_blocks_language(const Word& w) {
  if (w.empty() || w.size() % 2 != 0) return false;
  return std::all_of(w.begin(), w.end(), [&](Symbol a) { return a == w.front(); });
}

Refutation refute_small_ratio(std::size_t alphabet_size, const Decomposition& d) {
  const std::size_t local_size = d.slt.alphabet().size();
  if (alphabet_size != d.source_alphabet.size()) throw InvalidInput("alphabet size does not match the decomposition");
  if (local_size >= 2 * alphabet_size) {
    throw InvalidInput("local alphabet has " + std::to_string(local_size) + " >= 2|A| symbols; nothing to refute");
  }
  std::vector<std::vector<Symbol>> preimages(alphabet_size);
  for (Symbol b = 0; b < local_size; ++b) preimages[d.pi(b)].push_back(b);

  Refutation out;
  out.k = d.width();
  std::optional<Symbol> lonely;
  for (Symbol a = 0; a < alphabet_size && !lonely; ++a) {
    if (preimages[a].size() == 1) lonely = a;
  }
  std::optional<Symbol> orphan;
  for (Symbol a = 0; a < alphabet_size && !orphan; ++a) {
    if (preimages[a].empty()) orphan = a;
  }
  for (const Word& w : d.residual) out.residual_length = std::max(out.residual_length, w.size());
  out.search_limit = out.residual_length + 2 * out.k + 2;
  auto in_residual = [&](const Word& w) {
    return std::binary_search(d.residual.begin(), d.residual.end(), w, shortlex_less);
  };

  if (!lonely) {
    // No preimage at all: a^l is never produced, so the first even l outside
    // the residual is missing.
    out.letter = *orphan;
    out.indistinguishable = true;
    for (std::size_t l = 2; l <= out.search_limit; l += 2) {
      if (!in_residual(power(out.letter, l))) {
        out.kind = Discrepancy::missing_from_image;
        out.source_witness = power(out.letter, l);
        out.confirmed = in_even_blocks_language(*out.source_witness);
        break;
      }
    }
    return out;
  }

  out.letter = *lonely;
  out.symbol = preimages[*lonely].front();
  const std::size_t k = out.k;
  const Word x = power(out.symbol, 2 * k);
  const Word xb = power(out.symbol, 2 * k + 1);
  const Windows wx = window_ops(x, k - 1), wxb = window_ops(xb, k - 1);
  out.indistinguishable = wx.prefix == wxb.prefix && wx.suffix == wxb.suffix &&
                          window_ops(x, k).factors == window_ops(xb, k).factors;

  auto record = [&](Discrepancy kind, std::size_t l) {
    out.kind = kind;
    out.source_witness = power(out.letter, l);
    out.local_witness = power(out.symbol, l);
  };
  if (slt_membership(d.slt, x)) {
    // a^{2k} is produced through b^{2k}; b^{2k+1} cannot be told apart.
    record(Discrepancy::extra_in_image, 2 * k + 1);
  } else {
    for (std::size_t l = 1; l <= out.search_limit; ++l) {
      const Word source = power(out.letter, l);
      const bool produced = slt_membership(d.slt, power(out.symbol, l));
      if (l % 2 == 0 && !produced && !in_residual(source)) {
        record(Discrepancy::missing_from_image, l);
        break;
      }
      if (l % 2 == 1 && produced) {
        record(Discrepancy::extra_in_image, l);
        break;
      }
      if (l % 2 == 1 && in_residual(source)) {
        record(Discrepancy::extra_in_residual, l);
        out.local_witness.reset();
        break;
      }
    }
  }

  if (out.source_witness) {
    const Word& w = *out.source_witness;
    switch (out.kind) {
      case Discrepancy::extra_in_image:
        out.confirmed = slt_membership(d.slt, *out.local_witness) && d.pi(*out.local_witness) == w &&
                        !in_even_blocks_language(w);
        break;
      case Discrepancy::missing_from_image:
        out.confirmed = in_even_blocks_language(w) && !in_residual(w) && !slt_membership(d.slt, *out.local_witness);
        break;
      case Discrepancy::extra_in_residual:
        out.confirmed = in_residual(w) && !in_even_blocks_language(w);
        break;
      case Discrepancy::none:
        break;
    }
  }
  return out;
}

BigInt parse_big(const std::string& text) {
  auto digits = [&](const std::string& s) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw InvalidInput("not a number: '" + text + "'");
    }
    return BigInt(s);
  };
  auto pow10 = [](const BigInt& base, std::size_t e) {
    BigInt r = 1;
    for (std::size_t i = 0; i < e; ++i) r *= base;
    return r;
  };
  if (auto e = text.find_first_of("eE"); e != std::string::npos) {
    return digits(text.substr(0, e)) * pow10(10, static_cast<std::size_t>(digits(text.substr(e + 1))));
  }
  if (auto c = text.find('^'); c != std::string::npos) {
    return pow10(digits(text.substr(0, c)), static_cast<std::size_t>(digits(text.substr(c + 1))));
  }
  return digits(text);
}

std::vector<WidthTableRow> width_table(const std::vector<std::size_t>& hs, const std::vector<BigInt>& ns) {
  std::vector<WidthTableRow> rows;
  for (std::size_t h : hs) {
    const ClosedForm c = fg_values(h);
    for (const BigInt& n : ns) {
      const BlockLength block = choose_m(n, h);
      WidthTableRow row;
      row.h = h;
      row.n = n;
      row.f = c.f;
      row.g = c.g_reconciled;
      row.closed_value = block.closed_form_value;
      row.closed_width = 2 * block.closed_form;
      row.exact_width = 2 * block.m;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace sltk
