#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "sltk/automata.hpp"
#include "sltk/codes.hpp"
#include "sltk/construction.hpp"
#include "sltk/types.hpp"

namespace sltk {

enum class VerifyMode { exact, bounded };

struct VerifyOptions {
  VerifyMode mode = VerifyMode::exact;
  /// Bounded horizon; defaults to max(3m + 6, 2k + 4).
  std::optional<std::size_t> horizon;
  std::size_t state_cap = 1'000'000;
};

/// Which side of pi(L') U residual = L(M) a counterexample breaks.
enum class Discrepancy {
  none,
  missing_from_image,  // in L(M), not produced
  extra_in_image,      // produced by the slt language, not in L(M)
  extra_in_residual,   // listed in the residual, not in L(M)
};

std::string to_string(Discrepancy d);

struct VerificationReport {
  VerifyMode mode = VerifyMode::exact;
  std::size_t horizon = 0;  // 0 in exact mode
  bool pass = true;
  /// Set when exact mode hit the state cap and fell back to bounded mode.
  std::optional<std::string> notice;
  Discrepancy discrepancy = Discrepancy::none;
  std::optional<Word> source_witness;
  /// Local word whose image is the witness (extra_in_image only).
  std::optional<Word> local_witness;
  std::size_t prefixes = 0, suffixes = 0, factors = 0, residual = 0;
  std::size_t explored = 0;
  double millis = 0;
};

std::size_t default_horizon(const Decomposition& d);

/// pi-image of the slt language united with the residual, as an automaton over
/// the source alphabet.
Nfa image_automaton(const Decomposition& d);

VerificationReport verify_decomposition(const Nfa& source, const Decomposition& d, const VerifyOptions& options = {});

/// Human-readable and key=value renderings of a report.
std::string format_report(const VerificationReport& r, const std::vector<std::string>& source_alphabet,
                          const std::vector<std::string>& local_alphabet);
std::string format_report_summary(const VerificationReport& r, const std::vector<std::string>& source_alphabet);

/// Outcome of running the lower-bound witness procedure on a candidate
/// decomposition of the union over letters a of (aa)+.
struct Refutation {
  Symbol letter = 0;  // letter with a single preimage
  Symbol symbol = 0;  // its unique preimage
  std::size_t k = 0;
  /// b^{2k} and b^{2k+1} share prefix, suffix and factor sets at width k.
  bool indistinguishable = false;
  Discrepancy kind = Discrepancy::none;
  std::optional<Word> source_witness;
  std::optional<Word> local_witness;
  /// Witness replayed independently against the language and the slt spec.
  bool confirmed = false;
  /// Longest residual word; the search went up to search_limit.
  std::size_t residual_length = 0;
  std::size_t search_limit = 0;
};

/// Membership in the union over all letters a of (aa)+.
bool in_even_blocks_language(const Word& w);

/// Throws InvalidInput when |B| >= 2|A| (ratio 2 is sufficient, nothing to refute).
Refutation refute_small_ratio(std::size_t alphabet_size, const Decomposition& d);

struct WidthTableRow {
  std::size_t h = 0;
  BigInt n;
  double f = 0;
  double g = 0;
  double closed_value = 0;
  std::size_t closed_width = 0;
  std::size_t exact_width = 0;
};

std::vector<WidthTableRow> width_table(const std::vector<std::size_t>& hs, const std::vector<BigInt>& ns);

/// Parses "10", "1e3", "10^40" and plain big decimals.
BigInt parse_big(const std::string& text);

struct CorpusConfig {
  std::string directory;
  std::vector<std::size_t> ratios{2, 3};
  /// Machines with at most this many (totalized) states are also verified exactly.
  std::size_t exact_state_limit = 4;
  std::size_t jobs = 1;
  BuildOptions build;
  std::size_t state_cap = 1'000'000;
};

struct CorpusEntry {
  std::string file;
  std::string check;  // e.g. "width2", "main h=2", "code h=2", "fixture x.dec"
  bool pass = false;
  std::string detail;
};

struct CorpusReport {
  std::vector<CorpusEntry> entries;
  bool pass() const;
  std::size_t failures() const;
};

/// Builds, verifies and sweeps every *.nfa in the directory; every <stem>.*.dec
/// next to <stem>.nfa is verified as a fixture. Entries are ordered by file
/// name then check regardless of `jobs`.
CorpusReport run_corpus(const CorpusConfig& config);

std::string format_corpus_report(const CorpusReport& r);

}  // namespace sltk
