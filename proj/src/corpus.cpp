#include <algorithm>
#include <filesystem>
#include <future>
#include <sstream>

#include "sltk/io.hpp"
#include "sltk/verification.hpp"

namespace sltk {

namespace fs = std::filesystem;

namespace {

std::string verdict_detail(const VerificationReport& r, const std::vector<std::string>& alphabet) {
  std::ostringstream out;
  out << (r.mode == VerifyMode::exact ? "exact" : "bounded horizon=" + std::to_string(r.horizon));
  out << " |I|=" << r.prefixes << " |T|=" << r.suffixes << " |F|=" << r.factors << " |residual|=" << r.residual;
  if (r.notice) out << " (downgraded)";
  if (!r.pass) out << " witness=" << format_word(alphabet, *r.source_witness) << " " << to_string(r.discrepancy);
  return out.str();
}

template <typename Fn>
void guarded(std::vector<CorpusEntry>& out, const std::string& file, const std::string& check, Fn&& fn) {
  CorpusEntry entry{file, check, false, ""};
  try {
    fn(entry);
  } catch (const std::exception& e) {
    entry.pass = false;
    entry.detail = std::string("error: ") + e.what();
  }
  out.push_back(std::move(entry));
}

std::vector<CorpusEntry> run_file(const CorpusConfig& config, const fs::path& nfa_path,
                                  const std::vector<fs::path>& fixtures) {
  std::vector<CorpusEntry> out;
  const std::string file = nfa_path.filename().string();
  std::optional<Nfa> source;
  guarded(out, file, "parse", [&](CorpusEntry& e) {
    source = parse_nfa(read_file(nfa_path.string()));
    e.pass = true;
    e.detail = "states=" + std::to_string(source->num_states()) +
               " letters=" + std::to_string(source->alphabet_size());
  });
  if (!source) return out;
  const Nfa total = totalize(*source);

  guarded(out, file, "width2", [&](CorpusEntry& e) {
    const auto report = verify_decomposition(*source, medvedev_width2(total),
                                             {.mode = VerifyMode::exact, .horizon = {}, .state_cap = config.state_cap});
    e.pass = report.pass;
    e.detail = verdict_detail(report, source->alphabet());
  });
  for (std::size_t h : config.ratios) {
    std::optional<Decomposition> built;
    guarded(out, file, "main h=" + std::to_string(h), [&](CorpusEntry& e) {
      built = medvedev_main(total, h, config.build);
      const auto report = verify_decomposition(*source, *built, {.mode = VerifyMode::bounded, .horizon = {}, .state_cap = config.state_cap});
      e.pass = report.pass;
      e.detail = "m=" + std::to_string(built->m) + " k=" + std::to_string(built->width()) + " " +
                 verdict_detail(report, source->alphabet());
    });
    if (built && total.num_states() <= config.exact_state_limit) {
      guarded(out, file, "main h=" + std::to_string(h) + " exact", [&](CorpusEntry& e) {
        const auto report = verify_decomposition(*source, *built, {.mode = VerifyMode::exact, .horizon = {}, .state_cap = config.state_cap});
        e.pass = report.pass && !report.notice;
        e.detail = verdict_detail(report, source->alphabet());
      });
    }
    guarded(out, file, "code h=" + std::to_string(h), [&](CorpusEntry& e) {
      const Code code = build_code(total.num_states(), h);
      const auto sweep = verify_factor_decodable(code);
      e.pass = sweep.pass;
      e.detail = "m=" + std::to_string(code.m()) + " windows=" + std::to_string(sweep.windows_checked);
      if (!sweep.pass) e.detail += " witness=" + format_digits(*sweep.witness, h) + " " + sweep.reason;
    });
  }
  for (const fs::path& fixture : fixtures) {
    guarded(out, file, "fixture " + fixture.filename().string(), [&](CorpusEntry& e) {
      const Decomposition d = parse_decomposition(read_file(fixture.string()));
      const auto report = verify_decomposition(*source, d, {.mode = VerifyMode::exact, .horizon = {}, .state_cap = config.state_cap});
      e.pass = report.pass;
      e.detail = verdict_detail(report, source->alphabet());
    });
  }
  return out;
}

}  // namespace

bool CorpusReport::pass() const { return failures() == 0; }

std::size_t CorpusReport::failures() const {
  return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const CorpusEntry& e) { return !e.pass; }));
}

CorpusReport run_corpus(const CorpusConfig& config) {
  if (!fs::is_directory(config.directory)) throw InvalidInput("not a directory: '" + config.directory + "'");
  std::vector<fs::path> machines;
  std::vector<fs::path> decompositions;
  for (const auto& entry : fs::directory_iterator(config.directory)) {
    if (!entry.is_regular_file()) continue;
    if (entry.path().extension() == ".nfa") machines.push_back(entry.path());
    if (entry.path().extension() == ".dec") decompositions.push_back(entry.path());
  }
  std::sort(machines.begin(), machines.end());
  std::sort(decompositions.begin(), decompositions.end());

  auto fixtures_of = [&](const fs::path& machine) {
    const std::string prefix = machine.stem().string() + ".";
    std::vector<fs::path> out;
    for (const auto& d : decompositions) {
      if (d.filename().string().rfind(prefix, 0) == 0) out.push_back(d);
    }
    return out;
  };

  std::vector<std::vector<CorpusEntry>> results(machines.size());
  const std::size_t jobs = std::max<std::size_t>(1, config.jobs);
  for (std::size_t begin = 0; begin < machines.size(); begin += jobs) {
    std::vector<std::future<std::vector<CorpusEntry>>> batch;
    const std::size_t end = std::min(machines.size(), begin + jobs);
    for (std::size_t i = begin; i < end; ++i) {
      batch.push_back(std::async(jobs == 1 ? std::launch::deferred : std::launch::async,
                                 [&, i] { return run_file(config, machines[i], fixtures_of(machines[i])); }));
    }
    for (std::size_t i = begin; i < end; ++i) results[i] = batch[i - begin].get();
  }
  CorpusReport report;
  for (auto& r : results) {
    for (auto& e : r) report.entries.push_back(std::move(e));
  }
  return report;
}

std::string format_corpus_report(const CorpusReport& r) {
  std::ostringstream out;
  for (const CorpusEntry& e : r.entries) {
    out << "file=" << e.file << " check=\"" << e.check << "\" status=" << (e.pass ? "pass" : "fail")
        << " detail=\"" << e.detail << "\"\n";
  }
  out << "entries=" << r.entries.size() << '\n';
  out << "failures=" << r.failures() << '\n';
  out << "status=" << (r.pass() ? "pass" : "fail") << '\n';
  return out.str();
}

}  // namespace sltk
