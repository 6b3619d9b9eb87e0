// sltk: build, verify and use homomorphic slt decompositions of NFAs.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "sltk/construction.hpp"
#include "sltk/io.hpp"
#include "sltk/slt.hpp"
#include "sltk/verification.hpp"

namespace {

using namespace sltk;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct CliConfig {
  std::string nfa_path;
  std::string dec_path;
  std::string out_path;
  std::string word;
  std::string input_path;
  std::string mode = "exact";
  std::string corpus_dir;
  std::vector<std::string> h_list;
  std::vector<std::string> n_list;
  std::vector<std::size_t> ratios{2, 3};
  std::size_t ratio = 2;
  std::size_t states = 2;
  std::size_t max_len = 0;
  std::size_t max_k = 8;
  std::size_t alphabet_size = 0;
  std::size_t jobs = 1;
  std::size_t exact_states = 4;
  std::size_t set_cap = 1'000'000;
  std::size_t state_cap = 1'000'000;
  bool stream = false;
  bool sweep = false;
  // Reserved; every operation is deterministic.
  std::size_t seed = 0;
};

Nfa load_nfa(const std::string& path) { return parse_nfa(read_file(path)); }
Decomposition load_dec(const std::string& path) { return parse_decomposition(read_file(path)); }

std::string fixed(double v, int digits) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(digits) << v;
  return out.str();
}

void print_build(const Decomposition& d) {
  std::cout << "kind=" << to_string(d.kind) << " h=" << d.h << " m=" << d.m << " k=" << d.width()
            << " local_symbols=" << d.slt.alphabet().size() << " I=" << d.slt.prefixes().size()
            << " T=" << d.slt.suffixes().size() << " F=" << d.slt.factors().size()
            << " short=" << d.slt.short_words().size() << " residual=" << d.residual.size() << '\n';
}

int cmd_build(const CliConfig& c) {
  const Nfa total = totalize(load_nfa(c.nfa_path));
  if (c.ratio >= total.num_states()) {
    std::cerr << "warning: ratio " << c.ratio << " >= " << total.num_states()
              << " states; build2 gives width 2 at no larger ratio\n";
  }
  const Decomposition d = medvedev_main(total, c.ratio, {.set_cap = c.set_cap});
  write_file(c.out_path, format_decomposition(d));
  print_build(d);
  return kOk;
}

int cmd_build2(const CliConfig& c) {
  const Decomposition d = medvedev_width2(totalize(load_nfa(c.nfa_path)));
  write_file(c.out_path, format_decomposition(d));
  print_build(d);
  return kOk;
}

int cmd_verify(const CliConfig& c) {
  const Nfa source = load_nfa(c.nfa_path);
  const Decomposition d = load_dec(c.dec_path);
  VerifyOptions options;
  options.mode = c.mode == "bounded" ? VerifyMode::bounded : VerifyMode::exact;
  if (c.max_len > 0) options.horizon = c.max_len;
  options.state_cap = c.state_cap;
  const auto report = verify_decomposition(source, d, options);
  std::cout << format_report(report, d.source_alphabet, d.slt.alphabet());
  std::cout << format_report_summary(report, d.source_alphabet);
  return report.pass ? kOk : kFailed;
}

int cmd_encode(const CliConfig& c) {
  const Nfa source = load_nfa(c.nfa_path);
  const Decomposition d = load_dec(c.dec_path);
  const Word w = parse_source_word(source.alphabet(), c.word);
  const Encoding e = encode_word(source, d, w);
  if (e.in_residual) {
    std::cout << "residual\n";
  } else {
    std::cout << format_word(d.slt.alphabet(), e.local) << '\n';
  }
  return kOk;
}

int cmd_decode(const CliConfig& c) {
  const Decomposition d = load_dec(c.dec_path);
  const Word z = parse_word(d.slt.alphabet(), c.word);
  std::cout << format_word(d.source_alphabet, decode_word(d, z)) << '\n';
  return kOk;
}

int cmd_recognize(const CliConfig& c) {
  const Decomposition d = load_dec(c.dec_path);
  std::ifstream file;
  if (!c.input_path.empty()) {
    file.open(c.input_path);
    if (!file) throw InvalidInput("cannot open '" + c.input_path + "'");
  }
  std::istream& in = c.input_path.empty() ? std::cin : file;
  StreamRecognizer recognizer(d.slt);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      std::cerr << "line " << line_no << ": empty word is never accepted\n";
      std::cout << "reject\n";
      continue;
    }
    Word z;
    try {
      z = parse_word(d.slt.alphabet(), line);
    } catch (const InvalidInput& e) {
      std::cerr << "line " << line_no << ": " << e.what() << '\n';
      std::cout << "reject\n";
      continue;
    }
    bool accepted = false;
    if (c.stream) {
      recognizer.reset();
      for (Symbol b : z) recognizer.feed(b);
      accepted = recognizer.finish();
    } else {
      accepted = slt_membership(d.slt, z);
    }
    std::cout << (accepted ? "accept" : "reject") << '\n';
  }
  return kOk;
}

int cmd_code(const CliConfig& c) {
  const Code code = build_code(c.states, c.ratio);
  std::cout << format_code(code);
  if (c.sweep) {
    const auto sweep = verify_factor_decodable(code);
    std::cout << "windows=" << sweep.windows_checked << '\n';
    std::cout << "decodable=" << (sweep.pass ? "yes" : "no") << '\n';
    if (!sweep.pass) return kFailed;
  }
  return kOk;
}

int cmd_table(const CliConfig& c) {
  std::vector<std::size_t> hs;
  for (const auto& h : c.h_list) hs.push_back(static_cast<std::size_t>(parse_big(h)));
  std::vector<BigInt> ns;
  for (const auto& n : c.n_list) ns.push_back(parse_big(n));
  for (std::size_t h : hs) {
    const ClosedForm fg = fg_values(h);
    std::cout << "h=" << h << " f=" << fixed(fg.f, 2) << " g=" << fixed(fg.g_reconciled, 2)
              << " g_printed=" << fixed(fg.g_printed, 2) << " f_lg2_h=" << fixed(fg.f * std::log2(double(h)), 2)
              << '\n';
  }
  for (const auto& row : width_table(hs, ns)) {
    std::cout << "h=" << row.h << " n=" << row.n << " closed=" << fixed(row.closed_value, 2)
              << " width_closed=" << row.closed_width << " width_exact=" << row.exact_width << '\n';
  }
  return kOk;
}

int cmd_minwidth(const CliConfig& c) {
  const Nfa m = load_nfa(c.nfa_path);
  const std::size_t horizon = c.max_len > 0 ? c.max_len : 3 * c.max_k;
  const WidthSearch r = min_slt_width(m, c.max_k, horizon, c.set_cap);
  std::cout << "width=" << (r.width ? std::to_string(*r.width) : "none") << '\n';
  std::cout << "horizon=" << r.horizon << '\n';
  return kOk;
}

int cmd_corpus(const CliConfig& c) {
  CorpusConfig config;
  config.directory = c.corpus_dir;
  config.ratios = c.ratios;
  config.jobs = c.jobs;
  config.exact_state_limit = c.exact_states;
  config.build.set_cap = c.set_cap;
  config.state_cap = c.state_cap;
  const CorpusReport report = run_corpus(config);
  std::cout << format_corpus_report(report);
  return report.pass() ? kOk : kFailed;
}

int cmd_refute(const CliConfig& c) {
  const Decomposition d = load_dec(c.dec_path);
  const Refutation r = refute_small_ratio(c.alphabet_size, d);
  std::cout << "letter=" << d.source_alphabet[r.letter] << '\n';
  std::cout << "unique_preimage=" << (r.local_witness || r.kind == Discrepancy::extra_in_residual
                                          ? d.slt.alphabet()[r.symbol]
                                          : std::string(""))
            << '\n';
  std::cout << "k=" << r.k << '\n';
  std::cout << "indistinguishable=" << (r.indistinguishable ? "yes" : "no") << '\n';
  std::cout << "search_limit=" << r.search_limit << '\n';
  if (!r.source_witness) {
    std::cout << "witness=none (bounded search)\n";
    return kOk;
  }
  std::cout << "discrepancy=" << to_string(r.kind) << '\n';
  std::cout << "witness=" << format_word(d.source_alphabet, *r.source_witness) << '\n';
  if (r.local_witness) std::cout << "local_witness=" << format_word(d.slt.alphabet(), *r.local_witness) << '\n';
  std::cout << "confirmed=" << (r.confirmed ? "yes" : "no") << '\n';
  std::cout << "note=the witness refutes this candidate only; the general lower bound is a proof, not a search\n";
  return kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homomorphic strictly locally testable decompositions of finite automata"};
  app.require_subcommand(1);
  CliConfig c;

  auto* build = app.add_subcommand("build", "width-2m construction over A x D");
  build->add_option("--nfa", c.nfa_path, "NFA file")->required()->check(CLI::ExistingFile);
  build->add_option("--ratio", c.ratio, "digits per letter (h)")->required()->check(CLI::Range(2, 1 << 20));
  build->add_option("--out", c.out_path, "decomposition file to write")->required();
  build->add_option("--set-cap", c.set_cap, "largest set size to generate");

  auto* build2 = app.add_subcommand("build2", "width-2 construction over Q x A");
  build2->add_option("--nfa", c.nfa_path, "NFA file")->required()->check(CLI::ExistingFile);
  build2->add_option("--out", c.out_path, "decomposition file to write")->required();

  auto* verify = app.add_subcommand("verify", "check pi(L') U residual = L(M)");
  verify->add_option("--nfa", c.nfa_path, "NFA file")->required()->check(CLI::ExistingFile);
  verify->add_option("--dec", c.dec_path, "decomposition file")->required()->check(CLI::ExistingFile);
  verify->add_option("--mode", c.mode, "exact or bounded")->check(CLI::IsMember({"exact", "bounded"}));
  verify->add_option("--maxlen", c.max_len, "bounded horizon (default max(3m+6, 2k+4))");
  verify->add_option("--state-cap", c.state_cap, "subset pairs before exact mode downgrades");

  auto* encode = app.add_subcommand("encode", "encode a member of L(M) as a local word");
  encode->add_option("--nfa", c.nfa_path, "NFA file")->required()->check(CLI::ExistingFile);
  encode->add_option("--dec", c.dec_path, "decomposition file")->required()->check(CLI::ExistingFile);
  encode->add_option("--word", c.word, "source word ('aab' or 'a.a.b')")->required();

  auto* decode = app.add_subcommand("decode", "project a local word onto the source alphabet");
  decode->add_option("--dec", c.dec_path, "decomposition file")->required()->check(CLI::ExistingFile);
  decode->add_option("--word", c.word, "local word, symbols '.'-separated")->required();

  auto* recognize = app.add_subcommand("recognize", "accept/reject local words, one per line");
  recognize->add_option("--dec", c.dec_path, "decomposition file")->required()->check(CLI::ExistingFile);
  recognize->add_flag("--stream", c.stream, "use the sliding-window recognizer");
  recognize->add_option("--input", c.input_path, "read words from a file instead of stdin")
      ->check(CLI::ExistingFile);

  auto* code = app.add_subcommand("code", "factor-decodable code for n states");
  code->add_option("--states", c.states, "number of states")->required()->check(CLI::Range(2, 1 << 24));
  code->add_option("--ratio", c.ratio, "digits (h)")->required()->check(CLI::Range(2, 1 << 20));
  code->add_flag("--verify", c.sweep, "sweep every window for decodability");

  auto* table = app.add_subcommand("table", "f/g coefficients and width table");
  table->set_help_flag("--help", "Print this help message and exit");
  table->add_option("--h", c.h_list, "comma-separated ratios")->delimiter(',')->required();
  table->add_option("--n", c.n_list, "comma-separated state counts (1e40 and 10^40 accepted)")
      ->delimiter(',')
      ->required();

  auto* minwidth = app.add_subcommand("minwidth", "smallest slt width agreeing with L(M) up to a horizon");
  minwidth->add_option("--nfa", c.nfa_path, "NFA file")->required()->check(CLI::ExistingFile);
  minwidth->add_option("--max-k", c.max_k, "largest width to try")->check(CLI::Range(2, 64));
  minwidth->add_option("--max-len", c.max_len, "agreement horizon (default 3 * max-k)");

  auto* corpus = app.add_subcommand("corpus", "build and verify every NFA in a directory");
  corpus->add_option("--dir", c.corpus_dir, "corpus directory")->required()->check(CLI::ExistingDirectory);
  corpus->add_option("--ratios", c.ratios, "comma-separated h values")->delimiter(',');
  corpus->add_option("--jobs", c.jobs, "files processed in parallel")->check(CLI::Range(1, 256));
  corpus->add_option("--exact-states", c.exact_states, "also verify exactly up to this many states");
  corpus->add_option("--set-cap", c.set_cap, "largest set size to generate");
  corpus->add_option("--state-cap", c.state_cap, "subset pairs before exact mode downgrades");

  auto* refute = app.add_subcommand("refute", "run the ratio lower-bound witness procedure");
  refute->add_option("--dec", c.dec_path, "candidate decomposition of the union of (aa)+")
      ->required()
      ->check(CLI::ExistingFile);
  refute->add_option("--alphabet-size", c.alphabet_size, "|A|")->required();

  app.add_option("--seed", c.seed, "reserved, unused");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << '\n' << "run with --help for the expected form\n";
    return kUsage;
  }

  try {
    if (*build) return cmd_build(c);
    if (*build2) return cmd_build2(c);
    if (*verify) return cmd_verify(c);
    if (*encode) return cmd_encode(c);
    if (*decode) return cmd_decode(c);
    if (*recognize) return cmd_recognize(c);
    if (*code) return cmd_code(c);
    if (*table) return cmd_table(c);
    if (*minwidth) return cmd_minwidth(c);
    if (*corpus) return cmd_corpus(c);
    if (*refute) return cmd_refute(c);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ResourceLimit& e) {
    std::cerr << "error: " << e.what() << " (" << e.observed() << ")\n";
    return kUsage;
  }
  return kUsage;
}
