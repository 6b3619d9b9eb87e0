#include "sltk/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace sltk {

namespace {

// Splits a line into tokens; "quoted" tokens keep their content verbatim and
// an unquoted '#' starts a comment.
std::vector<std::string> tokenize(std::string_view line, std::size_t line_no) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
    } else if (c == '#') {
      break;
    } else if (c == '"') {
      const std::size_t close = line.find('"', i + 1);
      if (close == std::string_view::npos) throw ParseError(line_no, "unterminated quoted token");
      out.emplace_back(line.substr(i + 1, close - i - 1));
      i = close + 1;
    } else {
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r' && line[j] != '#') ++j;
      out.emplace_back(line.substr(i, j - i));
      i = j;
    }
  }
  return out;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

std::size_t parse_count(const std::string& token, std::size_t line_no, const char* what) {
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError(line_no, std::string("expected a non-negative integer for ") + what + ", got '" + token + "'");
  }
  return value;
}

void check_letter_token(const std::string& token, std::size_t line_no) {
  if (token.empty()) throw ParseError(line_no, "empty letter");
  for (char c : token) {
    if (c == '.' || c == '|' || c == ' ' || c == '\t' || c == '"') {
      throw ParseError(line_no, "letter '" + token + "' contains a reserved character");
    }
  }
}

std::string quote_if_needed(const std::string& token) {
  return token.find('#') == std::string::npos ? token : "\"" + token + "\"";
}

}  // namespace

Nfa parse_nfa(std::string_view text) {
  std::optional<std::vector<std::string>> alphabet;
  std::optional<std::size_t> states;
  std::optional<State> initial;
  std::vector<State> finals;
  struct PendingTransition {
    std::size_t line;
    std::size_t from;
    std::string letter;
    std::size_t to;
  };
  std::vector<PendingTransition> pending;
  std::size_t max_index = 0;

  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    const auto tokens = tokenize(lines[i], line_no);
    if (tokens.empty()) continue;
    const std::string& key = tokens[0];
    auto arity = [&](std::size_t n) {
      if (tokens.size() != n + 1) {
        throw ParseError(line_no, "'" + key + "' expects " + std::to_string(n) + " argument(s)");
      }
    };
    if (key == "alphabet") {
      if (alphabet) throw ParseError(line_no, "duplicate alphabet line");
      if (tokens.size() < 2) throw ParseError(line_no, "alphabet needs at least one letter");
      alphabet.emplace(tokens.begin() + 1, tokens.end());
      for (const auto& t : *alphabet) check_letter_token(t, line_no);
    } else if (key == "states") {
      arity(1);
      states = parse_count(tokens[1], line_no, "states");
    } else if (key == "initial") {
      arity(1);
      initial = static_cast<State>(parse_count(tokens[1], line_no, "initial"));
      max_index = std::max<std::size_t>(max_index, *initial);
    } else if (key == "final") {
      if (tokens.size() < 2) throw ParseError(line_no, "'final' expects at least one state");
      for (std::size_t k = 1; k < tokens.size(); ++k) {
        finals.push_back(static_cast<State>(parse_count(tokens[k], line_no, "final")));
        max_index = std::max<std::size_t>(max_index, finals.back());
      }
    } else if (key == "trans") {
      arity(3);
      pending.push_back({line_no, parse_count(tokens[1], line_no, "source state"), tokens[2],
                         parse_count(tokens[3], line_no, "target state")});
      max_index = std::max({max_index, pending.back().from, pending.back().to});
    } else {
      throw ParseError(line_no, "unknown directive '" + key + "'");
    }
  }
  if (!alphabet) throw ParseError(lines.size(), "missing alphabet line");
  const std::size_t n = states.value_or(max_index + 1);
  std::vector<Transition> transitions;
  for (const auto& p : pending) {
    auto it = std::find(alphabet->begin(), alphabet->end(), p.letter);
    if (it == alphabet->end()) throw ParseError(p.line, "unknown letter '" + p.letter + "'");
    if (p.from >= n || p.to >= n) throw ParseError(p.line, "unknown state in transition");
    transitions.push_back({static_cast<State>(p.from), static_cast<Symbol>(it - alphabet->begin()),
                           static_cast<State>(p.to)});
  }
  return Nfa(std::move(*alphabet), n, initial.value_or(0), std::move(finals), std::move(transitions));
}

std::string format_nfa(const Nfa& m) {
  std::ostringstream out;
  out << "alphabet";
  for (const auto& a : m.alphabet()) out << ' ' << quote_if_needed(a);
  out << "\nstates " << m.num_states() << "\ninitial " << m.initial() << '\n';
  for (State f : m.finals()) out << "final " << f << '\n';
  for (const Transition& t : m.transitions()) {
    out << "trans " << t.from << ' ' << quote_if_needed(m.alphabet()[t.letter]) << ' ' << t.to << '\n';
  }
  return out.str();
}

std::string nfa_fingerprint(const Nfa& m) {
  const std::string text = format_nfa(totalize(m));
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

std::string format_word(const std::vector<std::string>& alphabet, const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i > 0) out += '.';
    out += alphabet.at(w[i]);
  }
  return out;
}

Word parse_word(const std::vector<std::string>& alphabet, std::string_view text) {
  Word w;
  if (text.empty()) return w;
  std::size_t start = 0;
  while (true) {
    std::size_t end = text.find('.', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view token = text.substr(start, end - start);
    auto it = std::find(alphabet.begin(), alphabet.end(), token);
    if (it == alphabet.end()) throw InvalidInput("unknown symbol '" + std::string(token) + "'");
    w.push_back(static_cast<Symbol>(it - alphabet.begin()));
    if (end == text.size()) break;
    start = end + 1;
  }
  return w;
}

Word parse_source_word(const std::vector<std::string>& alphabet, std::string_view text) {
  const bool single = std::all_of(alphabet.begin(), alphabet.end(), [](const std::string& a) { return a.size() == 1; });
  if (!single || text.find('.') != std::string_view::npos) return parse_word(alphabet, text);
  Word w;
  for (char c : text) {
    auto it = std::find(alphabet.begin(), alphabet.end(), std::string(1, c));
    if (it == alphabet.end()) throw InvalidInput(std::string("unknown letter '") + c + "'");
    w.push_back(static_cast<Symbol>(it - alphabet.begin()));
  }
  return w;
}

Decomposition parse_decomposition(std::string_view text) {
  std::map<std::string, std::string> header;
  std::vector<std::string> source_alphabet;
  std::vector<std::string> local_alphabet;
  std::vector<std::string> images;
  std::map<std::string, std::vector<std::pair<std::size_t, std::string>>> sections;
  std::string section;
  static const char* kSections[] = {"I", "T", "F", "SHORT", "RESIDUAL"};

  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    const std::string_view line = lines[i];
    if (line.empty()) continue;
    if (std::find(std::begin(kSections), std::end(kSections), line) != std::end(kSections)) {
      section = std::string(line);
      if (sections.count(section)) throw ParseError(line_no, "duplicate section " + section);
      sections[section];
      continue;
    }
    if (!section.empty()) {
      sections[section].emplace_back(line_no, std::string(line));
      continue;
    }
    const auto tokens = tokenize(line, line_no);
    if (tokens.empty()) continue;
    if (tokens[0] == "alphabet") {
      source_alphabet.assign(tokens.begin() + 1, tokens.end());
    } else if (tokens[0] == "symbol") {
      if (tokens.size() != 4 || tokens[2] != "->") throw ParseError(line_no, "expected 'symbol <token> -> <letter>'");
      if (tokens[1].find('.') != std::string::npos) throw ParseError(line_no, "symbol token contains '.'");
      local_alphabet.push_back(tokens[1]);
      images.push_back(tokens[3]);
    } else if (tokens.size() == 2) {
      if (header.count(tokens[0])) throw ParseError(line_no, "duplicate header '" + tokens[0] + "'");
      header[tokens[0]] = tokens[1];
    } else {
      throw ParseError(line_no, "malformed header line");
    }
  }
  auto need = [&](const char* key) -> const std::string& {
    auto it = header.find(key);
    if (it == header.end()) throw ParseError(lines.size(), std::string("missing header '") + key + "'");
    return it->second;
  };
  auto number = [&](const char* key) { return parse_count(need(key), 0, key); };

  const std::string& kind = need("kind");
  if (kind != "main" && kind != "width2") throw ParseError(0, "kind must be main or width2");
  if (source_alphabet.empty()) throw ParseError(lines.size(), "missing source alphabet");
  if (local_alphabet.empty()) throw ParseError(lines.size(), "missing symbol lines");

  std::vector<Symbol> image;
  for (const auto& letter : images) {
    auto it = std::find(source_alphabet.begin(), source_alphabet.end(), letter);
    if (it == source_alphabet.end()) throw ParseError(0, "symbol maps to unknown letter '" + letter + "'");
    image.push_back(static_cast<Symbol>(it - source_alphabet.begin()));
  }
  auto words = [&](const char* name, const std::vector<std::string>& alphabet) {
    std::vector<Word> out;
    for (const auto& [line_no, text] : sections[name]) {
      try {
        out.push_back(parse_word(alphabet, text));
      } catch (const InvalidInput& e) {
        throw ParseError(line_no, e.what());
      }
    }
    return out;
  };
  const std::size_t k = number("k");
  auto residual = words("RESIDUAL", source_alphabet);
  std::sort(residual.begin(), residual.end(), shortlex_less);
  residual.erase(std::unique(residual.begin(), residual.end()), residual.end());

  auto prefixes = words("I", local_alphabet);
  auto suffixes = words("T", local_alphabet);
  auto factors = words("F", local_alphabet);
  auto short_words = words("SHORT", local_alphabet);
  const std::size_t source_size = source_alphabet.size();
  return Decomposition{
      .kind = kind == "main" ? ConstructionKind::main : ConstructionKind::width2,
      .h = number("h"),
      .m = number("m"),
      .num_states = number("states"),
      .source_alphabet = std::move(source_alphabet),
      .slt = SltSpec(k, std::move(local_alphabet), prefixes, suffixes, factors, std::move(short_words)),
      .pi = Homomorphism(std::move(image), source_size),
      .residual = std::move(residual),
      .fingerprint = need("fingerprint"),
  };
}

std::string format_decomposition(const Decomposition& d) {
  std::string out;
  out.reserve(64 + d.slt.factors().size() * d.width() * 5);
  auto line = [&](const std::string& s) {
    out += s;
    out += '\n';
  };
  line("kind " + to_string(d.kind));
  line("h " + std::to_string(d.h));
  line("m " + std::to_string(d.m));
  line("k " + std::to_string(d.width()));
  line("states " + std::to_string(d.num_states));
  line("fingerprint " + d.fingerprint);
  std::string alphabet = "alphabet";
  for (const auto& a : d.source_alphabet) alphabet += " " + quote_if_needed(a);
  line(alphabet);
  const auto& local = d.slt.alphabet();
  for (std::size_t b = 0; b < local.size(); ++b) {
    line("symbol " + quote_if_needed(local[b]) + " -> " + quote_if_needed(d.source_alphabet[d.pi.image()[b]]));
  }
  auto set = [&](const char* name, const FixedWordSet& s) {
    line(name);
    for (std::size_t i = 0; i < s.size(); ++i) {
      auto w = s[i];
      line(format_word(local, Word(w.begin(), w.end())));
    }
  };
  set("I", d.slt.prefixes());
  set("T", d.slt.suffixes());
  set("F", d.slt.factors());
  line("SHORT");
  for (const Word& w : d.slt.short_words()) line(format_word(local, w));
  line("RESIDUAL");
  for (const Word& w : d.residual) line(format_word(d.source_alphabet, w));
  return out;
}

std::string format_code(const Code& c) {
  std::string out = "h " + std::to_string(c.h()) + "\nm " + std::to_string(c.m()) + "\n";
  for (std::size_t q = 0; q < c.size(); ++q) {
    out += "state " + std::to_string(q) + " " + format_digits(c[q], c.h()) + "\n";
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write '" + path + "'");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw InvalidInput("write to '" + path + "' failed");
}

}  // namespace sltk
