#include "sltk/automata.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

namespace sltk {

namespace {

using Subset = std::vector<State>;

struct SubsetHash {
  std::size_t operator()(const Subset& s) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (State q : s) {
      h ^= q + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

struct SubsetPairHash {
  std::size_t operator()(const std::pair<Subset, Subset>& p) const noexcept {
    SubsetHash h;
    return h(p.first) * 31 + h(p.second);
  }
};

Subset step(const Nfa& m, const Subset& from, Symbol a) {
  Subset next;
  for (State q : from) {
    for (const Transition& t : m.outgoing(q, a)) next.push_back(t.to);
  }
  std::sort(next.begin(), next.end());
  next.erase(std::unique(next.begin(), next.end()), next.end());
  return next;
}

bool any_final(const Nfa& m, const Subset& s) {
  return std::any_of(s.begin(), s.end(), [&](State q) { return m.is_final(q); });
}

std::vector<bool> coaccessible(const Nfa& m) {
  std::vector<bool> co(m.num_states(), false);
  std::vector<std::vector<State>> preds(m.num_states());
  for (const Transition& t : m.transitions()) preds[t.to].push_back(t.from);
  std::vector<State> work(m.finals().begin(), m.finals().end());
  for (State q : work) co[q] = true;
  while (!work.empty()) {
    State q = work.back();
    work.pop_back();
    for (State p : preds[q]) {
      if (!co[p]) {
        co[p] = true;
        work.push_back(p);
      }
    }
  }
  return co;
}

void check_word(const Nfa& m, const Word& w) {
  for (Symbol a : w) {
    if (a >= m.alphabet_size()) throw InvalidInput("unknown letter index " + std::to_string(a));
  }
}

}  // namespace

Nfa::Nfa(std::vector<std::string> alphabet, std::size_t num_states, State initial,
         std::vector<State> finals, std::vector<Transition> transitions)
    : alphabet_(std::move(alphabet)),
      num_states_(num_states),
      initial_(initial),
      finals_(std::move(finals)),
      transitions_(std::move(transitions)) {
  if (alphabet_.empty()) throw InvalidInput("alphabet must be nonempty");
  {
    auto sorted = alphabet_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw InvalidInput("duplicate letter in alphabet");
    }
  }
  if (num_states_ == 0) throw InvalidInput("automaton needs at least one state");
  if (initial_ >= num_states_) throw InvalidInput("unknown initial state");
  std::sort(finals_.begin(), finals_.end());
  finals_.erase(std::unique(finals_.begin(), finals_.end()), finals_.end());
  final_flags_.assign(num_states_, false);
  for (State q : finals_) {
    if (q >= num_states_) throw InvalidInput("unknown final state " + std::to_string(q));
    final_flags_[q] = true;
  }
  if (final_flags_[initial_]) throw InvalidInput("initial state cannot be final");
  for (const Transition& t : transitions_) {
    if (t.from >= num_states_ || t.to >= num_states_) {
      throw InvalidInput("transition references unknown state");
    }
    if (t.letter >= alphabet_.size()) throw InvalidInput("unknown letter in transition");
  }
  std::sort(transitions_.begin(), transitions_.end());
  transitions_.erase(std::unique(transitions_.begin(), transitions_.end()), transitions_.end());

  const std::size_t width = alphabet_.size();
  offsets_.assign(num_states_ * width + 1, 0);
  for (const Transition& t : transitions_) ++offsets_[t.from * width + t.letter + 1];
  for (std::size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];
  total_ = true;
  for (std::size_t i = 0; i + 1 < offsets_.size(); ++i) {
    if (offsets_[i] == offsets_[i + 1]) {
      total_ = false;
      break;
    }
  }
}

std::span<const Transition> Nfa::outgoing(State q) const {
  const std::size_t width = alphabet_.size();
  return {transitions_.data() + offsets_[q * width], transitions_.data() + offsets_[(q + 1) * width]};
}

std::span<const Transition> Nfa::outgoing(State q, Symbol a) const {
  const std::size_t i = q * alphabet_.size() + a;
  return {transitions_.data() + offsets_[i], transitions_.data() + offsets_[i + 1]};
}

std::optional<Symbol> Nfa::letter_index(const std::string& name) const {
  auto it = std::find(alphabet_.begin(), alphabet_.end(), name);
  if (it == alphabet_.end()) return std::nullopt;
  return static_cast<Symbol>(it - alphabet_.begin());
}

Path::Path(std::vector<Transition> transitions) : origin_(0), steps_(std::move(transitions)) {
  if (steps_.empty()) throw InvalidInput("use Path(State) for the empty path");
  origin_ = steps_.front().from;
  for (std::size_t i = 1; i < steps_.size(); ++i) {
    if (steps_[i - 1].to != steps_[i].from) throw InvalidInput("transitions are not consecutive");
  }
}

Word Path::label() const {
  Word w;
  w.reserve(steps_.size());
  for (const Transition& t : steps_) w.push_back(t.letter);
  return w;
}

bool Path::is_successful(const Nfa& m) const {
  return !steps_.empty() && origin_ == m.initial() && m.is_final(end());
}

Path Path::slice(std::size_t start, std::size_t count) const {
  if (start + count > steps_.size()) throw InvalidInput("path slice out of range");
  if (count == 0) {
    return Path(start < steps_.size() ? steps_[start].from : end());
  }
  return Path(std::vector<Transition>(steps_.begin() + start, steps_.begin() + start + count));
}

Nfa totalize(const Nfa& m) {
  if (m.is_total()) return m;
  const auto sink = static_cast<State>(m.num_states());
  std::vector<Transition> ts = m.transitions();
  for (State q = 0; q < m.num_states(); ++q) {
    for (Symbol a = 0; a < m.alphabet_size(); ++a) {
      if (m.outgoing(q, a).empty()) ts.push_back({q, a, sink});
    }
  }
  for (Symbol a = 0; a < m.alphabet_size(); ++a) ts.push_back({sink, a, sink});
  return Nfa(m.alphabet(), m.num_states() + 1, m.initial(), m.finals(), std::move(ts));
}

bool accepts(const Nfa& m, const Word& w) {
  check_word(m, w);
  if (w.empty()) return false;
  Subset current{m.initial()};
  for (Symbol a : w) {
    current = step(m, current, a);
    if (current.empty()) return false;
  }
  return any_final(m, current);
}

std::vector<bool> useful_states(const Nfa& m) {
  std::vector<bool> reach(m.num_states(), false);
  std::vector<State> work{m.initial()};
  reach[m.initial()] = true;
  while (!work.empty()) {
    State q = work.back();
    work.pop_back();
    for (const Transition& t : m.outgoing(q)) {
      if (!reach[t.to]) {
        reach[t.to] = true;
        work.push_back(t.to);
      }
    }
  }
  auto co = coaccessible(m);
  for (std::size_t q = 0; q < reach.size(); ++q) reach[q] = reach[q] && co[q];
  return reach;
}

std::vector<Word> enumerate_language(const Nfa& m, std::size_t max_len, std::size_t cap) {
  if (max_len == 0) throw InvalidInput("max_len must be at least 1");
  const auto co = coaccessible(m);
  auto prune = [&](Subset s) {
    std::erase_if(s, [&](State q) { return !co[q]; });
    return s;
  };
  std::vector<Word> out;
  std::vector<std::pair<Word, Subset>> frontier;
  frontier.emplace_back(Word{}, prune(Subset{m.initial()}));
  if (frontier.front().second.empty()) return out;
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::vector<std::pair<Word, Subset>> next;
    for (const auto& [prefix, states] : frontier) {
      for (Symbol a = 0; a < m.alphabet_size(); ++a) {
        Subset s = prune(step(m, states, a));
        if (s.empty()) continue;
        Word w = prefix;
        w.push_back(a);
        if (any_final(m, s)) {
          out.push_back(w);
          if (out.size() > cap) throw ResourceLimit("language enumeration exceeds cap", out.size());
        }
        if (len < max_len) next.emplace_back(std::move(w), std::move(s));
      }
    }
    if (next.size() > cap) throw ResourceLimit("enumeration frontier exceeds cap", next.size());
    frontier = std::move(next);
    if (frontier.empty()) break;
  }
  return out;
}

EquivalenceResult nfa_equivalent(const Nfa& a, const Nfa& b, const EquivalenceOptions& options) {
  if (a.alphabet() != b.alphabet()) throw InvalidInput("automata have different alphabets");
  struct Node {
    std::size_t parent;
    Symbol letter;
    std::size_t depth;
  };
  using Key = std::pair<Subset, Subset>;
  std::unordered_map<Key, std::size_t, SubsetPairHash> index;
  std::vector<Node> nodes;
  std::vector<const Key*> keys;
  std::deque<std::size_t> queue;

  auto rebuild = [&](std::size_t id) {
    Word w;
    while (id != 0) {
      w.push_back(nodes[id].letter);
      id = nodes[id].parent;
    }
    std::reverse(w.begin(), w.end());
    return w;
  };

  EquivalenceResult result;
  auto [root, inserted] = index.emplace(Key{Subset{a.initial()}, Subset{b.initial()}}, 0);
  (void)inserted;
  nodes.push_back({0, 0, 0});
  keys.push_back(&root->first);
  queue.push_back(0);
  while (!queue.empty()) {
    const std::size_t id = queue.front();
    queue.pop_front();
    if (options.max_len && nodes[id].depth >= *options.max_len) continue;
    const Key& key = *keys[id];
    if (key.first.empty() && key.second.empty()) continue;
    for (Symbol x = 0; x < a.alphabet_size(); ++x) {
      Key next{step(a, key.first, x), step(b, key.second, x)};
      auto [it, fresh] = index.emplace(std::move(next), nodes.size());
      if (!fresh) continue;
      nodes.push_back({id, x, nodes[id].depth + 1});
      keys.push_back(&it->first);
      const std::size_t nid = nodes.size() - 1;
      if (any_final(a, it->first.first) != any_final(b, it->first.second)) {
        result.verdict = EquivalenceVerdict::inequivalent;
        result.witness = rebuild(nid);
        result.explored = nodes.size();
        return result;
      }
      if (nodes.size() > options.state_cap) {
        result.verdict = EquivalenceVerdict::cap_exceeded;
        result.explored = nodes.size();
        return result;
      }
      queue.push_back(nid);
    }
  }
  result.explored = nodes.size();
  return result;
}

std::vector<Path> enumerate_m_paths(const Nfa& m, State origin, std::size_t length, std::size_t cap) {
  if (origin >= m.num_states()) throw InvalidInput("unknown origin state");
  std::vector<Path> out;
  if (length == 0) {
    out.emplace_back(origin);
    return out;
  }
  std::vector<Transition> stack;
  auto walk = [&](auto&& self, State q) -> void {
    if (stack.size() == length) {
      out.emplace_back(stack);
      if (out.size() > cap) throw ResourceLimit("path enumeration exceeds cap", out.size());
      return;
    }
    for (const Transition& t : m.outgoing(q)) {
      stack.push_back(t);
      self(self, t.to);
      stack.pop_back();
    }
  };
  walk(walk, origin);
  return out;
}

std::optional<Path> find_successful_path(const Nfa& m, const Word& w) {
  check_word(m, w);
  if (w.empty()) return std::nullopt;
  // alive[i][q]: reading w[i..] from q can end in a final state.
  std::vector<std::vector<bool>> alive(w.size() + 1, std::vector<bool>(m.num_states(), false));
  for (State q : m.finals()) alive[w.size()][q] = true;
  for (std::size_t i = w.size(); i-- > 0;) {
    for (State q = 0; q < m.num_states(); ++q) {
      for (const Transition& t : m.outgoing(q, w[i])) {
        if (alive[i + 1][t.to]) {
          alive[i][q] = true;
          break;
        }
      }
    }
  }
  if (!alive[0][m.initial()]) return std::nullopt;
  std::vector<Transition> steps;
  State q = m.initial();
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (const Transition& t : m.outgoing(q, w[i])) {
      if (alive[i + 1][t.to]) {
        steps.push_back(t);
        q = t.to;
        break;
      }
    }
  }
  return Path(std::move(steps));
}

Nfa finite_language_nfa(std::vector<std::string> alphabet, const std::vector<Word>& words) {
  std::vector<Transition> ts;
  std::vector<State> finals;
  std::vector<std::unordered_map<Symbol, State>> children(1);
  for (const Word& w : words) {
    if (w.empty()) throw InvalidInput("finite language cannot contain the empty word");
    State q = 0;
    for (Symbol a : w) {
      if (a >= alphabet.size()) throw InvalidInput("unknown letter in finite language");
      auto it = children[q].find(a);
      if (it == children[q].end()) {
        const auto fresh = static_cast<State>(children.size());
        children.emplace_back();
        children[q].emplace(a, fresh);
        ts.push_back({q, a, fresh});
        q = fresh;
      } else {
        q = it->second;
      }
    }
    finals.push_back(q);
  }
  return Nfa(std::move(alphabet), children.size(), 0, std::move(finals), std::move(ts));
}

Nfa nfa_union(const Nfa& a, const Nfa& b) {
  if (a.alphabet() != b.alphabet()) throw InvalidInput("automata have different alphabets");
  const auto off_a = State{1};
  const auto off_b = static_cast<State>(1 + a.num_states());
  std::vector<Transition> ts;
  std::vector<State> finals;
  for (const Transition& t : a.transitions()) {
    ts.push_back({t.from + off_a, t.letter, t.to + off_a});
    if (t.from == a.initial()) ts.push_back({0, t.letter, t.to + off_a});
  }
  for (const Transition& t : b.transitions()) {
    ts.push_back({t.from + off_b, t.letter, t.to + off_b});
    if (t.from == b.initial()) ts.push_back({0, t.letter, t.to + off_b});
  }
  for (State q : a.finals()) finals.push_back(q + off_a);
  for (State q : b.finals()) finals.push_back(q + off_b);
  return Nfa(a.alphabet(), 1 + a.num_states() + b.num_states(), 0, std::move(finals), std::move(ts));
}

Nfa relabel(const Nfa& m, std::vector<std::string> new_alphabet, const std::vector<Symbol>& map) {
  if (map.size() != m.alphabet_size()) throw InvalidInput("relabel map does not cover the alphabet");
  std::vector<Transition> ts;
  ts.reserve(m.transitions().size());
  for (const Transition& t : m.transitions()) {
    if (map[t.letter] >= new_alphabet.size()) throw InvalidInput("relabel target out of range");
    ts.push_back({t.from, map[t.letter], t.to});
  }
  return Nfa(std::move(new_alphabet), m.num_states(), m.initial(), m.finals(), std::move(ts));
}

}  // namespace sltk
