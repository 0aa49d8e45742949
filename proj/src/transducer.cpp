#include "montrans/transducer.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "montrans/error.hpp"
#include "montrans/symbols.hpp"

namespace montrans {

Transducer::Transducer(Monoid monoid, std::vector<std::string> alphabet,
                       std::vector<std::string> states)
    : monoid_(std::move(monoid)), alphabet_(std::move(alphabet)), states_(std::move(states)) {
  std::set<std::string_view> seen;
  for (const auto& a : alphabet_) {
    if (a.empty()) throw Error("letter names must be non-empty");
    if (a.find(kSymbolSeparator) != std::string::npos) throw Error("letter '" + a + "' contains '·'");
    if (!seen.insert(a).second) throw Error("duplicate letter '" + a + "'");
  }
  seen.clear();
  for (const auto& s : states_)
    if (!seen.insert(s).second) throw Error("duplicate state '" + s + "'");
  termination_.assign(states_.size(), std::nullopt);
  transitions_.assign(states_.size() * alphabet_.size(), std::nullopt);
}

std::optional<StateId> Transducer::find_state(std::string_view name) const {
  auto it = std::find(states_.begin(), states_.end(), name);
  if (it == states_.end()) return std::nullopt;
  return static_cast<StateId>(it - states_.begin());
}

std::optional<Letter> Transducer::find_letter(std::string_view name) const {
  auto it = std::find(alphabet_.begin(), alphabet_.end(), name);
  if (it == alphabet_.end()) return std::nullopt;
  return static_cast<Letter>(it - alphabet_.begin());
}

void Transducer::check_state(StateId s) const {
  if (s >= states_.size()) throw Error("state index " + std::to_string(s) + " out of range");
}

void Transducer::set_initial(Element value, StateId state) {
  check_state(state);
  initial_ = Initial{std::move(value), state};
}

void Transducer::set_termination(StateId s, PartialValue value) {
  check_state(s);
  termination_[s] = std::move(value);
}

void Transducer::set_transition(StateId s, Letter a, Element output, StateId target) {
  check_state(s);
  check_state(target);
  if (a >= alphabet_.size()) throw UnknownLetter("letter index " + std::to_string(a) + " out of range");
  transitions_[index(s, a)] = Transition{std::move(output), target};
}

void Transducer::clear_transition(StateId s, Letter a) {
  check_state(s);
  if (a >= alphabet_.size()) throw UnknownLetter("letter index " + std::to_string(a) + " out of range");
  transitions_[index(s, a)].reset();
}

Word Transducer::parse_word(std::string_view text) const { return montrans::parse_word(alphabet_, text); }

std::string Transducer::render_word(std::span<const Letter> word) const {
  return montrans::render_word(alphabet_, word);
}

Word parse_word(std::span<const std::string> alphabet, std::string_view text) {
  auto find = [&](std::string_view name) -> std::optional<Letter> {
    auto it = std::find(alphabet.begin(), alphabet.end(), name);
    if (it == alphabet.end()) return std::nullopt;
    return static_cast<Letter>(it - alphabet.begin());
  };
  if (!find("e") && (text == "e" || text == kUnitText)) return {};
  Word word;
  for (const auto& token : split_symbols(text, alphabet)) {
    auto a = find(token);
    if (!a) throw UnknownLetter("unknown letter '" + token + "'");
    word.push_back(*a);
  }
  return word;
}

std::string render_word(std::span<const std::string> alphabet, std::span<const Letter> word) {
  if (word.empty())
    return std::find(alphabet.begin(), alphabet.end(), "e") != alphabet.end() ? std::string{} : std::string("e");
  std::vector<std::string> tokens;
  tokens.reserve(word.size());
  for (Letter a : word) tokens.push_back(alphabet[a]);
  return join_symbols(tokens, alphabet);
}

std::optional<Configuration> run(const Transducer& t, const std::optional<Configuration>& start,
                                 std::span<const Letter> word) {
  for (Letter a : word)
    if (a >= t.letter_count()) throw UnknownLetter("letter index " + std::to_string(a) + " out of range");
  if (!start) return std::nullopt;
  Configuration config = *start;
  for (Letter a : word) {
    const auto& step = t.transition(config.state, a);
    if (!step) return std::nullopt;
    config.value = t.monoid().mul(config.value, step->output);
    config.state = step->target;
  }
  return config;
}

namespace {

PartialValue finish(const Transducer& t, const std::optional<Configuration>& config) {
  if (!config) return std::nullopt;
  return t.monoid().mul(PartialValue(config->value), t.termination(config->state));
}

}  // namespace

PartialValue eval(const Transducer& t, std::span<const Letter> word) {
  std::optional<Configuration> start;
  if (t.initial()) start = Configuration{t.initial()->value, t.initial()->state};
  return finish(t, run(t, start, word));
}

PartialValue state_eval(const Transducer& t, StateId s, std::span<const Letter> word) {
  if (s >= t.state_count()) throw Error("state index out of range");
  return finish(t, run(t, Configuration{t.monoid().unit(), s}, word));
}

std::vector<StateId> reachable_states(const Transducer& t) {
  std::vector<bool> seen(t.state_count(), false);
  if (t.initial()) {
    std::deque<StateId> queue{t.initial()->state};
    seen[t.initial()->state] = true;
    while (!queue.empty()) {
      const StateId s = queue.front();
      queue.pop_front();
      for (Letter a = 0; a < t.letter_count(); ++a) {
        const auto& step = t.transition(s, a);
        if (step && !seen[step->target]) {
          seen[step->target] = true;
          queue.push_back(step->target);
        }
      }
    }
  }
  std::vector<StateId> out;
  for (StateId s = 0; s < t.state_count(); ++s)
    if (seen[s]) out.push_back(s);
  return out;
}

std::vector<StateId> productive_states(const Transducer& t) {
  std::vector<std::vector<StateId>> predecessors(t.state_count());
  for (StateId s = 0; s < t.state_count(); ++s)
    for (Letter a = 0; a < t.letter_count(); ++a)
      if (const auto& step = t.transition(s, a)) predecessors[step->target].push_back(s);

  std::vector<bool> seen(t.state_count(), false);
  std::deque<StateId> queue;
  for (StateId s = 0; s < t.state_count(); ++s) {
    if (t.termination(s)) {
      seen[s] = true;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    const StateId s = queue.front();
    queue.pop_front();
    for (StateId p : predecessors[s]) {
      if (!seen[p]) {
        seen[p] = true;
        queue.push_back(p);
      }
    }
  }
  std::vector<StateId> out;
  for (StateId s = 0; s < t.state_count(); ++s)
    if (seen[s]) out.push_back(s);
  return out;
}

Transducer restrict_states(const Transducer& t, std::span<const StateId> keep) {
  constexpr StateId kDropped = StateId(-1);
  std::vector<StateId> renumber(t.state_count(), kDropped);
  std::vector<std::string> names;
  for (StateId s : keep) {
    renumber.at(s) = static_cast<StateId>(names.size());
    names.push_back(t.states()[s]);
  }
  Transducer out(t.monoid(), t.alphabet(), std::move(names));
  for (StateId s : keep) {
    const StateId ns = renumber[s];
    out.set_termination(ns, t.termination(s));
    for (Letter a = 0; a < t.letter_count(); ++a) {
      const auto& step = t.transition(s, a);
      if (step && renumber[step->target] != kDropped)
        out.set_transition(ns, a, step->output, renumber[step->target]);
    }
  }
  if (t.initial() && renumber[t.initial()->state] != kDropped)
    out.set_initial(t.initial()->value, renumber[t.initial()->state]);
  return out;
}

std::vector<Word> words_of_length(std::size_t letter_count, std::size_t n) {
  std::vector<Word> out{Word{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Word> next;
    next.reserve(out.size() * letter_count);
    for (const auto& w : out) {
      for (Letter a = 0; a < letter_count; ++a) {
        next.push_back(w);
        next.back().push_back(a);
      }
    }
    out = std::move(next);
  }
  return out;
}

}  // namespace montrans
