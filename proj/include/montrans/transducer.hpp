#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "montrans/monoid.hpp"

namespace montrans {

using Letter = std::uint32_t;
using Word = std::vector<Letter>;
using StateId = std::uint32_t;

struct Transition {
  Element output;
  StateId target = 0;

  friend bool operator==(const Transition&, const Transition&) = default;
};

struct Initial {
  Element value;
  StateId state = 0;

  friend bool operator==(const Initial&, const Initial&) = default;
};

// Deterministic transducer with outputs in a monoid: a (possibly absent)
// initialization pair, a partial termination map and partial transitions.
// Partiality is absence; there are no sink states. States and letters are
// identified by their declaration index, names are for I/O only.
class Transducer {
 public:
  Transducer(Monoid monoid, std::vector<std::string> alphabet, std::vector<std::string> states);

  const Monoid& monoid() const noexcept { return monoid_; }
  const std::vector<std::string>& alphabet() const noexcept { return alphabet_; }
  const std::vector<std::string>& states() const noexcept { return states_; }
  std::size_t state_count() const noexcept { return states_.size(); }
  std::size_t letter_count() const noexcept { return alphabet_.size(); }

  std::optional<StateId> find_state(std::string_view name) const;
  std::optional<Letter> find_letter(std::string_view name) const;

  const std::optional<Initial>& initial() const noexcept { return initial_; }
  const PartialValue& termination(StateId s) const { return termination_.at(s); }
  const std::optional<Transition>& transition(StateId s, Letter a) const {
    return transitions_.at(index(s, a));
  }

  void set_initial(Element value, StateId state);
  void clear_initial() { initial_.reset(); }
  void set_termination(StateId s, PartialValue value);
  void set_transition(StateId s, Letter a, Element output, StateId target);
  void clear_transition(StateId s, Letter a);

  // Word <-> text using the symbol conventions of split_symbols. The empty
  // word renders as "e" unless "e" is itself a letter.
  Word parse_word(std::string_view text) const;  // throws UnknownLetter
  std::string render_word(std::span<const Letter> word) const;

  friend bool operator==(const Transducer&, const Transducer&) = default;

 private:
  std::size_t index(StateId s, Letter a) const { return std::size_t{s} * alphabet_.size() + a; }
  void check_state(StateId s) const;

  Monoid monoid_;
  std::vector<std::string> alphabet_;
  std::vector<std::string> states_;
  std::optional<Initial> initial_;
  std::vector<PartialValue> termination_;
  std::vector<std::optional<Transition>> transitions_;
};

// Word <-> text over an alphabet; see Transducer::parse_word.
Word parse_word(std::span<const std::string> alphabet, std::string_view text);
std::string render_word(std::span<const std::string> alphabet, std::span<const Letter> word);

// Configuration reached after reading a word: accumulated output and state.
struct Configuration {
  Element value;
  StateId state = 0;
};

// Threads (value, state) through the transitions of `word`; nullopt as soon
// as a step is undefined. Throws UnknownLetter.
std::optional<Configuration> run(const Transducer& t, const std::optional<Configuration>& start,
                                 std::span<const Letter> word);

PartialValue eval(const Transducer& t, std::span<const Letter> word);
// As eval, starting from (unit, s).
PartialValue state_eval(const Transducer& t, StateId s, std::span<const Letter> word);

// Forward closure from the initial state (empty when there is none), in
// declaration order.
std::vector<StateId> reachable_states(const Transducer& t);
// Backward closure from states with defined termination, in declaration
// order.
std::vector<StateId> productive_states(const Transducer& t);

// Restriction of t to `keep` (ascending). Transitions into dropped states are
// removed and the initial pair is cleared if its state is dropped.
Transducer restrict_states(const Transducer& t, std::span<const StateId> keep);

// Words of length exactly n over k letters, in lexicographic order.
std::vector<Word> words_of_length(std::size_t letter_count, std::size_t n);

}  // namespace montrans
