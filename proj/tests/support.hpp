// Shared fixtures for the test binaries: the five monoid instances, random
// elements and machines, equivalent-pair construction, and brute-force
// oracles that do not go through the code under test.
#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "montrans/learner.hpp"
#include "montrans/minimize.hpp"
#include "montrans/monoid.hpp"
#include "montrans/oracle.hpp"
#include "montrans/serialize.hpp"
#include "montrans/transducer.hpp"

#ifndef MONTRANS_TEST_DATA
#define MONTRANS_TEST_DATA "tests/data"
#endif

namespace testing {

using namespace montrans;
using Rng = std::mt19937_64;

inline std::string data_path(const std::string& name) { return std::string(MONTRANS_TEST_DATA) + "/" + name; }

inline std::vector<Monoid> instances() {
  return {
      Monoid(MonoidSpec::free({"α", "β", "γ"})),
      Monoid(MonoidSpec::trace({"α", "β", "γ"}, {{"α", "β"}})),
      Monoid(MonoidSpec::commutative({"α", "β", "γ"})),
      Monoid(MonoidSpec::nat_add()),
      Monoid(MonoidSpec::cyclic_group(5)),
  };
}

inline std::size_t uniform(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

inline Element random_element(const Monoid& m, Rng& rng, std::size_t max_len = 3) {
  switch (m.kind()) {
    case MonoidKind::nat_add: return m.number(uniform(rng, 0, max_len + 1));
    case MonoidKind::cyclic_group: return m.number(uniform(rng, 0, m.spec().modulus - 1));
    default: {
      Element::Sequence letters(uniform(rng, 0, max_len));
      for (auto& g : letters) g = static_cast<Generator>(uniform(rng, 0, m.generator_count() - 1));
      return m.word(letters);
    }
  }
}

// Rows with a small pool of shared prefixes, so that non-trivial lgcds occur.
inline PartialRow random_row(const Monoid& m, Rng& rng, std::size_t size, double bottom = 0.25) {
  const Element common = random_element(m, rng, 2);
  PartialRow row(size);
  for (auto& x : row)
    if (!chance(rng, bottom)) x = m.mul(common, random_element(m, rng, 3));
  return row;
}

struct MachineShape {
  std::size_t max_states = 6;
  std::size_t max_letters = 3;
  double termination = 0.6;
  double transition = 0.75;
  std::size_t output_len = 2;
};

inline std::vector<std::string> letters(std::size_t k) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back(std::string(1, static_cast<char>('a' + i)));
  return out;
}

inline Transducer random_machine(const Monoid& m, Rng& rng, const MachineShape& shape = {}) {
  const std::size_t n = uniform(rng, 1, shape.max_states);
  const std::size_t k = uniform(rng, 1, shape.max_letters);
  std::vector<std::string> states;
  for (std::size_t i = 0; i < n; ++i) states.push_back("s" + std::to_string(i));
  Transducer t(m, letters(k), states);
  t.set_initial(random_element(m, rng, shape.output_len), 0);
  for (StateId s = 0; s < n; ++s) {
    if (chance(rng, shape.termination)) t.set_termination(s, random_element(m, rng, shape.output_len));
    for (Letter a = 0; a < k; ++a)
      if (chance(rng, shape.transition))
        t.set_transition(s, a, random_element(m, rng, shape.output_len), static_cast<StateId>(uniform(rng, 0, n - 1)));
  }
  return t;
}

// Random machine whose language is defined on at least one word of length <= 4.
inline Transducer random_target(const Monoid& m, Rng& rng, const MachineShape& shape = {}) {
  while (true) {
    Transducer t = random_machine(m, rng, shape);
    for (std::size_t len = 0; len <= 4; ++len)
      for (const auto& w : words_of_length(t.letter_count(), len))
        if (eval(t, w)) return t;
  }
}

// Copy of t with state s duplicated; a random subset of the edges into s
// (and possibly the initial pair) is redirected to the copy.
inline Transducer split_state(const Transducer& t, StateId s, Rng& rng) {
  std::vector<std::string> names = t.states();
  std::string fresh = t.states()[s] + "'";
  while (std::find(names.begin(), names.end(), fresh) != names.end()) fresh += "'";
  names.push_back(fresh);
  const StateId copy = static_cast<StateId>(t.state_count());
  Transducer out(t.monoid(), t.alphabet(), names);
  auto redirect = [&](StateId target) { return target == s && chance(rng, 0.5) ? copy : target; };
  for (StateId q = 0; q < t.state_count(); ++q) {
    out.set_termination(q, t.termination(q));
    for (Letter a = 0; a < t.letter_count(); ++a)
      if (const auto& e = t.transition(q, a)) out.set_transition(q, a, e->output, redirect(e->target));
  }
  out.set_termination(copy, t.termination(s));
  for (Letter a = 0; a < t.letter_count(); ++a)
    if (const auto& e = t.transition(s, a)) out.set_transition(copy, a, e->output, redirect(e->target));
  if (t.initial()) out.set_initial(t.initial()->value, redirect(t.initial()->state));
  return out;
}

// Two machines with the same language: in the first, every edge into s ends
// with u; in the second, u is moved to the front of every output leaving s
// (and of its termination).
inline std::pair<Transducer, Transducer> shift_outputs(const Transducer& t, StateId s, const Element& u) {
  const Monoid& m = t.monoid();
  Transducer before = t;
  Transducer after = t;
  for (StateId q = 0; q < t.state_count(); ++q)
    for (Letter a = 0; a < t.letter_count(); ++a)
      if (const auto& e = t.transition(q, a)) {
        if (e->target == s) before.set_transition(q, a, m.mul(e->output, u), e->target);
        if (q == s) after.set_transition(q, a, m.mul(u, e->output), e->target);
      }
  if (t.initial() && t.initial()->state == s) before.set_initial(m.mul(t.initial()->value, u), s);
  after.set_termination(s, m.mul(PartialValue(u), t.termination(s)));
  return {before, after};
}

inline std::pair<Transducer, Transducer> equivalent_pair(const Monoid& m, Rng& rng) {
  const Transducer seed = random_target(m, rng, MachineShape{4, 3, 0.6, 0.75, 2});
  const StateId s = static_cast<StateId>(uniform(rng, 0, seed.state_count() - 1));
  auto [left, right] = shift_outputs(seed, s, random_element(m, rng, 2));
  const std::size_t splits = uniform(rng, 1, 2);
  for (std::size_t i = 0; i < splits; ++i)
    right = split_state(right, static_cast<StateId>(uniform(rng, 0, right.state_count() - 1)), rng);
  if (chance(rng, 0.5)) left = split_state(left, static_cast<StateId>(uniform(rng, 0, left.state_count() - 1)), rng);
  return {left, right};
}

// Copy with one randomly chosen component changed.
inline Transducer mutate(const Transducer& t, Rng& rng) {
  const Monoid& m = t.monoid();
  Transducer out = t;
  const StateId s = static_cast<StateId>(uniform(rng, 0, t.state_count() - 1));
  const Letter a = static_cast<Letter>(uniform(rng, 0, t.letter_count() - 1));
  switch (uniform(rng, 0, 3)) {
    case 0:
      out.set_termination(s, t.termination(s) ? PartialValue{} : PartialValue(random_element(m, rng, 2)));
      break;
    case 1:
      out.set_transition(s, a, random_element(m, rng, 2), static_cast<StateId>(uniform(rng, 0, t.state_count() - 1)));
      break;
    case 2:
      out.clear_transition(s, a);
      break;
    default:
      if (t.termination(s)) out.set_termination(s, m.mul(*t.termination(s), random_element(m, rng, 1)));
      else out.set_termination(s, random_element(m, rng, 1));
      break;
  }
  return out;
}

// All words of length <= max_len in length-lexicographic order.
inline std::vector<Word> words_up_to(std::size_t letter_count, std::size_t max_len) {
  std::vector<Word> out;
  for (std::size_t n = 0; n <= max_len; ++n) {
    auto layer = words_of_length(letter_count, n);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

inline PartialRow state_row(const Transducer& t, StateId s, const std::vector<Word>& words) {
  PartialRow row;
  row.reserve(words.size());
  for (const auto& w : words) row.push_back(state_eval(t, s, w));
  return row;
}

// Trace equivalence by brute force: the closure of a word under swapping
// adjacent commuting letters. Letters are small integers; `commute(x, y)`
// decides independence.
template <class Commute>
std::set<std::vector<int>> trace_class(const std::vector<int>& w, Commute commute) {
  std::set<std::vector<int>> seen{w};
  std::deque<std::vector<int>> queue{w};
  while (!queue.empty()) {
    auto cur = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i + 1 < cur.size(); ++i) {
      if (cur[i] == cur[i + 1] || !commute(cur[i], cur[i + 1])) continue;
      auto next = cur;
      std::swap(next[i], next[i + 1]);
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  return seen;
}

}  // namespace testing
