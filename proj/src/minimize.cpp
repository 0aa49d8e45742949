#include "montrans/minimize.hpp"

#include <map>
#include <tuple>

#include "montrans/error.hpp"

namespace montrans {
namespace {

// lgcd(t(s), out(s,a) w(s.a) ...) for one state given the previous round.
PartialValue next_lgcd(const Transducer& t, StateId s, const std::vector<PartialValue>& previous) {
  const Monoid& m = t.monoid();
  PartialRow row{t.termination(s)};
  for (Letter a = 0; a < t.letter_count(); ++a) {
    const auto& step = t.transition(s, a);
    if (step) row.push_back(m.mul(PartialValue(step->output), previous[step->target]));
  }
  return m.lgcd_family(row);
}

bool stable(const Monoid& m, const std::vector<PartialValue>& before, const std::vector<PartialValue>& after) {
  for (std::size_t s = 0; s < before.size(); ++s)
    if (!m.factor_left_invertible(after[s], before[s])) return false;
  return true;
}

// Residual signature of a state: its termination and, per letter, the
// residual output towards the target together with the target's class. The
// optional is empty when the block is nowhere defined.
using Block = std::optional<std::pair<Element, std::size_t>>;
using Signature = std::tuple<bool, PartialValue, std::vector<Block>>;

std::vector<std::size_t> number_by_first_occurrence(const std::vector<Signature>& keys) {
  std::map<Signature, std::size_t> ids;
  std::vector<std::size_t> out;
  out.reserve(keys.size());
  for (const auto& key : keys) out.push_back(ids.emplace(key, ids.size()).first->second);
  return out;
}

PartialValue divide_or_fail(const Monoid& m, const PartialValue& d, const PartialValue& x) {
  try {
    return m.left_divide(d, x);
  } catch (const NotDivisible& e) {
    throw InternalInconsistency(std::string("state lgcd does not divide its function: ") + e.what());
  }
}

}  // namespace

Transducer reach(const Transducer& t) {
  const auto keep = reachable_states(t);
  return restrict_states(t, keep);
}

Transducer total(const Transducer& t) {
  const auto keep = productive_states(t);
  return restrict_states(t, keep);
}

std::vector<PartialValue> state_lgcds(const Transducer& t, std::size_t round_cap) {
  std::vector<PartialValue> current(t.state_count());
  for (StateId s = 0; s < t.state_count(); ++s) current[s] = t.termination(s);
  for (std::size_t round = 0; round < round_cap; ++round) {
    std::vector<PartialValue> next(t.state_count());
    for (StateId s = 0; s < t.state_count(); ++s) next[s] = next_lgcd(t, s, current);
    if (stable(t.monoid(), current, next)) return current;
    current = std::move(next);
  }
  throw IterationBudgetExceeded("state lgcds did not stabilize within " + std::to_string(round_cap) + " rounds");
}

StateClasses classify_states(const Transducer& t, std::size_t round_cap) {
  const Monoid& m = t.monoid();
  const std::size_t n = t.state_count();

  StateClasses current;
  current.lgcds.resize(n);
  std::vector<Signature> keys(n);
  for (StateId s = 0; s < n; ++s) {
    current.lgcds[s] = t.termination(s);
    keys[s] = Signature{current.lgcds[s].has_value(), divide_or_fail(m, current.lgcds[s], t.termination(s)), {}};
  }
  current.classes = number_by_first_occurrence(keys);

  for (std::size_t round = 0; round < round_cap; ++round) {
    StateClasses next;
    next.lgcds.resize(n);
    for (StateId s = 0; s < n; ++s) {
      const PartialValue lg = next_lgcd(t, s, current.lgcds);
      next.lgcds[s] = lg;
      if (!lg) {
        keys[s] = Signature{false, std::nullopt, {}};
        continue;
      }
      std::vector<Block> blocks;
      blocks.reserve(t.letter_count());
      for (Letter a = 0; a < t.letter_count(); ++a) {
        const auto& step = t.transition(s, a);
        if (!step || !current.lgcds[step->target]) {
          blocks.emplace_back(std::nullopt);
          continue;
        }
        const auto towards = m.mul(PartialValue(step->output), current.lgcds[step->target]);
        blocks.emplace_back(std::pair{*divide_or_fail(m, lg, towards), current.classes[step->target]});
      }
      keys[s] = Signature{true, divide_or_fail(m, lg, t.termination(s)), std::move(blocks)};
    }
    next.classes = number_by_first_occurrence(keys);
    const bool done = next.classes == current.classes && stable(m, current.lgcds, next.lgcds);
    current = std::move(next);
    if (done) return current;
  }
  throw IterationBudgetExceeded("state classes did not stabilize within " + std::to_string(round_cap) + " rounds");
}

Transducer prefix(const Transducer& t, std::size_t round_cap) {
  const Monoid& m = t.monoid();
  const auto lg = state_lgcds(t, round_cap);
  Transducer out(m, t.alphabet(), t.states());
  for (StateId s = 0; s < t.state_count(); ++s) {
    if (!lg[s]) continue;
    out.set_termination(s, divide_or_fail(m, lg[s], t.termination(s)));
    for (Letter a = 0; a < t.letter_count(); ++a) {
      const auto& step = t.transition(s, a);
      if (!step || !lg[step->target]) continue;
      const auto pushed = divide_or_fail(m, lg[s], m.mul(PartialValue(step->output), lg[step->target]));
      out.set_transition(s, a, *pushed, step->target);
    }
  }
  if (t.initial() && lg[t.initial()->state])
    out.set_initial(m.mul(t.initial()->value, *lg[t.initial()->state]), t.initial()->state);
  return out;
}

Observation observe(const Transducer& t, std::size_t round_cap) {
  const Monoid& m = t.monoid();
  const auto classes = classify_states(t, round_cap);
  const std::size_t n = t.state_count();

  // Two states are merged when their residual classes agree and their lgcds
  // differ by an invertible on the left.
  std::vector<StateId> representative(n);
  std::vector<Element> chi(n);
  std::vector<StateId> kept;
  for (StateId s = 0; s < n; ++s) {
    representative[s] = s;
    chi[s] = m.unit();
    for (StateId r : kept) {
      if (classes.classes[r] != classes.classes[s]) continue;
      if (auto x = m.factor_left_invertible(classes.lgcds[s], classes.lgcds[r])) {
        representative[s] = r;
        chi[s] = *x;
        break;
      }
    }
    if (representative[s] == s) kept.push_back(s);
  }

  std::vector<StateId> renumber(n);
  std::vector<std::string> names;
  for (StateId r : kept) {
    renumber[r] = static_cast<StateId>(names.size());
    names.push_back(t.states()[r]);
  }
  Observation result{Transducer(m, t.alphabet(), names), {}};
  Transducer& out = result.machine;
  for (StateId r : kept) {
    out.set_termination(renumber[r], t.termination(r));
    for (Letter a = 0; a < t.letter_count(); ++a) {
      const auto& step = t.transition(r, a);
      if (!step) continue;
      const StateId target = step->target;
      out.set_transition(renumber[r], a, m.mul(step->output, chi[target]), renumber[representative[target]]);
    }
  }
  if (t.initial()) {
    const StateId s0 = t.initial()->state;
    out.set_initial(m.mul(t.initial()->value, chi[s0]), renumber[representative[s0]]);
  }
  for (StateId s = 0; s < n; ++s)
    result.witnesses.push_back({t.states()[s], t.states()[representative[s]], chi[s]});
  return result;
}

StagedMinimization minimize(const Transducer& t, std::size_t round_cap) {
  Transducer reached = reach(t);
  Transducer totaled = total(reached);
  Transducer pushed = prefix(totaled, round_cap);
  Observation observed = observe(pushed, round_cap);
  return StagedMinimization{std::move(reached), std::move(totaled), std::move(pushed),
                            std::move(observed.machine), std::move(observed.witnesses)};
}

bool check_minimal(const Transducer& t, std::size_t round_cap) {
  if (reachable_states(t).size() != t.state_count()) return false;
  const auto classes = classify_states(t, round_cap);
  for (const auto& lg : classes.lgcds)
    if (!lg || !t.monoid().is_invertible(*lg)) return false;
  std::vector<bool> seen(t.state_count(), false);
  for (std::size_t c : classes.classes) {
    if (seen[c]) return false;
    seen[c] = true;
  }
  return true;
}

}  // namespace montrans
