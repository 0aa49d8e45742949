#include "montrans/oracle.hpp"

#include <deque>
#include <set>
#include <tuple>

#include "montrans/error.hpp"
#include "montrans/minimize.hpp"

namespace montrans {
namespace {

void require_compatible(const Transducer& t1, const Transducer& t2) {
  if (!(t1.monoid() == t2.monoid())) throw Error("machines use different output monoids");
  if (t1.alphabet() != t2.alphabet()) throw Error("machines use different input alphabets");
}

std::optional<Configuration> start(const Transducer& t) {
  if (!t.initial()) return std::nullopt;
  return Configuration{t.initial()->value, t.initial()->state};
}

PartialValue value_at(const Transducer& t, const std::optional<Configuration>& c) {
  if (!c) return std::nullopt;
  return t.monoid().mul(PartialValue(c->value), t.termination(c->state));
}

std::optional<Configuration> step(const Transducer& t, const std::optional<Configuration>& c, Letter a) {
  if (!c) return std::nullopt;
  const auto& tr = t.transition(c->state, a);
  if (!tr) return std::nullopt;
  return Configuration{t.monoid().mul(c->value, tr->output), tr->target};
}

}  // namespace

MembershipOracle membership_oracle(Transducer reference) {
  return [ref = std::move(reference)](const Word& w) { return eval(ref, w); };
}

std::optional<Isomorphism> iso_check(const Transducer& t1, const Transducer& t2) {
  require_compatible(t1, t2);
  if (t1.state_count() != t2.state_count()) return std::nullopt;
  if (!check_minimal(t1)) throw NotMinimalInput("left machine is not minimal");
  if (!check_minimal(t2)) throw NotMinimalInput("right machine is not minimal");
  if (!t1.initial() || !t2.initial()) {
    if (t1.initial() || t2.initial()) return std::nullopt;
    return Isomorphism{};  // both empty: minimal machines without initial have no states
  }

  const Monoid& m = t1.monoid();
  constexpr StateId kUnpaired = StateId(-1);
  Isomorphism iso{std::vector<StateId>(t1.state_count(), kUnpaired), std::vector<Element>(t1.state_count())};
  std::vector<bool> used(t2.state_count(), false);

  auto pair_up = [&](StateId s1, StateId s2, const std::optional<Element>& chi) -> bool {
    if (!chi || !m.is_invertible(*chi)) return false;
    if (iso.image[s1] != kUnpaired) return iso.image[s1] == s2 && iso.witness[s1] == *chi;
    if (used[s2]) return false;
    iso.image[s1] = s2;
    iso.witness[s1] = *chi;
    used[s2] = true;
    return true;
  };

  std::deque<StateId> queue;
  if (!pair_up(t1.initial()->state, t2.initial()->state,
               m.try_left_divide(t1.initial()->value, t2.initial()->value)))
    return std::nullopt;
  queue.push_back(t1.initial()->state);
  while (!queue.empty()) {
    const StateId s1 = queue.front();
    queue.pop_front();
    const StateId s2 = iso.image[s1];
    const Element chi = iso.witness[s1];
    if (t1.termination(s1) != m.mul(PartialValue(chi), t2.termination(s2))) return std::nullopt;
    for (Letter a = 0; a < t1.letter_count(); ++a) {
      const auto& e1 = t1.transition(s1, a);
      const auto& e2 = t2.transition(s2, a);
      if (!e1 || !e2) {
        if (e1 || e2) return std::nullopt;
        continue;
      }
      const bool fresh = iso.image[e1->target] == kUnpaired;
      if (!pair_up(e1->target, e2->target, m.try_left_divide(e1->output, m.mul(chi, e2->output))))
        return std::nullopt;
      if (fresh) queue.push_back(e1->target);
    }
  }
  return iso;
}

std::optional<Word> brute_force_diff(const Transducer& t1, const Transducer& t2, std::size_t max_len) {
  require_compatible(t1, t2);
  for (std::size_t n = 0; n <= max_len; ++n)
    for (const auto& w : words_of_length(t1.letter_count(), n))
      if (eval(t1, w) != eval(t2, w)) return w;
  return std::nullopt;
}

std::optional<Word> search_difference(const Transducer& t1, const Transducer& t2, std::size_t max_len) {
  require_compatible(t1, t2);
  const Monoid& m = t1.monoid();
  using Key = std::tuple<std::optional<StateId>, std::optional<StateId>, PartialValue, PartialValue>;

  struct Item {
    Word word;
    std::optional<Configuration> c1, c2;
  };

  // Outputs are compared after cancelling their common left-gcd; when one
  // side is undefined only the other side's state matters.
  auto key_of = [&](const Item& item) -> std::optional<Key> {
    const auto& c1 = item.c1;
    const auto& c2 = item.c2;
    if (!c1 && !c2) return std::nullopt;
    if (!c1) return Key{std::nullopt, c2->state, std::nullopt, std::nullopt};
    if (!c2) return Key{c1->state, std::nullopt, std::nullopt, std::nullopt};
    const Element d = m.lgcd(c1->value, c2->value);
    return Key{c1->state, c2->state, m.try_left_divide(d, c1->value), m.try_left_divide(d, c2->value)};
  };

  std::set<Key> seen;
  std::deque<Item> queue;
  Item root{{}, start(t1), start(t2)};
  if (auto key = key_of(root)) {
    seen.insert(*key);
    queue.push_back(std::move(root));
  }
  while (!queue.empty()) {
    Item item = std::move(queue.front());
    queue.pop_front();
    if (value_at(t1, item.c1) != value_at(t2, item.c2)) return item.word;
    if (item.word.size() >= max_len) continue;
    for (Letter a = 0; a < t1.letter_count(); ++a) {
      Item next{item.word, step(t1, item.c1, a), step(t2, item.c2, a)};
      next.word.push_back(a);
      auto key = key_of(next);
      if (!key || !seen.insert(*key).second) continue;
      queue.push_back(std::move(next));
    }
  }
  return std::nullopt;
}

std::size_t counterexample_bound(const Transducer& t1, const Transducer& t2) {
  return (t1.state_count() + 1) * (t2.state_count() + 1);
}

EquivalenceVerdict check_equivalence(const Transducer& reference, const Transducer& hypothesis,
                                     std::size_t min_len) {
  require_compatible(reference, hypothesis);
  const auto ref_min = minimize(reference).minimal;
  const auto hyp_min = minimize(hypothesis).minimal;
  if (iso_check(ref_min, hyp_min)) return EquivalenceVerdict::yes();
  const std::size_t bound = std::max(counterexample_bound(reference, hypothesis), min_len);
  auto w = search_difference(reference, hypothesis, bound);
  if (!w)
    throw SearchBoundExceeded("minimal machines differ but no distinguishing word of length <= " +
                              std::to_string(bound) + " exists");
  return EquivalenceVerdict::counterexample(*w, eval(reference, *w), eval(hypothesis, *w));
}

EquivalenceOracle equivalence_oracle(Transducer reference) {
  return [ref = std::move(reference)](const Transducer& hyp) { return check_equivalence(ref, hyp); };
}

MonoidSpec adversarial_monoid_spec(bool alpha_beta_commute) {
  if (alpha_beta_commute) return MonoidSpec::trace({"α", "β", "γ"}, {{"α", "β"}});
  return MonoidSpec::free({"α", "β", "γ"});
}

MembershipOracle adversarial_oracle(const Monoid& monoid) {
  const auto alpha = monoid.find_generator("α");
  const auto beta = monoid.find_generator("β");
  const auto gamma = monoid.find_generator("γ");
  if (!alpha || !beta || !gamma) throw UnknownGenerator("the adversarial oracle needs generators α, β, γ");
  return [=](const Word& w) -> PartialValue {
    for (Letter a : w)
      if (a != 0) throw UnknownLetter("the adversarial oracle reads only the letter a");
    Element::Sequence out(w.size(), *alpha);
    out.insert(out.end(), w.size(), *beta);
    out.push_back(*gamma);
    return monoid.word(out);
  };
}

}  // namespace montrans
