#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "montrans/transducer.hpp"

namespace montrans {

using MembershipOracle = std::function<PartialValue(const Word&)>;

struct EquivalenceVerdict {
  bool equivalent = true;
  // Set when !equivalent: the word and the two (different) values on it.
  Word word;
  PartialValue reference_value;
  PartialValue hypothesis_value;

  static EquivalenceVerdict yes() { return {}; }
  static EquivalenceVerdict counterexample(Word w, PartialValue ref, PartialValue hyp) {
    return {false, std::move(w), std::move(ref), std::move(hyp)};
  }
};

using EquivalenceOracle = std::function<EquivalenceVerdict(const Transducer&)>;

MembershipOracle membership_oracle(Transducer reference);

// image[s1] is the state of T2 paired with s1; L(s1) = witness[s1] * L(image[s1]).
struct Isomorphism {
  std::vector<StateId> image;
  std::vector<Element> witness;
};

// Machines must share monoid and alphabet (Error otherwise). Different state
// counts give nullopt; otherwise both must pass check_minimal
// (NotMinimalInput).
std::optional<Isomorphism> iso_check(const Transducer& t1, const Transducer& t2);

// First word in length-then-lexicographic order, of length at most
// `max_len`, on which the machines differ. Plain enumeration of all words.
std::optional<Word> brute_force_diff(const Transducer& t1, const Transducer& t2, std::size_t max_len);

// Same answer as brute_force_diff, but words whose pair of configurations
// (states, outputs after removing their common left-gcd) was already seen
// are not extended: by left cancellativity their continuations repeat an
// earlier verdict.
std::optional<Word> search_difference(const Transducer& t1, const Transducer& t2, std::size_t max_len);

// Length bound used by the equivalence check: (|S1| + 1) * (|S2| + 1).
std::size_t counterexample_bound(const Transducer& t1, const Transducer& t2);

// Minimizes both machines; isomorphic minimal machines are equivalent,
// otherwise the first difference up to max(counterexample_bound, min_len)
// is returned. Throws SearchBoundExceeded if none is found.
EquivalenceVerdict check_equivalence(const Transducer& reference, const Transducer& hypothesis,
                                     std::size_t min_len = 0);

EquivalenceOracle equivalence_oracle(Transducer reference);

// a^n -> alpha^n beta^n gamma over a monoid generated by α, β, γ (free by
// default), for the one-letter alphabet {a}.
MonoidSpec adversarial_monoid_spec(bool alpha_beta_commute = false);
MembershipOracle adversarial_oracle(const Monoid& monoid);

}  // namespace montrans
