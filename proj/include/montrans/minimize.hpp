#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "montrans/transducer.hpp"

namespace montrans {

inline constexpr std::size_t kDefaultRoundCap = 10000;

// Restriction to the states reachable from the initial state.
Transducer reach(const Transducer& t);
// Restriction to the states whose function is defined somewhere; the
// initial pair is dropped when its state goes.
Transducer total(const Transducer& t);

// Left-gcd of the function recognized from each state (Bottom for states
// whose function is nowhere defined). Computed by iterating
//   w0(s) = t(s),  w(k+1)(s) = lgcd(t(s), out(s,a) w(k)(s.a) for each a)
// until every value is stable up to an invertible on the right. Throws
// IterationBudgetExceeded after `round_cap` rounds.
std::vector<PartialValue> state_lgcds(const Transducer& t, std::size_t round_cap = kDefaultRoundCap);

// Pushes each state's lgcd towards the initial value so that every state
// recognizes a left-coprime function. States with a nowhere-defined function
// lose their transitions and incoming edges.
Transducer prefix(const Transducer& t, std::size_t round_cap = kDefaultRoundCap);

// How an input state of observe() is represented in its output.
struct StateWitness {
  std::string state;
  std::string representative;
  Element chi;  // L(state) = chi * L(representative)
};

struct Observation {
  Transducer machine;
  std::vector<StateWitness> witnesses;  // one per input state, in state order
};

// Merges states whose functions are equal up to an invertible on the left.
// The representative of a block is its earliest state; edges into a merged
// state are redirected to the representative with the witness appended to
// their output.
Observation observe(const Transducer& t, std::size_t round_cap = kDefaultRoundCap);

struct StagedMinimization {
  Transducer reach;
  Transducer total;
  Transducer prefix;
  Transducer minimal;
  std::vector<StateWitness> witnesses;
};

StagedMinimization minimize(const Transducer& t, std::size_t round_cap = kDefaultRoundCap);

// All states reachable, every state lgcd invertible, and no two states
// recognizing functions equal up to an invertible on the left.
bool check_minimal(const Transducer& t, std::size_t round_cap = kDefaultRoundCap);

// Class id per state (first-occurrence numbering in state order) of the
// relation "functions equal up to an invertible on the left" after
// factoring out each state's lgcd; together with the lgcds themselves.
struct StateClasses {
  std::vector<PartialValue> lgcds;
  std::vector<std::size_t> classes;
};
StateClasses classify_states(const Transducer& t, std::size_t round_cap = kDefaultRoundCap);

}  // namespace montrans
