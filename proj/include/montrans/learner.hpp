#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "montrans/error.hpp"
#include "montrans/oracle.hpp"
#include "montrans/transducer.hpp"

namespace montrans {

struct Defect {
  enum class Kind { closure, tot, inv, inj };
  Kind kind = Kind::closure;
  Word word;  // qa for closure, at for the consistency kinds

  friend bool operator==(const Defect&, const Defect&) = default;
};

// "Closure", "ConsistencyTot", "ConsistencyInv", "ConsistencyInj".
std::string_view to_string(Defect::Kind kind);

struct LearnStats {
  std::size_t membership_queries = 0;
  std::size_t equivalence_queries = 0;
  std::size_t q_updates = 0;
  std::size_t t_updates = 0;
  std::size_t loop_iterations = 0;

  friend bool operator==(const LearnStats&, const LearnStats&) = default;
};

struct LearnLimits {
  std::size_t max_q = 1000;
  std::size_t max_iterations = 10000;
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& message, LearnStats stats) : Error(message), stats_(stats) {}
  const LearnStats& stats() const noexcept { return stats_; }

 private:
  LearnStats stats_;
};

// Prefix set Q, suffix set T and, for every q in Q and every column
// c in {e} + A (column 0 is e, column a+1 is letter a):
//   lambda(q, c)    = lgcd of the values L(q c t), t in T
//   residual(q, c)  = the row (L(q c t))_t with lambda divided out.
// Membership answers are memoized, so each distinct word is queried once.
class ObservationTable {
 public:
  ObservationTable(Monoid monoid, std::vector<std::string> alphabet, MembershipOracle membership);

  const Monoid& monoid() const noexcept { return monoid_; }
  const std::vector<std::string>& alphabet() const noexcept { return alphabet_; }
  const std::vector<Word>& prefixes() const noexcept { return q_; }
  const std::vector<Word>& suffixes() const noexcept { return t_; }
  std::size_t column_count() const noexcept { return alphabet_.size() + 1; }

  const PartialValue& lambda(std::size_t q, std::size_t column) const { return rows_.at(q).at(column).lambda; }
  const PartialRow& residual(std::size_t q, std::size_t column) const { return rows_.at(q).at(column).residual; }
  // Memoized value of q c t (column as above).
  const PartialValue& value(std::size_t q, std::size_t column, std::size_t t) const;

  // Appends w if absent, together with its missing prefixes (shortest first);
  // returns the number of words added.
  std::size_t add_prefix(const Word& w);
  // Appends w if absent, together with its missing suffixes (shortest first).
  std::size_t add_suffix(const Word& w);

  std::size_t membership_queries() const noexcept { return memo_.size(); }

 private:
  struct Cell {
    PartialValue lambda;
    PartialRow residual;
    std::vector<const PartialValue*> values;
  };

  const PartialValue& query(const Word& w);
  void fill_row(std::size_t q);
  void extend_rows(std::size_t t);

  Monoid monoid_;
  std::vector<std::string> alphabet_;
  MembershipOracle membership_;
  std::vector<Word> q_;
  std::vector<Word> t_;
  std::vector<std::vector<Cell>> rows_;
  std::map<Word, PartialValue> memo_;
};

// Callbacks describing a learning run step by step.
class LearnObserver {
 public:
  virtual ~LearnObserver() = default;
  virtual void on_defect(const Defect&, const ObservationTable&) {}
  virtual void on_hypothesis(const Transducer&, const ObservationTable&) {}
  virtual void on_verdict(const EquivalenceVerdict&, const ObservationTable&) {}
};

class Learner {
 public:
  Learner(Monoid monoid, std::vector<std::string> alphabet, MembershipOracle membership,
          LearnLimits limits = {});

  const ObservationTable& table() const noexcept { return table_; }
  LearnStats stats() const;

  // Closure defects first, then ConsistencyTot, ConsistencyInv and
  // ConsistencyInj; within a kind q in Q order, a in alphabet order, t in T
  // order (and q' in Q order for comparisons between prefixes).
  std::optional<Defect> find_defect() const;
  void apply_defect(const Defect& defect);
  // Requires a defect-free table; throws InternalInconsistency otherwise.
  Transducer build_hypothesis() const;
  void process_counterexample(const Word& w);

  // Main loop. Throws BudgetExceeded when |Q| exceeds max_q or the loop runs
  // more than max_iterations times; the table stays inspectable afterwards.
  Transducer run(const EquivalenceOracle& equivalence, LearnObserver* observer = nullptr);

 private:
  void check_budget() const;

  ObservationTable table_;
  LearnLimits limits_;
  std::size_t equivalence_queries_ = 0;
  std::size_t q_updates_ = 0;
  std::size_t t_updates_ = 0;
  std::size_t loop_iterations_ = 0;
};

struct LearnResult {
  Transducer machine;
  LearnStats stats;
};

LearnResult learn(const Monoid& monoid, const std::vector<std::string>& alphabet, MembershipOracle membership,
                  const EquivalenceOracle& equivalence, LearnLimits limits = {},
                  LearnObserver* observer = nullptr);

// Learns the function of `target` with its membership and exact equivalence
// oracles.
LearnResult learn_machine(const Transducer& target, LearnLimits limits = {}, LearnObserver* observer = nullptr);

}  // namespace montrans
