#include "montrans/learner.hpp"

#include <algorithm>
#include <set>

namespace montrans {

std::string_view to_string(Defect::Kind kind) {
  switch (kind) {
    case Defect::Kind::closure: return "Closure";
    case Defect::Kind::tot: return "ConsistencyTot";
    case Defect::Kind::inv: return "ConsistencyInv";
    case Defect::Kind::inj: return "ConsistencyInj";
  }
  return "?";
}

namespace {

Word concat(const Word& q, std::size_t column, const Word& t) {
  Word w = q;
  if (column > 0) w.push_back(static_cast<Letter>(column - 1));
  w.insert(w.end(), t.begin(), t.end());
  return w;
}

}  // namespace

ObservationTable::ObservationTable(Monoid monoid, std::vector<std::string> alphabet,
                                   MembershipOracle membership)
    : monoid_(std::move(monoid)), alphabet_(std::move(alphabet)), membership_(std::move(membership)) {
  t_.push_back({});
  q_.push_back({});
  rows_.emplace_back(column_count());
  fill_row(0);
}

const PartialValue& ObservationTable::value(std::size_t q, std::size_t column, std::size_t t) const {
  return *rows_.at(q).at(column).values.at(t);
}

const PartialValue& ObservationTable::query(const Word& w) {
  auto it = memo_.find(w);
  if (it == memo_.end()) it = memo_.emplace(w, membership_(w)).first;
  return it->second;
}

void ObservationTable::fill_row(std::size_t q) {
  for (std::size_t c = 0; c < column_count(); ++c) {
    Cell& cell = rows_[q][c];
    while (cell.values.size() < t_.size()) cell.values.push_back(&query(concat(q_[q], c, t_[cell.values.size()])));
    PartialRow raw;
    raw.reserve(t_.size());
    for (const auto* v : cell.values) raw.push_back(*v);
    cell.lambda = monoid_.lgcd_family(raw);
    cell.residual = monoid_.red_row(raw);
  }
}

std::size_t ObservationTable::add_prefix(const Word& w) {
  std::size_t added = 0;
  for (std::size_t n = 0; n <= w.size(); ++n) {
    Word p(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(n));
    if (std::find(q_.begin(), q_.end(), p) != q_.end()) continue;
    q_.push_back(std::move(p));
    rows_.emplace_back(column_count());
    fill_row(q_.size() - 1);
    ++added;
  }
  return added;
}

std::size_t ObservationTable::add_suffix(const Word& w) {
  std::size_t added = 0;
  for (std::size_t n = 0; n <= w.size(); ++n) {
    Word s(w.end() - static_cast<std::ptrdiff_t>(n), w.end());
    if (std::find(t_.begin(), t_.end(), s) != t_.end()) continue;
    t_.push_back(std::move(s));
    ++added;
  }
  if (added > 0)
    for (std::size_t q = 0; q < q_.size(); ++q) fill_row(q);
  return added;
}

Learner::Learner(Monoid monoid, std::vector<std::string> alphabet, MembershipOracle membership,
                 LearnLimits limits)
    : table_(std::move(monoid), std::move(alphabet), std::move(membership)), limits_(limits) {}

LearnStats Learner::stats() const {
  return LearnStats{table_.membership_queries(), equivalence_queries_, q_updates_, t_updates_, loop_iterations_};
}

std::optional<Defect> Learner::find_defect() const {
  const ObservationTable& tb = table_;
  const Monoid& m = tb.monoid();
  const std::size_t nq = tb.prefixes().size();
  const std::size_t nt = tb.suffixes().size();
  const std::size_t na = tb.alphabet().size();

  auto at_word = [&](std::size_t a, std::size_t t) {
    Word w{static_cast<Letter>(a)};
    const Word& suffix = tb.suffixes()[t];
    w.insert(w.end(), suffix.begin(), suffix.end());
    return w;
  };

  for (std::size_t q = 0; q < nq; ++q) {
    for (std::size_t a = 0; a < na; ++a) {
      const PartialRow& row = tb.residual(q, a + 1);
      bool matched = false;
      for (std::size_t q2 = 0; q2 < nq && !matched; ++q2)
        matched = m.rows_equal_up_to_left_invertible(row, tb.residual(q2, 0)).has_value();
      if (!matched) {
        Word w = tb.prefixes()[q];
        w.push_back(static_cast<Letter>(a));
        return Defect{Defect::Kind::closure, std::move(w)};
      }
    }
  }

  // merged[q][q2]: chi with R(q,e,.) = chi R(q2,e,.), for q != q2.
  std::vector<std::vector<std::optional<Element>>> merged(nq, std::vector<std::optional<Element>>(nq));
  for (std::size_t q = 0; q < nq; ++q)
    for (std::size_t q2 = 0; q2 < nq; ++q2)
      if (q != q2) merged[q][q2] = m.rows_equal_up_to_left_invertible(tb.residual(q, 0), tb.residual(q2, 0));

  // Tot: a defined value below an undefined row, or two merged prefixes whose
  // extensions by the same at disagree on definedness.
  for (std::size_t q = 0; q < nq; ++q) {
    const bool row_defined = somewhere_defined(tb.residual(q, 0));
    for (std::size_t a = 0; a < na; ++a) {
      for (std::size_t t = 0; t < nt; ++t) {
        const bool defined = tb.value(q, a + 1, t).has_value();
        bool defect = defined && !row_defined;
        for (std::size_t q2 = 0; q2 < nq && !defect; ++q2)
          defect = merged[q][q2] && defined != tb.value(q2, a + 1, t).has_value();
        if (defect) return Defect{Defect::Kind::tot, at_word(a, t)};
      }
    }
  }

  // Inv: Lambda(q,e) does not left-divide L(qat).
  for (std::size_t q = 0; q < nq; ++q) {
    const PartialValue& lam = tb.lambda(q, 0);
    if (!lam) continue;
    for (std::size_t a = 0; a < na; ++a)
      for (std::size_t t = 0; t < nt; ++t)
        if (const auto& v = tb.value(q, a + 1, t); v && !m.left_divides(*lam, *v))
          return Defect{Defect::Kind::inv, at_word(a, t)};
  }

  // Inj: merged prefixes whose residual outputs along at differ.
  auto divided = [&](std::size_t q, std::size_t a, std::size_t t) -> PartialValue {
    const PartialValue& lam = tb.lambda(q, 0);
    const PartialValue& v = tb.value(q, a + 1, t);
    if (!lam || !v) return std::nullopt;
    return m.try_left_divide(*lam, *v);
  };
  for (std::size_t q = 0; q < nq; ++q) {
    for (std::size_t a = 0; a < na; ++a) {
      for (std::size_t t = 0; t < nt; ++t) {
        const PartialValue mine = divided(q, a, t);
        for (std::size_t q2 = 0; q2 < nq; ++q2) {
          if (!merged[q][q2]) continue;
          if (mine != m.mul(PartialValue(merged[q][q2]), divided(q2, a, t)))
            return Defect{Defect::Kind::inj, at_word(a, t)};
        }
      }
    }
  }
  return std::nullopt;
}

void Learner::apply_defect(const Defect& defect) {
  if (defect.kind == Defect::Kind::closure)
    q_updates_ += table_.add_prefix(defect.word);
  else
    t_updates_ += table_.add_suffix(defect.word);
}

void Learner::process_counterexample(const Word& w) {
  if (table_.add_prefix(w) > 0) ++q_updates_;
}

Transducer Learner::build_hypothesis() const {
  const ObservationTable& tb = table_;
  const Monoid& m = tb.monoid();
  const std::size_t nq = tb.prefixes().size();

  std::vector<std::size_t> chosen;
  if (somewhere_defined(tb.residual(0, 0))) {
    for (std::size_t q = 0; q < nq; ++q) {
      if (!somewhere_defined(tb.residual(q, 0))) continue;
      const bool fresh = std::none_of(chosen.begin(), chosen.end(), [&](std::size_t s) {
        return m.rows_equal_up_to_left_invertible(tb.residual(q, 0), tb.residual(s, 0)).has_value();
      });
      if (fresh) chosen.push_back(q);
    }
  }

  std::vector<std::string> names;
  std::set<std::string> taken;
  for (std::size_t q : chosen) names.push_back(render_word(tb.alphabet(), tb.prefixes()[q]));
  for (const auto& n : names) taken.insert(n);
  if (taken.size() != names.size() || taken.count("")) {
    for (std::size_t i = 0; i < names.size(); ++i) names[i] = "q" + std::to_string(i);
  }

  Transducer h(m, tb.alphabet(), names);
  if (chosen.empty()) return h;

  h.set_initial(*tb.lambda(0, 0), 0);
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    const std::size_t q = chosen[i];
    h.set_termination(static_cast<StateId>(i), tb.residual(q, 0).at(0));
    for (std::size_t a = 0; a < tb.alphabet().size(); ++a) {
      const PartialRow& row = tb.residual(q, a + 1);
      if (!somewhere_defined(row)) continue;
      std::optional<std::size_t> target;
      std::optional<Element> chi;
      for (std::size_t j = 0; j < chosen.size() && !target; ++j) {
        chi = m.rows_equal_up_to_left_invertible(row, tb.residual(chosen[j], 0));
        if (chi) target = j;
      }
      if (!target) throw InternalInconsistency("hypothesis: no state matches the row of " +
                                               render_word(tb.alphabet(), tb.prefixes()[q]) + tb.alphabet()[a]);
      const auto step = m.try_left_divide(*tb.lambda(q, 0), *tb.lambda(q, a + 1));
      if (!step) throw InternalInconsistency("hypothesis: transition output is not divisible");
      h.set_transition(static_cast<StateId>(i), static_cast<Letter>(a), m.mul(*step, *chi),
                       static_cast<StateId>(*target));
    }
  }
  return h;
}

void Learner::check_budget() const {
  if (table_.prefixes().size() > limits_.max_q)
    throw BudgetExceeded("prefix set grew beyond " + std::to_string(limits_.max_q) + " words", stats());
}

Transducer Learner::run(const EquivalenceOracle& equivalence, LearnObserver* observer) {
  while (true) {
    if (loop_iterations_ >= limits_.max_iterations)
      throw BudgetExceeded("no answer after " + std::to_string(limits_.max_iterations) + " iterations", stats());
    ++loop_iterations_;
    if (auto defect = find_defect()) {
      if (observer) observer->on_defect(*defect, table_);
      apply_defect(*defect);
      check_budget();
      continue;
    }
    Transducer hypothesis = build_hypothesis();
    if (observer) observer->on_hypothesis(hypothesis, table_);
    ++equivalence_queries_;
    const EquivalenceVerdict verdict = equivalence(hypothesis);
    if (observer) observer->on_verdict(verdict, table_);
    if (verdict.equivalent) return hypothesis;
    process_counterexample(verdict.word);
    check_budget();
  }
}

LearnResult learn(const Monoid& monoid, const std::vector<std::string>& alphabet, MembershipOracle membership,
                  const EquivalenceOracle& equivalence, LearnLimits limits, LearnObserver* observer) {
  Learner learner(monoid, alphabet, std::move(membership), limits);
  Transducer machine = learner.run(equivalence, observer);
  return LearnResult{std::move(machine), learner.stats()};
}

LearnResult learn_machine(const Transducer& target, LearnLimits limits, LearnObserver* observer) {
  return learn(target.monoid(), target.alphabet(), membership_oracle(target), equivalence_oracle(target), limits,
               observer);
}

}  // namespace montrans
