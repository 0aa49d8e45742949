#include "montrans/monoid.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <unordered_map>

#include "montrans/error.hpp"
#include "montrans/symbols.hpp"

namespace montrans {

std::string_view to_string(MonoidKind kind) {
  switch (kind) {
    case MonoidKind::free_monoid: return "free";
    case MonoidKind::trace: return "trace";
    case MonoidKind::commutative: return "commutative";
    case MonoidKind::nat_add: return "nat-add";
    case MonoidKind::cyclic_group: return "cyclic-group";
  }
  return "?";
}

std::optional<MonoidKind> parse_monoid_kind(std::string_view text) {
  for (auto kind : {MonoidKind::free_monoid, MonoidKind::trace, MonoidKind::commutative,
                    MonoidKind::nat_add, MonoidKind::cyclic_group}) {
    if (to_string(kind) == text) return kind;
  }
  return std::nullopt;
}

MonoidSpec MonoidSpec::free(std::vector<std::string> generators) {
  return {MonoidKind::free_monoid, std::move(generators), {}, 1};
}

MonoidSpec MonoidSpec::trace(std::vector<std::string> generators,
                             std::vector<std::pair<std::string, std::string>> commutations) {
  return {MonoidKind::trace, std::move(generators), std::move(commutations), 1};
}

MonoidSpec MonoidSpec::commutative(std::vector<std::string> generators) {
  return {MonoidKind::commutative, std::move(generators), {}, 1};
}

MonoidSpec MonoidSpec::nat_add() { return {MonoidKind::nat_add, {}, {}, 1}; }

MonoidSpec MonoidSpec::cyclic_group(std::uint64_t modulus) {
  return {MonoidKind::cyclic_group, {}, {}, modulus};
}

void MonoidSpec::validate() const {
  const bool uses_generators = kind == MonoidKind::free_monoid || kind == MonoidKind::trace ||
                               kind == MonoidKind::commutative;
  if (!uses_generators && !generators.empty())
    throw InvalidMonoidSpec(std::string(to_string(kind)) + " monoid takes no generators");
  std::set<std::string_view> seen;
  for (const auto& g : generators) {
    if (g.empty()) throw InvalidMonoidSpec("generator names must be non-empty");
    if (g == kUnitText || g == kBottomText || g.find(kSymbolSeparator) != std::string::npos)
      throw InvalidMonoidSpec("reserved generator name '" + g + "'");
    if (!seen.insert(g).second) throw InvalidMonoidSpec("duplicate generator '" + g + "'");
  }
  if (kind != MonoidKind::trace && !commutations.empty())
    throw InvalidMonoidSpec("commutations are only meaningful for trace monoids");
  for (const auto& [a, b] : commutations) {
    if (!seen.contains(a) || !seen.contains(b))
      throw InvalidMonoidSpec("commutation {" + a + ", " + b + "} references an undeclared generator");
    if (a == b) throw InvalidMonoidSpec("commutation pair must have two distinct members");
  }
  if (kind == MonoidKind::trace && generators.size() > 64)
    throw InvalidMonoidSpec("trace monoids support at most 64 generators");
  if (modulus < 1) throw InvalidMonoidSpec("modulus must be at least 1");
  if (kind != MonoidKind::cyclic_group && modulus != 1)
    throw InvalidMonoidSpec("modulus is only meaningful for cyclic groups");
}

bool somewhere_defined(std::span<const PartialValue> row) {
  return std::any_of(row.begin(), row.end(), [](const PartialValue& v) { return v.has_value(); });
}

struct Monoid::Data {
  MonoidSpec spec;
  std::unordered_map<std::string, Generator> index;
  // Trace only: bit h of dependent[g] is set iff g and h do not commute.
  std::vector<std::uint64_t> dependent;
};

namespace {

using Sequence = Element::Sequence;
using Counts = Element::Counts;
using Number = Element::Number;

std::uint64_t bit(Generator g) { return std::uint64_t{1} << g; }

// Lexicographic normal form: repeatedly emit the least letter that is
// minimal (no dependent letter before it) in what remains.
Sequence trace_normal_form(const Sequence& word, const std::vector<std::uint64_t>& dependent) {
  const std::size_t n = word.size();
  std::vector<bool> used(n, false);
  Sequence out;
  out.reserve(n);
  for (std::size_t round = 0; round < n; ++round) {
    std::uint64_t seen = 0;
    std::size_t best = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i]) continue;
      const Generator g = word[i];
      if ((seen & dependent[g]) == 0 && (best == n || g < word[best])) best = i;
      seen |= bit(g);
    }
    used[best] = true;
    out.push_back(word[best]);
  }
  return out;
}

// Position of the first occurrence of g in the unused part of word if that
// occurrence is a minimal letter, else npos.
std::size_t minimal_occurrence(const Sequence& word, const std::vector<bool>& used, Generator g,
                               const std::vector<std::uint64_t>& dependent) {
  std::uint64_t seen = 0;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (used[i]) continue;
    if (word[i] == g) return (seen & dependent[g]) == 0 ? i : Sequence::size_type(-1);
    seen |= bit(word[i]);
  }
  return Sequence::size_type(-1);
}

constexpr auto npos = Sequence::size_type(-1);

Sequence remaining(const Sequence& word, const std::vector<bool>& used) {
  Sequence out;
  for (std::size_t i = 0; i < word.size(); ++i)
    if (!used[i]) out.push_back(word[i]);
  return out;
}

}  // namespace

Monoid::Monoid(MonoidSpec spec) {
  spec.validate();
  auto data = std::make_shared<Data>();
  for (Generator i = 0; i < spec.generators.size(); ++i) data->index.emplace(spec.generators[i], i);

  // Commutations are a set of unordered pairs: store each as (lower, higher)
  // declaration index, sorted, without duplicates.
  std::set<std::pair<Generator, Generator>> pairs;
  for (const auto& [a, b] : spec.commutations) {
    Generator x = data->index.at(a), y = data->index.at(b);
    pairs.emplace(std::min(x, y), std::max(x, y));
  }
  spec.commutations.clear();
  for (const auto& [x, y] : pairs) spec.commutations.emplace_back(spec.generators[x], spec.generators[y]);

  if (spec.kind == MonoidKind::trace) {
    data->dependent.assign(spec.generators.size(), 0);
    for (Generator g = 0; g < spec.generators.size(); ++g)
      for (Generator h = 0; h < spec.generators.size(); ++h)
        if (!pairs.contains({std::min(g, h), std::max(g, h)})) data->dependent[g] |= bit(h);
  }
  data->spec = std::move(spec);
  data_ = std::move(data);
}

const MonoidSpec& Monoid::spec() const noexcept { return data_->spec; }

std::optional<Generator> Monoid::find_generator(std::string_view name) const {
  auto it = data_->index.find(std::string(name));
  if (it == data_->index.end()) return std::nullopt;
  return it->second;
}

Element Monoid::unit() const {
  switch (kind()) {
    case MonoidKind::free_monoid:
    case MonoidKind::trace: return Element(Sequence{});
    case MonoidKind::commutative: return Element(Counts(generator_count(), 0));
    case MonoidKind::nat_add:
    case MonoidKind::cyclic_group: return Element(Number{0});
  }
  return Element{};
}

Element Monoid::generator(Generator g) const {
  const Generator letters[] = {g};
  return word(letters);
}

Element Monoid::word(std::span<const Generator> letters) const {
  for (Generator g : letters)
    if (g >= generator_count()) throw UnknownGenerator("generator index out of range");
  switch (kind()) {
    case MonoidKind::free_monoid: return Element(Sequence(letters.begin(), letters.end()));
    case MonoidKind::trace:
      return Element(trace_normal_form(Sequence(letters.begin(), letters.end()), data_->dependent));
    case MonoidKind::commutative: {
      Counts counts(generator_count(), 0);
      for (Generator g : letters) ++counts[g];
      return Element(std::move(counts));
    }
    default: throw MalformedElement(std::string(to_string(kind())) + " monoid has no generators");
  }
}

Element Monoid::number(std::uint64_t value) const {
  switch (kind()) {
    case MonoidKind::nat_add: return Element(Number{value});
    case MonoidKind::cyclic_group: return Element(Number{value % spec().modulus});
    default: throw MalformedElement(std::string(to_string(kind())) + " elements are not numbers");
  }
}

Element Monoid::canonicalize(Element::Payload payload) const {
  switch (kind()) {
    case MonoidKind::free_monoid:
    case MonoidKind::trace:
      if (!std::holds_alternative<Sequence>(payload)) throw MalformedElement("expected a generator sequence");
      return word(std::get<Sequence>(payload));
    case MonoidKind::commutative:
      if (!std::holds_alternative<Counts>(payload) || std::get<Counts>(payload).size() != generator_count())
        throw MalformedElement("expected one count per generator");
      return Element(std::move(payload));
    case MonoidKind::nat_add:
    case MonoidKind::cyclic_group:
      if (!std::holds_alternative<Number>(payload)) throw MalformedElement("expected a number");
      return number(std::get<Number>(payload));
  }
  return unit();
}

Element Monoid::mul(const Element& x, const Element& y) const {
  switch (kind()) {
    case MonoidKind::free_monoid: {
      Sequence out = x.sequence();
      out.insert(out.end(), y.sequence().begin(), y.sequence().end());
      return Element(std::move(out));
    }
    case MonoidKind::trace: {
      if (y.sequence().empty()) return x;
      if (x.sequence().empty()) return y;
      Sequence out = x.sequence();
      out.insert(out.end(), y.sequence().begin(), y.sequence().end());
      return Element(trace_normal_form(out, data_->dependent));
    }
    case MonoidKind::commutative: {
      Counts out = x.counts();
      for (std::size_t i = 0; i < out.size(); ++i) out[i] += y.counts()[i];
      return Element(std::move(out));
    }
    case MonoidKind::nat_add: return Element(Number{x.number() + y.number()});
    case MonoidKind::cyclic_group: return Element(Number{(x.number() + y.number()) % spec().modulus});
  }
  return unit();
}

PartialValue Monoid::mul(const PartialValue& x, const PartialValue& y) const {
  if (!x || !y) return std::nullopt;
  return mul(*x, *y);
}

PartialRow Monoid::scale(const Element& factor, std::span<const PartialValue> row) const {
  PartialRow out;
  out.reserve(row.size());
  for (const auto& v : row) out.push_back(v ? PartialValue(mul(factor, *v)) : std::nullopt);
  return out;
}

Element Monoid::lgcd(const Element& x, const Element& y) const {
  switch (kind()) {
    case MonoidKind::free_monoid: {
      const auto& a = x.sequence();
      const auto& b = y.sequence();
      auto [ia, ib] = std::mismatch(a.begin(), a.end(), b.begin(), b.end());
      return Element(Sequence(a.begin(), ia));
    }
    case MonoidKind::trace: {
      // Extract letters that are minimal in both traces until none is left.
      const auto& a = x.sequence();
      const auto& b = y.sequence();
      std::vector<bool> used_a(a.size(), false), used_b(b.size(), false);
      Sequence common;
      bool progress = true;
      while (progress) {
        progress = false;
        std::uint64_t seen = 0;
        for (std::size_t i = 0; i < a.size(); ++i) {
          if (used_a[i]) continue;
          const Generator g = a[i];
          const bool minimal_in_a = (seen & data_->dependent[g]) == 0;
          seen |= bit(g);
          if (!minimal_in_a) continue;
          const auto j = minimal_occurrence(b, used_b, g, data_->dependent);
          if (j == npos) continue;
          used_a[i] = true;
          used_b[j] = true;
          common.push_back(g);
          progress = true;
          break;
        }
      }
      return Element(trace_normal_form(common, data_->dependent));
    }
    case MonoidKind::commutative: {
      Counts out = x.counts();
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::min(out[i], y.counts()[i]);
      return Element(std::move(out));
    }
    case MonoidKind::nat_add: return Element(Number{std::min(x.number(), y.number())});
    case MonoidKind::cyclic_group: return x;  // every element is a gcd; keep the first
  }
  return unit();
}

PartialValue Monoid::lgcd_family(std::span<const PartialValue> row) const {
  PartialValue acc;
  for (const auto& v : row) {
    if (!v) continue;
    acc = acc ? lgcd(*acc, *v) : *v;
  }
  return acc;
}

std::optional<Element> Monoid::try_left_divide(const Element& divisor, const Element& x) const {
  switch (kind()) {
    case MonoidKind::free_monoid: {
      const auto& d = divisor.sequence();
      const auto& w = x.sequence();
      if (d.size() > w.size() || !std::equal(d.begin(), d.end(), w.begin())) return std::nullopt;
      return Element(Sequence(w.begin() + static_cast<std::ptrdiff_t>(d.size()), w.end()));
    }
    case MonoidKind::trace: {
      const auto& d = divisor.sequence();
      const auto& w = x.sequence();
      if (d.size() > w.size()) return std::nullopt;
      std::vector<bool> used(w.size(), false);
      for (Generator g : d) {
        const auto i = minimal_occurrence(w, used, g, data_->dependent);
        if (i == npos) return std::nullopt;
        used[i] = true;
      }
      return Element(trace_normal_form(remaining(w, used), data_->dependent));
    }
    case MonoidKind::commutative: {
      Counts out = x.counts();
      for (std::size_t i = 0; i < out.size(); ++i) {
        if (divisor.counts()[i] > out[i]) return std::nullopt;
        out[i] -= divisor.counts()[i];
      }
      return Element(std::move(out));
    }
    case MonoidKind::nat_add:
      if (divisor.number() > x.number()) return std::nullopt;
      return Element(Number{x.number() - divisor.number()});
    case MonoidKind::cyclic_group: {
      const auto m = spec().modulus;
      return Element(Number{(x.number() + m - divisor.number()) % m});
    }
  }
  return std::nullopt;
}

bool Monoid::left_divides(const Element& divisor, const Element& x) const {
  return try_left_divide(divisor, x).has_value();
}

PartialValue Monoid::left_divide(const PartialValue& divisor, const PartialValue& x) const {
  if (!x) return std::nullopt;
  if (!divisor) throw NotDivisible("bottom does not left-divide " + render(*x));
  auto q = try_left_divide(*divisor, *x);
  if (!q) throw NotDivisible(render(*divisor) + " does not left-divide " + render(*x));
  return q;
}

bool Monoid::has_trivial_invertibles() const noexcept { return kind() != MonoidKind::cyclic_group; }

bool Monoid::is_invertible(const Element& x) const {
  return !has_trivial_invertibles() || x == unit();
}

Element Monoid::inverse(const Element& x) const {
  if (kind() == MonoidKind::cyclic_group) {
    const auto m = spec().modulus;
    return Element(Number{(m - x.number()) % m});
  }
  if (x == unit()) return x;
  throw NotInvertible(render(x) + " is not invertible");
}

std::optional<Element> Monoid::factor_left_invertible(const PartialValue& u,
                                                      const PartialValue& v) const {
  if (!u && !v) return unit();
  if (!u || !v) return std::nullopt;
  if (has_trivial_invertibles()) {
    if (*u == *v) return unit();
    return std::nullopt;
  }
  return mul(*u, inverse(*v));
}

std::optional<Element> Monoid::rows_equal_up_to_left_invertible(
    std::span<const PartialValue> r1, std::span<const PartialValue> r2) const {
  if (r1.size() != r2.size()) return std::nullopt;
  std::optional<Element> chi;
  for (std::size_t i = 0; i < r1.size(); ++i) {
    if (r1[i].has_value() != r2[i].has_value()) return std::nullopt;
    if (r1[i] && !chi) {
      chi = factor_left_invertible(r1[i], r2[i]);
      if (!chi) return std::nullopt;
    }
  }
  if (!chi) return unit();
  for (std::size_t i = 0; i < r1.size(); ++i) {
    if (r1[i] && *r1[i] != mul(*chi, *r2[i])) return std::nullopt;
  }
  return chi;
}

PartialRow Monoid::red_row(std::span<const PartialValue> row) const {
  const auto g = lgcd_family(row);
  if (!g) return PartialRow(row.begin(), row.end());
  PartialRow out;
  out.reserve(row.size());
  for (const auto& v : row) out.push_back(left_divide(g, v));
  return out;
}

std::uint64_t Monoid::rank(const Element& x) const {
  switch (kind()) {
    case MonoidKind::free_monoid:
    case MonoidKind::trace: return x.sequence().size();
    case MonoidKind::commutative: {
      std::uint64_t total = 0;
      for (auto c : x.counts()) total += c;
      return total;
    }
    case MonoidKind::nat_add: return x.number();
    case MonoidKind::cyclic_group: return 0;
  }
  return 0;
}

Element Monoid::parse(std::string_view text) const {
  if (kind() == MonoidKind::nat_add || kind() == MonoidKind::cyclic_group) {
    const auto first = text.find_first_not_of(" \t");
    const auto last = text.find_last_not_of(" \t");
    if (first == std::string_view::npos) throw MalformedElement("empty number");
    text = text.substr(first, last - first + 1);
    if (text == kUnitText) return unit();
    Number value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size())
      throw MalformedElement("'" + std::string(text) + "' is not a natural number");
    if (kind() == MonoidKind::cyclic_group && value >= spec().modulus)
      throw MalformedElement("'" + std::string(text) + "' is not a residue modulo " +
                             std::to_string(spec().modulus));
    return number(value);
  }
  const auto tokens = split_symbols(text, spec().generators);
  if (tokens.size() == 1 && tokens[0] == kUnitText) return unit();
  Sequence letters;
  for (const auto& token : tokens) {
    if (token.empty()) throw MalformedElement("empty generator in '" + std::string(text) + "'");
    auto g = find_generator(token);
    if (!g) throw UnknownGenerator("unknown generator '" + token + "'");
    letters.push_back(*g);
  }
  return word(letters);
}

std::string Monoid::render(const Element& x) const {
  switch (kind()) {
    case MonoidKind::nat_add:
    case MonoidKind::cyclic_group: return std::to_string(x.number());
    default: break;
  }
  std::vector<Generator> letters;
  if (kind() == MonoidKind::commutative) {
    for (Generator g = 0; g < x.counts().size(); ++g) letters.insert(letters.end(), x.counts()[g], g);
  } else {
    letters = x.sequence();
  }
  if (letters.empty()) return std::string(kUnitText);
  std::string out;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (i > 0) out += kSymbolSeparator;
    out += spec().generators[letters[i]];
  }
  return out;
}

std::string Monoid::render(const PartialValue& x) const {
  return x ? render(*x) : std::string(kBottomText);
}

}  // namespace montrans
