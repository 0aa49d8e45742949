#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace montrans {

enum class MonoidKind { free_monoid, trace, commutative, nat_add, cyclic_group };

std::string_view to_string(MonoidKind kind);
std::optional<MonoidKind> parse_monoid_kind(std::string_view text);

// Presentation of an output monoid. Generators are used by the free, trace
// and commutative kinds; commutations only by trace; modulus only by
// cyclic_group.
struct MonoidSpec {
  MonoidKind kind = MonoidKind::free_monoid;
  std::vector<std::string> generators;
  std::vector<std::pair<std::string, std::string>> commutations;
  std::uint64_t modulus = 1;

  static MonoidSpec free(std::vector<std::string> generators);
  static MonoidSpec trace(std::vector<std::string> generators,
                          std::vector<std::pair<std::string, std::string>> commutations);
  static MonoidSpec commutative(std::vector<std::string> generators);
  static MonoidSpec nat_add();
  static MonoidSpec cyclic_group(std::uint64_t modulus);

  // Throws InvalidMonoidSpec.
  void validate() const;

  friend bool operator==(const MonoidSpec&, const MonoidSpec&) = default;
};

using Generator = std::uint32_t;

// A monoid value in canonical form. Payload per kind:
//   free, trace   -> Sequence of generator indices (trace: lexicographic
//                    normal form w.r.t. declared generator order)
//   commutative   -> Counts, one entry per declared generator
//   nat_add       -> Number
//   cyclic_group  -> Number in [0, modulus)
// Two elements of the same monoid are equal iff their payloads are.
class Element {
 public:
  using Sequence = std::vector<Generator>;
  using Counts = std::vector<std::uint64_t>;
  using Number = std::uint64_t;
  using Payload = std::variant<Sequence, Counts, Number>;

  Element() = default;

  const Payload& payload() const noexcept { return payload_; }
  const Sequence& sequence() const { return std::get<Sequence>(payload_); }
  const Counts& counts() const { return std::get<Counts>(payload_); }
  Number number() const { return std::get<Number>(payload_); }

  friend bool operator==(const Element&, const Element&) = default;
  friend auto operator<=>(const Element&, const Element&) = default;

 private:
  friend class Monoid;
  explicit Element(Payload payload) : payload_(std::move(payload)) {}

  Payload payload_;
};

// Bottom is std::nullopt.
using PartialValue = std::optional<Element>;
using PartialRow = std::vector<PartialValue>;

inline constexpr std::string_view kBottomText = "⊥";
inline constexpr std::string_view kUnitText = "ε";

bool somewhere_defined(std::span<const PartialValue> row);

// A shipped output monoid: the free, trace, free commutative, (N, 0, +) and
// Z/nZ instances. Cheap to copy; immutable.
class Monoid {
 public:
  explicit Monoid(MonoidSpec spec);

  const MonoidSpec& spec() const noexcept;
  MonoidKind kind() const noexcept { return spec().kind; }
  std::size_t generator_count() const noexcept { return spec().generators.size(); }
  std::optional<Generator> find_generator(std::string_view name) const;

  Element unit() const;
  Element generator(Generator g) const;
  // Product of the given generators (free, trace, commutative).
  Element word(std::span<const Generator> letters) const;
  // nat_add and cyclic_group; cyclic values are reduced modulo the modulus.
  Element number(std::uint64_t value) const;
  // Validates the payload and brings it to canonical form. Throws
  // MalformedElement.
  Element canonicalize(Element::Payload payload) const;

  Element mul(const Element& x, const Element& y) const;
  PartialValue mul(const PartialValue& x, const PartialValue& y) const;
  // Entrywise factor * row(i); Bottom entries stay Bottom.
  PartialRow scale(const Element& factor, std::span<const PartialValue> row) const;

  // Canonical left-gcd of two elements.
  Element lgcd(const Element& x, const Element& y) const;
  // Bottom iff the row is nowhere defined; otherwise the binary lgcd folded
  // over defined entries in index order.
  PartialValue lgcd_family(std::span<const PartialValue> row) const;

  std::optional<Element> try_left_divide(const Element& divisor, const Element& x) const;
  bool left_divides(const Element& divisor, const Element& x) const;
  // divisor \ x with Bottom conventions: (d, Bottom) -> Bottom. Throws
  // NotDivisible when no quotient exists.
  PartialValue left_divide(const PartialValue& divisor, const PartialValue& x) const;

  bool is_invertible(const Element& x) const;
  Element inverse(const Element& x) const;  // throws NotInvertible
  // True for every instance except cyclic_group.
  bool has_trivial_invertibles() const noexcept;

  // An invertible chi with u = chi * v, if one exists (both Bottom -> unit).
  std::optional<Element> factor_left_invertible(const PartialValue& u,
                                                const PartialValue& v) const;
  // Some(chi) iff r1 = chi * r2 pointwise for a single invertible chi.
  std::optional<Element> rows_equal_up_to_left_invertible(
      std::span<const PartialValue> r1, std::span<const PartialValue> r2) const;
  // Row divided entrywise by its family lgcd. Nowhere-defined rows map to
  // themselves.
  PartialRow red_row(std::span<const PartialValue> row) const;

  std::uint64_t rank(const Element& x) const;

  // Text form: generators joined by "·" (or juxtaposed when every generator
  // name is a single character), "ε" for the unit; decimal numbers for
  // nat_add and cyclic_group. Throws UnknownGenerator / MalformedElement.
  Element parse(std::string_view text) const;
  std::string render(const Element& x) const;
  std::string render(const PartialValue& x) const;

  friend bool operator==(const Monoid& a, const Monoid& b) { return a.spec() == b.spec(); }

 private:
  struct Data;
  std::shared_ptr<const Data> data_;
};

}  // namespace montrans
