#include "montrans/serialize.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "montrans/error.hpp"

namespace montrans {
namespace {

using nlohmann::json;

std::string child(const std::string& path, std::string_view key) {
  // JSON-pointer escaping of '~' and '/'.
  std::string out = path + "/";
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

std::string child(const std::string& path, std::size_t index) {
  return path + "/" + std::to_string(index);
}

const json& field(const json& obj, const std::string& path, std::string_view key) {
  if (!obj.is_object()) throw SchemaError(path, "expected an object");
  auto it = obj.find(std::string(key));
  if (it == obj.end()) throw SchemaError(child(path, key), "missing field");
  return *it;
}

const json* optional_field(const json& obj, std::string_view key) {
  auto it = obj.find(std::string(key));
  return it == obj.end() ? nullptr : &*it;
}

std::string as_string(const json& doc, const std::string& path) {
  if (!doc.is_string()) throw SchemaError(path, "expected a string");
  return doc.get<std::string>();
}

std::vector<std::string> as_string_list(const json& doc, const std::string& path) {
  if (!doc.is_array()) throw SchemaError(path, "expected an array");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < doc.size(); ++i) out.push_back(as_string(doc[i], child(path, i)));
  return out;
}

std::uint64_t as_count(const json& doc, const std::string& path) {
  if (!doc.is_number_unsigned() && !(doc.is_number_integer() && doc.get<std::int64_t>() >= 0))
    throw SchemaError(path, "expected a non-negative integer");
  return doc.get<std::uint64_t>();
}

std::string escape_dot(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

Document element_to_json(const Monoid& monoid, const Element& x) {
  const auto& names = monoid.spec().generators;
  switch (monoid.kind()) {
    case MonoidKind::free_monoid:
    case MonoidKind::trace: {
      Document out = Document::array();
      for (Generator g : x.sequence()) out.push_back(names[g]);
      return out;
    }
    case MonoidKind::commutative: {
      std::map<std::string, std::uint64_t> sorted;
      for (std::size_t g = 0; g < names.size(); ++g)
        if (x.counts()[g] > 0) sorted[names[g]] = x.counts()[g];
      Document out = Document::object();
      for (const auto& [name, count] : sorted) out[name] = count;
      return out;
    }
    case MonoidKind::nat_add:
    case MonoidKind::cyclic_group:
      return Document(x.number());
  }
  return Document();
}

Document partial_to_json(const Monoid& monoid, const PartialValue& x) {
  return x ? element_to_json(monoid, *x) : Document(nullptr);
}

Element element_from_json(const Monoid& monoid, const json& doc, const std::string& path,
                          std::vector<std::string>* warnings) {
  auto lookup = [&](const std::string& name, const std::string& at) {
    auto g = monoid.find_generator(name);
    if (!g) throw SchemaError(at, "unknown generator '" + name + "'");
    return *g;
  };
  switch (monoid.kind()) {
    case MonoidKind::free_monoid:
    case MonoidKind::trace: {
      if (!doc.is_array()) throw SchemaError(path, "expected an array of generators");
      Element::Sequence letters;
      for (std::size_t i = 0; i < doc.size(); ++i)
        letters.push_back(lookup(as_string(doc[i], child(path, i)), child(path, i)));
      Element x = monoid.word(letters);
      if (x.sequence() != letters && warnings)
        warnings->push_back(path + ": trace value canonicalized to " + monoid.render(x));
      return x;
    }
    case MonoidKind::commutative: {
      if (!doc.is_object()) throw SchemaError(path, "expected an object of generator counts");
      Element::Counts counts(monoid.generator_count(), 0);
      for (const auto& [name, value] : doc.items()) {
        const auto at = child(path, name);
        const auto count = as_count(value, at);
        if (count == 0) throw SchemaError(at, "counts must be at least 1");
        counts[lookup(name, at)] = count;
      }
      return monoid.canonicalize(std::move(counts));
    }
    case MonoidKind::nat_add:
      return monoid.number(as_count(doc, path));
    case MonoidKind::cyclic_group: {
      const auto value = as_count(doc, path);
      if (value >= monoid.spec().modulus)
        throw SchemaError(path, "residue must be below the modulus " + std::to_string(monoid.spec().modulus));
      return monoid.number(value);
    }
  }
  throw SchemaError(path, "unsupported monoid kind");
}

Document monoid_to_json(const MonoidSpec& spec) {
  Document out;
  out["kind"] = std::string(to_string(spec.kind));
  out["generators"] = spec.generators;
  Document commutations = Document::array();
  for (const auto& [a, b] : spec.commutations) commutations.push_back({a, b});
  out["commutations"] = std::move(commutations);
  out["modulus"] = spec.modulus;
  return out;
}

MonoidSpec monoid_from_json(const json& doc, const std::string& path) {
  MonoidSpec spec;
  const auto kind_path = child(path, "kind");
  const auto kind = parse_monoid_kind(as_string(field(doc, path, "kind"), kind_path));
  if (!kind) throw SchemaError(kind_path, "unknown monoid kind");
  spec.kind = *kind;
  if (const json* g = optional_field(doc, "generators"))
    spec.generators = as_string_list(*g, child(path, "generators"));
  if (const json* c = optional_field(doc, "commutations")) {
    const auto at = child(path, "commutations");
    if (!c->is_array()) throw SchemaError(at, "expected an array of pairs");
    for (std::size_t i = 0; i < c->size(); ++i) {
      const auto pair = as_string_list((*c)[i], child(at, i));
      if (pair.size() != 2) throw SchemaError(child(at, i), "expected a pair of generators");
      spec.commutations.emplace_back(pair[0], pair[1]);
    }
  }
  if (const json* m = optional_field(doc, "modulus")) spec.modulus = as_count(*m, child(path, "modulus"));
  try {
    spec.validate();
  } catch (const InvalidMonoidSpec& e) {
    throw SchemaError(path, e.what());
  }
  return spec;
}

Document to_json(const Transducer& t) {
  const Monoid& m = t.monoid();
  Document out;
  out["format_version"] = kFormatVersion;
  out["monoid"] = monoid_to_json(m.spec());
  out["alphabet"] = t.alphabet();
  out["states"] = t.states();
  if (t.initial()) {
    Document init;
    init["value"] = element_to_json(m, t.initial()->value);
    init["state"] = t.states()[t.initial()->state];
    out["initial"] = std::move(init);
  } else {
    out["initial"] = nullptr;
  }
  Document termination = Document::object();
  for (StateId s = 0; s < t.state_count(); ++s)
    termination[t.states()[s]] = partial_to_json(m, t.termination(s));
  out["termination"] = std::move(termination);
  Document transitions = Document::array();
  for (StateId s = 0; s < t.state_count(); ++s) {
    for (Letter a = 0; a < t.letter_count(); ++a) {
      const auto& step = t.transition(s, a);
      if (!step) continue;
      Document edge;
      edge["from"] = t.states()[s];
      edge["letter"] = t.alphabet()[a];
      edge["output"] = element_to_json(m, step->output);
      edge["to"] = t.states()[step->target];
      transitions.push_back(std::move(edge));
    }
  }
  out["transitions"] = std::move(transitions);
  return out;
}

Transducer from_json(const json& doc, std::vector<std::string>* warnings) {
  if (!doc.is_object()) throw SchemaError("", "expected an object");
  const auto& version = field(doc, "", "format_version");
  if (!version.is_number_integer() || version.get<std::int64_t>() != kFormatVersion)
    throw SchemaError("/format_version", "unsupported format version");

  Monoid monoid(monoid_from_json(field(doc, "", "monoid"), "/monoid"));
  auto alphabet = as_string_list(field(doc, "", "alphabet"), "/alphabet");
  auto states = as_string_list(field(doc, "", "states"), "/states");

  std::optional<Transducer> built;
  try {
    built.emplace(monoid, alphabet, states);
  } catch (const Error& e) {
    throw SchemaError("", e.what());
  }
  Transducer& t = *built;

  auto state_ref = [&](const json& value, const std::string& at) {
    auto s = t.find_state(as_string(value, at));
    if (!s) throw SchemaError(at, "unknown state '" + value.get<std::string>() + "'");
    return *s;
  };

  const auto& initial = field(doc, "", "initial");
  if (!initial.is_null()) {
    Element value = element_from_json(monoid, field(initial, "/initial", "value"), "/initial/value", warnings);
    t.set_initial(std::move(value), state_ref(field(initial, "/initial", "state"), "/initial/state"));
  }

  const auto& termination = field(doc, "", "termination");
  if (!termination.is_object()) throw SchemaError("/termination", "expected an object");
  for (const auto& [name, value] : termination.items()) {
    const auto at = child("/termination", name);
    auto s = t.find_state(name);
    if (!s) throw SchemaError(at, "unknown state '" + name + "'");
    if (!value.is_null()) t.set_termination(*s, element_from_json(monoid, value, at, warnings));
  }

  const auto& transitions = field(doc, "", "transitions");
  if (!transitions.is_array()) throw SchemaError("/transitions", "expected an array");
  for (std::size_t i = 0; i < transitions.size(); ++i) {
    const auto at = child("/transitions", i);
    const auto& edge = transitions[i];
    const StateId from = state_ref(field(edge, at, "from"), child(at, "from"));
    const auto letter_path = child(at, "letter");
    const auto letter_name = as_string(field(edge, at, "letter"), letter_path);
    auto letter = t.find_letter(letter_name);
    if (!letter) throw SchemaError(letter_path, "unknown letter '" + letter_name + "'");
    Element output = element_from_json(monoid, field(edge, at, "output"), child(at, "output"), warnings);
    const StateId to = state_ref(field(edge, at, "to"), child(at, "to"));
    if (t.transition(from, *letter)) throw SchemaError(at, "second transition for the same state and letter");
    t.set_transition(from, *letter, std::move(output), to);
  }
  return std::move(*built);
}

std::string dump(const Document& doc) { return doc.dump(2) + "\n"; }

Transducer parse_transducer(std::string_view text, std::vector<std::string>* warnings) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError("", std::string("malformed document: ") + e.what());
  }
  return from_json(doc, warnings);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

Transducer load_transducer(const std::string& path, std::vector<std::string>* warnings) {
  return parse_transducer(read_file(path), warnings);
}

std::string to_dot(const Transducer& t) {
  const Monoid& m = t.monoid();
  std::ostringstream out;
  out << "digraph transducer {\n  rankdir=LR;\n";
  if (t.initial()) {
    out << "  __start [shape=point];\n";
    out << "  __start -> \"" << escape_dot(t.states()[t.initial()->state]) << "\" [label=\""
        << escape_dot(m.render(t.initial()->value)) << "\"];\n";
  }
  for (StateId s = 0; s < t.state_count(); ++s) {
    const auto& name = t.states()[s];
    std::string label = name;
    if (t.termination(s)) label += " : " + m.render(*t.termination(s));
    out << "  \"" << escape_dot(name) << "\" [label=\"" << escape_dot(label) << "\""
        << (t.termination(s) ? ", shape=doublecircle" : ", shape=circle") << "];\n";
  }
  for (StateId s = 0; s < t.state_count(); ++s) {
    for (Letter a = 0; a < t.letter_count(); ++a) {
      const auto& step = t.transition(s, a);
      if (!step) continue;
      out << "  \"" << escape_dot(t.states()[s]) << "\" -> \"" << escape_dot(t.states()[step->target])
          << "\" [label=\"" << escape_dot(t.alphabet()[a] + " / " + m.render(step->output)) << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace montrans
