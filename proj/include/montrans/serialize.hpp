#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "montrans/transducer.hpp"

namespace montrans {

using Document = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

// Wire form of an element: free/trace -> array of generator names,
// commutative -> object name -> count (count >= 1, keys sorted),
// nat-add / cyclic-group -> integer.
Document element_to_json(const Monoid& monoid, const Element& x);
Document partial_to_json(const Monoid& monoid, const PartialValue& x);
// Throws SchemaError at `path`. A trace value not in normal form is accepted,
// canonicalized, and reported through `warnings` when non-null.
Element element_from_json(const Monoid& monoid, const nlohmann::json& doc, const std::string& path,
                          std::vector<std::string>* warnings = nullptr);

Document monoid_to_json(const MonoidSpec& spec);
MonoidSpec monoid_from_json(const nlohmann::json& doc, const std::string& path);

Document to_json(const Transducer& t);
// Throws SchemaError with a JSON-pointer path to the offending field.
Transducer from_json(const nlohmann::json& doc, std::vector<std::string>* warnings = nullptr);

// Pretty-printed document text with a trailing newline.
std::string dump(const Document& doc);
Transducer parse_transducer(std::string_view text, std::vector<std::string>* warnings = nullptr);

std::string read_file(const std::string& path);
Transducer load_transducer(const std::string& path, std::vector<std::string>* warnings = nullptr);

std::string to_dot(const Transducer& t);

}  // namespace montrans
