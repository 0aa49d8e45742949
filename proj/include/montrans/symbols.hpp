#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace montrans {

// Separator between symbols in the text form of words and elements.
inline constexpr std::string_view kSymbolSeparator = "·";

// Splits `text` into symbol tokens. Tokens are separated by "·"; text
// without a separator is either a single known name or, when every name in
// `names` is one code point long, a sequence of code points. Empty text
// yields no tokens. Tokens are not checked against `names`.
std::vector<std::string> split_symbols(std::string_view text,
                                       std::span<const std::string> names);

// Joins names with "·", or juxtaposes them when every name in `alphabet`
// is a single code point.
std::string join_symbols(std::span<const std::string> tokens,
                         std::span<const std::string> alphabet);

bool is_single_code_point(std::string_view text);

}  // namespace montrans
