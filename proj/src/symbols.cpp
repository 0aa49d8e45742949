#include "montrans/symbols.hpp"

#include <algorithm>

namespace montrans {
namespace {

std::string_view trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r\n");
  return text.substr(first, last - first + 1);
}

std::size_t code_point_length(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead >> 5) == 0x6) return 2;
  if ((lead >> 4) == 0xE) return 3;
  if ((lead >> 3) == 0x1E) return 4;
  return 1;
}

}  // namespace

bool is_single_code_point(std::string_view text) {
  return !text.empty() && code_point_length(static_cast<unsigned char>(text[0])) == text.size();
}

std::vector<std::string> split_symbols(std::string_view text,
                                       std::span<const std::string> names) {
  text = trim(text);
  std::vector<std::string> tokens;
  if (text.empty()) return tokens;

  if (text.find(kSymbolSeparator) != std::string_view::npos) {
    std::size_t start = 0;
    while (true) {
      const auto pos = text.find(kSymbolSeparator, start);
      const auto piece = trim(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
      tokens.emplace_back(piece);
      if (pos == std::string_view::npos) break;
      start = pos + kSymbolSeparator.size();
    }
    return tokens;
  }

  if (std::find(names.begin(), names.end(), text) != names.end()) {
    tokens.emplace_back(text);
    return tokens;
  }

  const bool all_single = std::all_of(names.begin(), names.end(),
                                      [](const std::string& n) { return is_single_code_point(n); });
  if (!all_single) {
    tokens.emplace_back(text);
    return tokens;
  }
  for (std::size_t i = 0; i < text.size();) {
    const auto len = std::min(code_point_length(static_cast<unsigned char>(text[i])), text.size() - i);
    tokens.emplace_back(text.substr(i, len));
    i += len;
  }
  return tokens;
}

std::string join_symbols(std::span<const std::string> tokens,
                         std::span<const std::string> alphabet) {
  const bool juxtapose = std::all_of(alphabet.begin(), alphabet.end(),
                                     [](const std::string& n) { return is_single_code_point(n); });
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0 && !juxtapose) out += kSymbolSeparator;
    out += tokens[i];
  }
  return out;
}

}  // namespace montrans
