#pragma once

// Helpers shared by the line-oriented file readers.

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

namespace trustrev::detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::string_view strip_comment(std::string_view line) {
  const auto hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

struct NumberedLine {
  std::size_t number;  // 1-based
  std::string_view text;  // comment-stripped, trimmed, nonempty
};

// Meaningful lines of `text` with their line numbers.
inline std::vector<NumberedLine> content_lines(std::string_view text) {
  std::vector<NumberedLine> out;
  std::size_t number = 0;
  std::size_t start = 0;
  while (true) {
    const auto nl = text.find('\n', start);
    const auto end = nl == std::string_view::npos ? text.size() : nl;
    ++number;
    const auto line = trim(strip_comment(text.substr(start, end - start)));
    if (!line.empty()) out.push_back({number, line});
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return out;
}

// Splits off the first whitespace-delimited word.
inline std::pair<std::string_view, std::string_view> split_word(std::string_view s) {
  s = trim(s);
  std::size_t i = 0;
  while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  return {s.substr(0, i), trim(s.substr(i))};
}

// Splits `{a,b} {c}, {}` into the individual brace literals. Returns false on
// stray characters outside braces.
inline bool split_state_literals(std::string_view s, std::vector<std::string_view>& out) {
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      ++i;
      continue;
    }
    if (c != '{') return false;
    const auto close = s.find('}', i);
    if (close == std::string_view::npos) return false;
    out.push_back(s.substr(i, close - i + 1));
    i = close + 1;
  }
  return true;
}

}  // namespace trustrev::detail
