#include "focal/format.h"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace focal {

std::string FormatNumber(double value) {
  if (std::isfinite(value) && value == std::nearbyint(value) && std::fabs(value) < 1e15) {
    std::array<char, 32> buf{};
    std::snprintf(buf.data(), buf.size(), "%.0f", value == 0.0 ? 0.0 : value);
    return buf.data();
  }
  std::array<char, 64> buf{};
  const auto result = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), result.ptr);
}

std::string FormatFixed(double value, int digits) {
  std::array<char, 64> buf{};
  if (value == 0.0) value = 0.0;  // drop negative zero
  std::snprintf(buf.data(), buf.size(), "%.*f", digits, value);
  std::string out = buf.data();
  if (out.find_first_not_of("-0.") == std::string::npos && out.front() == '-') {
    out.erase(0, 1);
  }
  return out;
}

std::string ToLower(std::string_view text) {
  std::string out(text);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string_view Trim(std::string_view text) {
  const auto space = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  while (!text.empty() && space(text.front())) text.remove_prefix(1);
  while (!text.empty() && space(text.back())) text.remove_suffix(1);
  return text;
}

bool LastAnswerSpan(std::string_view text, std::string_view* inner) {
  constexpr std::string_view kOpen = "<answer>";
  constexpr std::string_view kClose = "</answer>";
  const auto close = text.rfind(kClose);
  if (close == std::string_view::npos) return false;
  const auto open = text.rfind(kOpen, close);
  if (open == std::string_view::npos) return false;
  const auto start = open + kOpen.size();
  *inner = text.substr(start, close - start);
  return true;
}

}  // namespace focal
