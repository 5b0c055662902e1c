#include "trajrl/cot.hpp"

#include <array>
#include <cctype>
#include <string>

namespace trajrl {

namespace {

// Case-insensitive substring search; npos when absent.
std::size_t ifind(std::string_view haystack, std::string_view needle) {
  if (needle.size() > haystack.size()) return std::string_view::npos;
  const auto lower = [](char c) { return static_cast<char>(std::tolower(static_cast<unsigned char>(c))); };
  for (std::size_t i = 0; i + needle.size() <= haystack.size(); ++i) {
    std::size_t j = 0;
    while (j < needle.size() && lower(haystack[i + j]) == lower(needle[j])) ++j;
    if (j == needle.size()) return i;
  }
  return std::string_view::npos;
}

}  // namespace

CotStageReport validate_cot(std::string_view text) {
  std::string_view think = text;
  const std::size_t open = text.find("<think>");
  if (open != std::string_view::npos) {
    const std::size_t begin = open + 7;
    const std::size_t close = text.find("</think>", begin);
    think = text.substr(begin, close == std::string_view::npos ? std::string_view::npos
                                                               : close - begin);
  }

  const std::array<std::string_view, 4> headers = {
      "Visual Analysis", "Motion Modeling", "Logical Deductions", "Self-Reflection Validation"};
  std::array<std::size_t, 4> at{};
  for (std::size_t i = 0; i < headers.size(); ++i) {
    at[i] = ifind(think, headers[i]);
  }

  CotStageReport report;
  report.visual_analysis = at[0] != std::string_view::npos;
  report.motion_modeling = at[1] != std::string_view::npos;
  report.logical_deductions = at[2] != std::string_view::npos;
  report.self_reflection = at[3] != std::string_view::npos;
  report.ordered = report.all_present() && at[0] < at[1] && at[1] < at[2] && at[2] < at[3];
  return report;
}

}  // namespace trajrl
