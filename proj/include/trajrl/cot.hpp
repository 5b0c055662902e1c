#pragma once

#include <string_view>

namespace trajrl {

/// Which of the four reasoning-stage headers appear in a think text, and
/// whether their first occurrences are in order. Advisory only; the stage
/// structure is not part of any reward.
struct CotStageReport {
  bool visual_analysis = false;
  bool motion_modeling = false;
  bool logical_deductions = false;
  bool self_reflection = false;
  bool ordered = false;

  bool all_present() const {
    return visual_analysis && motion_modeling && logical_deductions && self_reflection;
  }
};

/// Scans for the stage headers "Visual Analysis", "Motion Modeling",
/// "Logical Deductions" and "Self-Reflection Validation", case-insensitive,
/// with or without numbering. If the input contains a <think> block only its
/// content is scanned; otherwise the whole input is treated as think text.
CotStageReport validate_cot(std::string_view text);

}  // namespace trajrl
