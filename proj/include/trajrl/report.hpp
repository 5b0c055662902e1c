#pragma once

#include <span>
#include <string>

#include "trajrl/eval.hpp"
#include "trajrl/experiments.hpp"
#include "trajrl/grpo.hpp"

namespace trajrl {

enum class ReportFormat { table, csv, json };

ReportFormat report_format_from_string(const std::string& name);

/// All renderers are pure functions of their inputs; no timestamps or host
/// state, so a seeded run reproduces its reports byte for byte.
std::string render_corpus_eval(const CorpusEval& eval, ReportFormat format);
std::string render_diagnostics_csv(std::span<const StepDiagnostics> history);
std::string render_ablation(const AblationResult& result, ReportFormat format);
std::string render_sweep(std::span<const SweepRow> rows, ReportFormat format);
std::string render_breakdown_json(const RewardBreakdown& breakdown);

}  // namespace trajrl
