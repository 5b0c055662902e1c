#include "trajrl/report.hpp"

#include <cstdio>
#include <stdexcept>

#include "json.hpp"

namespace trajrl {

namespace {

using nlohmann::json;

std::string g17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fixed4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

json row_to_json(const EvalRow& row) {
  return {{"l2_1s", row.l2_1s}, {"l2_2s", row.l2_2s}, {"l2_3s", row.l2_3s},
          {"l2_avg", row.l2_avg}};
}

std::string row_to_csv(const EvalRow& row) {
  return g17(row.l2_1s) + "," + g17(row.l2_2s) + "," + g17(row.l2_3s) + "," + g17(row.l2_avg);
}

void append_table_row(std::string& out, const std::string& label, const EvalRow& row) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%-24s %8s %8s %8s %8s\n", label.c_str(),
                fixed4(row.l2_1s).c_str(), fixed4(row.l2_2s).c_str(),
                fixed4(row.l2_3s).c_str(), fixed4(row.l2_avg).c_str());
  out += buf;
}

std::string table_header(const char* label_col) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%-24s %8s %8s %8s %8s\n", label_col, "1s", "2s", "3s",
                "Avg.");
  return buf;
}

}  // namespace

ReportFormat report_format_from_string(const std::string& name) {
  if (name == "table") return ReportFormat::table;
  if (name == "csv") return ReportFormat::csv;
  if (name == "json") return ReportFormat::json;
  throw std::invalid_argument("unknown report format: " + name);
}

std::string render_corpus_eval(const CorpusEval& eval, ReportFormat format) {
  switch (format) {
    case ReportFormat::json: {
      json j{{"aggregate", row_to_json(eval.aggregate)},
             {"scenario_count", eval.per_scenario.size()},
             {"per_scenario", json::array()},
             {"skipped", json::array()}};
      for (const auto& e : eval.per_scenario) {
        json row = row_to_json(e.row);
        row["id"] = e.id;
        j["per_scenario"].push_back(std::move(row));
      }
      for (const auto& s : eval.skipped) {
        j["skipped"].push_back({{"id", s.id}, {"reason", s.reason}});
      }
      return j.dump(2) + "\n";
    }
    case ReportFormat::csv: {
      std::string out = "id,l2_1s,l2_2s,l2_3s,l2_avg\n";
      for (const auto& e : eval.per_scenario) {
        out += e.id + "," + row_to_csv(e.row) + "\n";
      }
      out += "AGGREGATE," + row_to_csv(eval.aggregate) + "\n";
      return out;
    }
    case ReportFormat::table: {
      std::string out = table_header("Scenarios (L2, m)");
      append_table_row(out, "aggregate of " + std::to_string(eval.per_scenario.size()),
                       eval.aggregate);
      if (!eval.skipped.empty()) {
        out += "skipped: " + std::to_string(eval.skipped.size()) + "\n";
      }
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

std::string render_diagnostics_csv(std::span<const StepDiagnostics> history) {
  std::string out =
      "iteration,scenario_id,mean_reward,mean_r_pos,mean_r_ste,mean_r_vel,mean_r_tem,kl,"
      "grad_norm\n";
  for (const auto& d : history) {
    out += std::to_string(d.iteration) + "," + d.scenario_id + "," + g17(d.mean_reward) + "," +
           g17(d.mean_r_pos) + "," + g17(d.mean_r_ste) + "," + g17(d.mean_r_vel) + "," +
           g17(d.mean_r_tem) + "," + g17(d.kl) + "," + g17(d.grad_norm) + "\n";
  }
  return out;
}

std::string render_ablation(const AblationResult& result, ReportFormat format) {
  switch (format) {
    case ReportFormat::json: {
      json j = json::array();
      for (const auto& row : result.rows) {
        json r = row_to_json(row.eval);
        r["label"] = row.label;
        r["r_tem_mean"] = row.r_tem_mean;
        r["r_tem_sampled"] = row.r_tem_sampled;
        r["mean_reward_tail"] = row.mean_reward;
        j.push_back(std::move(r));
      }
      return j.dump(2) + "\n";
    }
    case ReportFormat::csv: {
      std::string out = "label,l2_1s,l2_2s,l2_3s,l2_avg,r_tem_mean,r_tem_sampled,mean_reward_tail\n";
      for (const auto& row : result.rows) {
        out += row.label + "," + row_to_csv(row.eval) + "," + g17(row.r_tem_mean) + "," +
               g17(row.r_tem_sampled) + "," + g17(row.mean_reward) + "\n";
      }
      return out;
    }
    case ReportFormat::table: {
      std::string out = table_header("Reward toggles");
      for (const auto& row : result.rows) {
        append_table_row(out, row.label, row.eval);
      }
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

std::string render_sweep(std::span<const SweepRow> rows, ReportFormat format) {
  switch (format) {
    case ReportFormat::json: {
      json j = json::array();
      for (const auto& row : rows) {
        j.push_back({{"group_size", row.group_size},
                     {"l2_by_seed", row.l2_by_seed},
                     {"median_l2_avg", row.median_l2}});
      }
      return j.dump(2) + "\n";
    }
    case ReportFormat::csv: {
      std::string out = "group_size,median_l2_avg,l2_by_seed\n";
      for (const auto& row : rows) {
        out += std::to_string(row.group_size) + "," + g17(row.median_l2) + ",";
        for (std::size_t i = 0; i < row.l2_by_seed.size(); ++i) {
          if (i > 0) out += ";";
          out += g17(row.l2_by_seed[i]);
        }
        out += "\n";
      }
      return out;
    }
    case ReportFormat::table: {
      std::string out;
      char buf[96];
      std::snprintf(buf, sizeof(buf), "%-12s %16s\n", "group size", "median l2_avg");
      out += buf;
      for (const auto& row : rows) {
        std::snprintf(buf, sizeof(buf), "%-12zu %16s\n", row.group_size,
                      fixed4(row.median_l2).c_str());
        out += buf;
      }
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

std::string render_breakdown_json(const RewardBreakdown& b) {
  json j{{"r_pos", b.r_pos},     {"r_ste", b.r_ste},       {"r_vel", b.r_vel},
         {"r_tem", b.r_tem},     {"r_acc", b.r_acc},       {"r_format", b.r_format},
         {"total", b.total},     {"parsed", b.parsed},     {"length_ok", b.length_ok}};
  return j.dump(2) + "\n";
}

}  // namespace trajrl
