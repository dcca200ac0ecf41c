#ifndef FOCAL_REPORT_H_
#define FOCAL_REPORT_H_

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "focal/focality.h"
#include "focal/ingest.h"
#include "focal/records.h"
#include "focal/trial.h"

namespace focal {

// A cell holds text, or a number printed in shortest form in CSV and with
// three decimals in text tables. Empty cells mean "not defined".
struct ReportCell {
  std::string text;
  std::optional<double> number;

  static ReportCell Text(std::string text) { return {std::move(text), std::nullopt}; }
  static ReportCell Number(double value) { return {{}, value}; }
  static ReportCell Count(std::size_t value) { return {std::to_string(value), std::nullopt}; }
  static ReportCell Missing() { return {}; }
};

struct ReportTable {
  std::string name;  // file stem
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::vector<ReportCell>> rows;

  std::string RenderCsv() const;
  std::string RenderText() const;
};

struct ReportBundle {
  std::vector<ReportTable> tables;

  const ReportTable* Find(std::string_view name) const;
  // All tables as aligned text, separated by blank lines.
  std::string RenderText() const;
};

// Which payoff-lost figure the series table reports.
enum class PayoffLostMode { kPenalty, kShortfall };
std::string_view PayoffLostModeName(PayoffLostMode mode);
std::optional<PayoffLostMode> ParsePayoffLostMode(std::string_view name);

struct TaskReportOptions {
  const HumanTallies* human = nullptr;
  const FocalityLabels* labels = nullptr;
};

// Tables "nci" (one row per agent, question, task and prompt variant),
// "nci_summary" (mean and median over questions) and, with labels, "focality".
// Options are taken from the persisted displayed_options. Throws kEmptyInput
// on no trials and kIngestion when a human tally names an option that was not
// offered.
ReportBundle emit_task_report(std::span<const TrialRecord> trials,
                              const TaskReportOptions& options = {});

// Tables "payoffs" (one row per matchup, both payoff-lost figures) and
// "series" (running missed-Nash count and payoff lost per iteration). Failed
// iterations are counted and left out of the metrics. Throws kEmptyInput.
ReportBundle emit_bargaining_report(std::span<const BargainingOutcome> outcomes,
                                    PayoffLostMode mode = PayoffLostMode::kPenalty);

// Writes <name>.csv for every table and report.txt with all of them.
void write_report(const ReportBundle& bundle, const std::filesystem::path& directory);

}  // namespace focal

#endif  // FOCAL_REPORT_H_
