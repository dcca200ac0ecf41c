// focal: command-line front end for the coordination experiments.
//
//   focal run-tasks --config configs/tasks_scripted.json
//   focal run-bargaining --config configs/bargaining_strategies.json
//   focal ingest --kind tasks data/human_tallies_synthetic.csv
//   focal report out/tasks_scripted/trials.jsonl
//
// Exit codes: 0 success, 1 partial run, 2 configuration or input error.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "focal/coordination.h"
#include "focal/error.h"
#include "focal/format.h"
#include "focal/ingest.h"
#include "focal/question.h"
#include "focal/records.h"
#include "focal/report.h"
#include "focal/runner.h"
#include "focal/session.h"

namespace {

namespace fs = std::filesystem;
using namespace focal;

constexpr int kExitOk = 0;
constexpr int kExitPartial = 1;
constexpr int kExitInput = 2;

struct RunFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::size_t> limit;
};

void AddRunFlags(CLI::App* cmd, RunFlags* flags) {
  cmd->add_option("--config", flags->config, "Experiment config (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--seed", flags->seed, "Override the config seed");
  cmd->add_option("--out", flags->out, "Override the output directory");
  cmd->add_option("--limit", flags->limit, "Stop after persisting this many records");
}

int Finish(const RunSummary& s, const std::string& unit) {
  std::cout << "planned " << s.planned << " " << unit << ", resumed " << s.resumed << ", issued "
            << s.issued << ", persisted " << s.persisted << ", failed " << s.failed << ", lost "
            << s.lost << "\n";
  std::cout << "records: " << s.records_file.string() << "\n";
  if (fs::exists(s.report_dir)) std::cout << "report:  " << s.report_dir.string() << "\n";
  if (s.aborted) std::cerr << "run aborted, partial results kept: " << s.abort_message << "\n";
  if (s.limited) std::cerr << "stopped at --limit; rerun the same command to resume\n";
  if (s.failed > 0) std::cerr << s.failed << " iteration(s) failed and were left out\n";
  return s.complete() ? kExitOk : kExitPartial;
}

int RunTasks(const RunFlags& flags) {
  const fs::path path(flags.config);
  auto config = task_config_from_json(load_config_json(path), path.parent_path());
  if (flags.seed) config.seed = *flags.seed;
  if (flags.out) config.output = *flags.out;
  return Finish(run_task_experiment(config, {flags.limit}), "trials");
}

int RunBargaining(const RunFlags& flags) {
  const fs::path path(flags.config);
  auto config = bargaining_config_from_json(load_config_json(path), path.parent_path());
  if (flags.seed) config.seed = *flags.seed;
  if (flags.out) config.output = *flags.out;
  return Finish(run_bargaining_experiment(config, {flags.limit}), "iterations");
}

int IngestTasks(const std::string& file, const std::optional<std::string>& questions_file) {
  std::optional<std::vector<Question>> questions;
  if (questions_file) questions = load_question_set(*questions_file);
  const auto tallies = load_human_tallies(file, questions ? &*questions : nullptr);
  ReportTable table{"human", "Imported human tallies", {"question", "task", "m", "n", "nci"}, {}};
  for (const auto& entry : tallies.Entries()) {
    std::vector<std::string> labels;
    std::vector<std::int64_t> counts;
    const Question* question = nullptr;
    if (questions) {
      for (const auto& q : *questions) {
        if (q.id == entry.question_id) question = &q;
      }
    }
    if (question != nullptr) {
      labels = question->labels();
    } else {
      for (const auto& [label, count] : *entry.counts) labels.push_back(label);
    }
    for (const auto& label : labels) {
      const auto it = entry.counts->find(label);
      counts.push_back(it == entry.counts->end() ? 0 : it->second);
    }
    const ChoiceTally tally(labels, counts);
    ReportCell nci = ReportCell::Missing();
    if (tally.n() >= 2 && tally.num_options() >= 2) nci = ReportCell::Number(normalized_ci(tally));
    table.rows.push_back({ReportCell::Text(entry.question_id),
                          ReportCell::Text(entry.task ? std::string(TaskVariantName(*entry.task))
                                                      : "all"),
                          ReportCell::Count(labels.size()),
                          ReportCell::Count(static_cast<std::size_t>(tally.n())), nci});
  }
  std::cout << table.RenderText();
  if (!questions) std::cout << "(m counts only the labels present; pass --questions for full option sets)\n";
  return kExitOk;
}

int IngestBargaining(const std::string& file) {
  const auto history = load_bargaining_history(file);
  std::size_t blue = 0;
  std::size_t orange = 0;
  std::vector<SessionRound> complete;
  for (const auto& r : history) {
    blue += r.blue ? 1 : 0;
    orange += r.orange ? 1 : 0;
    if (r.blue && r.orange) complete.push_back({r.board, *r.blue, *r.orange});
  }
  std::cout << history.size() << " records, " << blue << " with blue, " << orange
            << " with orange\n";
  if (!complete.empty()) {
    const auto m = session_metrics(complete);
    std::cout << "complete games: " << m.iterations << ", blue total "
              << FormatNumber(m.blue.total) << ", orange total " << FormatNumber(m.orange.total)
              << ", welfare " << FormatNumber(m.welfare) << ", missed Nash "
              << m.missed_nash_iterations << "\n";
  }
  return kExitOk;
}

struct ReportFlags {
  std::string file;
  std::string payoff_lost = "penalty";
  std::optional<std::string> human;
  std::optional<std::string> questions;
  std::optional<std::string> labels;
  std::optional<std::string> out;
};

int Report(const ReportFlags& flags) {
  const auto docs = ReadJsonLines(flags.file, false);
  ReportBundle bundle;
  if (DetectRecordKind(docs) == RecordKind::kTasks) {
    std::vector<TrialRecord> trials;
    for (const auto& doc : docs) trials.push_back(trial_from_json(doc));
    std::optional<std::vector<Question>> questions;
    if (flags.questions) questions = load_question_set(*flags.questions);
    std::optional<HumanTallies> human;
    if (flags.human) human = load_human_tallies(*flags.human, questions ? &*questions : nullptr);
    std::optional<FocalityLabels> labels;
    if (flags.labels) labels = FocalityLabels::Load(*flags.labels);
    TaskReportOptions options;
    if (human) options.human = &*human;
    if (labels) options.labels = &*labels;
    bundle = emit_task_report(trials, options);
  } else {
    std::vector<BargainingOutcome> outcomes;
    for (const auto& doc : docs) outcomes.push_back(outcome_from_json(doc));
    bundle = emit_bargaining_report(outcomes, *ParsePayoffLostMode(flags.payoff_lost));
  }
  if (flags.out) {
    write_report(bundle, *flags.out);
    std::cout << "report written to " << *flags.out << "\n";
  } else {
    std::cout << bundle.RenderText();
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tacit coordination experiments: multi-answer tasks and the Bargaining Table"};
  app.require_subcommand(1);

  RunFlags task_flags;
  auto* run_tasks = app.add_subcommand("run-tasks", "Run a multi-answer task experiment");
  AddRunFlags(run_tasks, &task_flags);

  RunFlags bargaining_flags;
  auto* run_bargaining =
      app.add_subcommand("run-bargaining", "Run a Bargaining Table experiment");
  AddRunFlags(run_bargaining, &bargaining_flags);

  std::string ingest_kind;
  std::string ingest_file;
  std::optional<std::string> ingest_questions;
  auto* ingest = app.add_subcommand("ingest", "Validate and summarize human data");
  ingest->add_option("--kind", ingest_kind, "tasks or bargaining")
      ->required()
      ->check(CLI::IsMember({"tasks", "bargaining"}));
  ingest->add_option("file", ingest_file, "Tally CSV or bargaining history")
      ->required()
      ->check(CLI::ExistingFile);
  ingest->add_option("--questions", ingest_questions, "Question set to check tallies against");

  ReportFlags report_flags;
  auto* report = app.add_subcommand("report", "Rebuild the report from a records file");
  report->add_option("file", report_flags.file, "trials.jsonl or outcomes.jsonl")
      ->required()
      ->check(CLI::ExistingFile);
  report->add_option("--payoff-lost", report_flags.payoff_lost, "penalty or shortfall")
      ->check(CLI::IsMember({"penalty", "shortfall"}));
  report->add_option("--human", report_flags.human, "Human tally CSV");
  report->add_option("--questions", report_flags.questions, "Question set for the tallies");
  report->add_option("--labels", report_flags.labels, "Focality label file");
  report->add_option("--out", report_flags.out, "Write CSV and text files here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*run_tasks) return RunTasks(task_flags);
    if (*run_bargaining) return RunBargaining(bargaining_flags);
    if (*ingest) {
      return ingest_kind == "tasks" ? IngestTasks(ingest_file, ingest_questions)
                                    : IngestBargaining(ingest_file);
    }
    if (*report) return Report(report_flags);
  } catch (const Error& e) {
    std::cerr << "error (" << ErrorKindName(e.kind()) << "): " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPartial;
  }
  return kExitInput;
}
