#include "focal/report.h"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <tuple>

#include "focal/coordination.h"
#include "focal/error.h"
#include "focal/format.h"
#include "focal/session.h"

namespace focal {
namespace {

std::string CsvField(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string CsvText(const ReportCell& cell) {
  return cell.number ? FormatNumber(*cell.number) : cell.text;
}

std::string DisplayText(const ReportCell& cell) {
  if (cell.number) return FormatFixed(*cell.number, 3);
  return cell.text.empty() ? "-" : cell.text;
}

void WriteFile(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::kLoad, "cannot write " + path.string());
  out << content;
}

// Tally over the offered labels, sorted, from valid parsed choices.
struct Cell {
  std::vector<std::string> labels;
  std::map<std::string, std::int64_t> counts;
  std::int64_t invalid = 0;
};

ChoiceTally TallyOf(const std::vector<std::string>& labels,
                    const std::map<std::string, std::int64_t>& counts) {
  std::vector<std::int64_t> values;
  for (const auto& label : labels) {
    const auto it = counts.find(label);
    values.push_back(it == counts.end() ? 0 : it->second);
  }
  return ChoiceTally(labels, values);
}

std::optional<double> NciOf(const ChoiceTally& tally) {
  if (tally.n() < 2 || tally.num_options() < 2) return std::nullopt;
  return normalized_ci(tally);
}

ReportCell MaybeNumber(std::optional<double> value) {
  return value ? ReportCell::Number(*value) : ReportCell::Missing();
}

// Accumulates label shares weighted by respondents, across questions.
struct FocalityAccumulator {
  std::map<FocalityLabel, double> weighted;
  std::int64_t n = 0;

  void Add(const ChoiceTally& tally, const LabelMap& labels) {
    if (tally.n() == 0) return;
    const auto shares = focality_distribution(tally, labels);
    for (const auto& [label, share] : shares) weighted[label] += share * tally.n();
    n += tally.n();
  }
};

}  // namespace

std::string ReportTable::RenderCsv() const {
  std::string out;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    out += (c ? "," : "") + CsvField(columns[c]);
  }
  out += "\n";
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out += (c ? "," : "") + CsvField(CsvText(row[c]));
    out += "\n";
  }
  return out;
}

std::string ReportTable::RenderText() const {
  std::vector<std::size_t> width(columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) width[c] = columns[c].size();
  std::vector<std::vector<std::string>> cells;
  for (const auto& row : rows) {
    std::vector<std::string> line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      line.push_back(DisplayText(row[c]));
      width[c] = std::max(width[c], line.back().size());
    }
    cells.push_back(std::move(line));
  }
  auto render = [&](const std::vector<std::string>& line, const std::vector<ReportCell>* row) {
    std::string out;
    for (std::size_t c = 0; c < line.size(); ++c) {
      const std::string pad(width[c] - line[c].size(), ' ');
      const bool right = row != nullptr && (*row)[c].number.has_value();
      if (c > 0) out += "  ";
      out += right ? pad + line[c] : line[c] + (c + 1 < line.size() ? pad : "");
    }
    return out + "\n";
  };
  std::string out = title + "\n";
  out += render(columns, nullptr);
  std::size_t total = 0;
  for (std::size_t w : width) total += w;
  out += std::string(total + 2 * (width.empty() ? 0 : width.size() - 1), '-') + "\n";
  for (std::size_t r = 0; r < cells.size(); ++r) out += render(cells[r], &rows[r]);
  return out;
}

const ReportTable* ReportBundle::Find(std::string_view name) const {
  for (const auto& table : tables) {
    if (table.name == name) return &table;
  }
  return nullptr;
}

std::string ReportBundle::RenderText() const {
  std::string out;
  for (std::size_t i = 0; i < tables.size(); ++i) {
    if (i > 0) out += "\n";
    out += tables[i].RenderText();
  }
  return out;
}

std::string_view PayoffLostModeName(PayoffLostMode mode) {
  return mode == PayoffLostMode::kPenalty ? "penalty" : "shortfall";
}

std::optional<PayoffLostMode> ParsePayoffLostMode(std::string_view name) {
  if (name == "penalty") return PayoffLostMode::kPenalty;
  if (name == "shortfall") return PayoffLostMode::kShortfall;
  return std::nullopt;
}

ReportBundle emit_task_report(std::span<const TrialRecord> trials,
                              const TaskReportOptions& options) {
  if (trials.empty()) throw Error(ErrorKind::kEmptyInput, "no trials to report");

  // Questions keep their first-appearance order.
  std::map<std::string, std::size_t> question_order;
  std::map<std::string, std::vector<std::string>> question_labels;
  for (const auto& t : trials) {
    if (question_order.emplace(t.question_id, question_order.size()).second) {
      auto labels = t.displayed_options;
      std::sort(labels.begin(), labels.end());
      question_labels[t.question_id] = labels;
    }
  }
  using CellKey = std::tuple<std::string, std::size_t, int, int>;  // agent, question, task, variant
  std::map<CellKey, Cell> cells;
  std::map<CellKey, std::string> question_of;
  for (const auto& t : trials) {
    const CellKey key{t.agent_id, question_order.at(t.question_id), static_cast<int>(t.task),
                      static_cast<int>(t.prompt_variant)};
    Cell& cell = cells[key];
    cell.labels = question_labels.at(t.question_id);
    question_of[key] = t.question_id;
    const bool valid = t.parsed_choice && std::binary_search(cell.labels.begin(),
                                                             cell.labels.end(),
                                                             *t.parsed_choice);
    if (valid) {
      ++cell.counts[*t.parsed_choice];
    } else {
      ++cell.invalid;
    }
  }

  const bool with_human = options.human != nullptr;
  auto human_tally = [&](const std::string& question_id,
                         TaskVariant task) -> std::optional<ChoiceTally> {
    if (!with_human) return std::nullopt;
    const auto* counts = options.human->Find(question_id, task);
    if (counts == nullptr) return std::nullopt;
    const auto& labels = question_labels.at(question_id);
    for (const auto& [label, count] : *counts) {
      if (!std::binary_search(labels.begin(), labels.end(), label)) {
        throw Error(ErrorKind::kIngestion, "human tally for " + question_id + " names '" + label +
                                               "', which was not offered");
      }
    }
    return TallyOf(labels, *counts);
  };

  ReportTable nci{"nci", "Normalized coordination index per question",
                  {"agent", "question", "task", "variant", "m", "valid", "invalid", "ci", "nci"},
                  {}};
  if (with_human) {
    nci.columns.push_back("human_n");
    nci.columns.push_back("human_nci");
  }
  using SummaryKey = std::tuple<std::string, int, int>;
  std::map<SummaryKey, std::vector<double>> agent_ncis;
  std::map<SummaryKey, std::vector<double>> human_ncis;
  std::map<SummaryKey, FocalityAccumulator> agent_focality;
  std::map<int, FocalityAccumulator> human_focality;  // by task
  std::set<std::pair<std::string, int>> human_counted;

  for (const auto& [key, cell] : cells) {
    const auto& [agent, q, task_index, variant_index] = key;
    const std::string& question_id = question_of.at(key);
    const auto task = static_cast<TaskVariant>(task_index);
    const auto variant = static_cast<PromptVariant>(variant_index);
    const ChoiceTally tally = TallyOf(cell.labels, cell.counts);
    std::optional<double> ci;
    if (tally.n() >= 2) ci = coordination_index(tally);
    const auto value = NciOf(tally);
    std::vector<ReportCell> row = {ReportCell::Text(agent),
                                   ReportCell::Text(question_id),
                                   ReportCell::Text(std::string(TaskVariantName(task))),
                                   ReportCell::Text(std::string(PromptVariantName(variant))),
                                   ReportCell::Count(cell.labels.size()),
                                   ReportCell::Count(static_cast<std::size_t>(tally.n())),
                                   ReportCell::Count(static_cast<std::size_t>(cell.invalid)),
                                   MaybeNumber(ci),
                                   MaybeNumber(value)};
    const SummaryKey summary_key{agent, task_index, variant_index};
    if (value) agent_ncis[summary_key].push_back(*value);
    const auto human = human_tally(question_id, task);
    if (with_human) {
      row.push_back(human ? ReportCell::Count(static_cast<std::size_t>(human->n()))
                          : ReportCell::Missing());
      const auto human_value = human ? NciOf(*human) : std::nullopt;
      row.push_back(MaybeNumber(human_value));
      if (human_value) human_ncis[summary_key].push_back(*human_value);
    }
    // Questions without any labels stay out of the focality table.
    const LabelMap labels =
        options.labels != nullptr ? options.labels->ForQuestion(question_id) : LabelMap{};
    if (!labels.empty()) {
      agent_focality[summary_key].Add(tally, labels);
      // Human shares are counted once per question and task.
      if (human && human_counted.emplace(question_id, task_index).second) {
        human_focality[task_index].Add(*human, labels);
      }
    }
    nci.rows.push_back(std::move(row));
  }

  ReportTable summary{"nci_summary", "Mean and median NCI over questions",
                      {"agent", "task", "variant", "questions", "mean_nci", "median_nci"},
                      {}};
  if (with_human) {
    summary.columns.push_back("human_questions");
    summary.columns.push_back("human_mean_nci");
  }
  std::set<SummaryKey> summary_keys;
  for (const auto& [key, cell] : cells) {
    summary_keys.emplace(std::get<0>(key), std::get<2>(key), std::get<3>(key));
  }
  for (const auto& key : summary_keys) {
    const auto& [agent, task_index, variant_index] = key;
    const auto it = agent_ncis.find(key);
    std::vector<ReportCell> row = {
        ReportCell::Text(agent),
        ReportCell::Text(std::string(TaskVariantName(static_cast<TaskVariant>(task_index)))),
        ReportCell::Text(
            std::string(PromptVariantName(static_cast<PromptVariant>(variant_index)))),
        ReportCell::Count(it == agent_ncis.end() ? 0 : it->second.size())};
    if (it == agent_ncis.end()) {
      row.push_back(ReportCell::Missing());
      row.push_back(ReportCell::Missing());
    } else {
      row.push_back(ReportCell::Number(Mean(it->second)));
      row.push_back(ReportCell::Number(Median(it->second)));
    }
    if (with_human) {
      const auto h = human_ncis.find(key);
      row.push_back(ReportCell::Count(h == human_ncis.end() ? 0 : h->second.size()));
      row.push_back(h == human_ncis.end() ? ReportCell::Missing()
                                          : ReportCell::Number(Mean(h->second)));
    }
    summary.rows.push_back(std::move(row));
  }

  ReportBundle bundle;
  bundle.tables.push_back(std::move(nci));
  bundle.tables.push_back(std::move(summary));

  if (options.labels != nullptr) {
    ReportTable focality{"focality", "Share of valid answers carrying each focality label",
                         {"agent", "task", "variant", "n"},
                         {}};
    for (auto label : kAllFocalityLabels) {
      focality.columns.push_back(std::string(FocalityLabelName(label)));
    }
    auto add_row = [&](const std::string& agent, int task_index, const std::string& variant,
                       const FocalityAccumulator& acc) {
      std::vector<ReportCell> row = {
          ReportCell::Text(agent),
          ReportCell::Text(std::string(TaskVariantName(static_cast<TaskVariant>(task_index)))),
          ReportCell::Text(variant),
          ReportCell::Count(static_cast<std::size_t>(acc.n))};
      for (auto label : kAllFocalityLabels) {
        if (acc.n == 0) {
          row.push_back(ReportCell::Missing());
        } else {
          const auto it = acc.weighted.find(label);
          row.push_back(ReportCell::Number(
              (it == acc.weighted.end() ? 0.0 : it->second) / static_cast<double>(acc.n)));
        }
      }
      focality.rows.push_back(std::move(row));
    };
    for (const auto& [key, acc] : agent_focality) {
      add_row(std::get<0>(key), std::get<1>(key),
              std::string(PromptVariantName(static_cast<PromptVariant>(std::get<2>(key)))), acc);
    }
    for (const auto& [task_index, acc] : human_focality) add_row("human", task_index, "", acc);
    bundle.tables.push_back(std::move(focality));
  }
  return bundle;
}

ReportBundle emit_bargaining_report(std::span<const BargainingOutcome> outcomes,
                                    PayoffLostMode mode) {
  if (outcomes.empty()) throw Error(ErrorKind::kEmptyInput, "no outcomes to report");
  std::vector<std::string> order;
  std::map<std::string, std::vector<const BargainingOutcome*>> by_matchup;
  for (const auto& o : outcomes) {
    if (by_matchup.find(o.matchup) == by_matchup.end()) order.push_back(o.matchup);
    by_matchup[o.matchup].push_back(&o);
  }

  ReportTable payoffs{"payoffs", "Bargaining Table payoffs per matchup",
                      {"matchup", "blue_agent", "orange_agent", "iterations", "failed",
                       "blue_mean", "blue_median", "blue_total", "orange_mean", "orange_median",
                       "orange_total", "welfare", "missed_nash", "conflicted_discs",
                       "payoff_lost_penalty", "payoff_lost_shortfall"},
                      {}};
  ReportTable series{"series",
                     "Cumulative missed Nash and payoff lost (" +
                         std::string(PayoffLostModeName(mode)) + ")",
                     {"matchup", "iteration", "missed_nash", "payoff_lost"},
                     {}};
  for (const auto& name : order) {
    auto records = by_matchup.at(name);
    std::stable_sort(records.begin(), records.end(),
                     [](const auto* a, const auto* b) { return a->iteration < b->iteration; });
    std::vector<SessionRound> rounds;
    std::vector<std::size_t> iterations;
    std::size_t failed = 0;
    for (const auto* o : records) {
      if (!o->ok) {
        ++failed;
        continue;
      }
      rounds.push_back({o->board, *o->blue, *o->orange});
      iterations.push_back(o->iteration);
    }
    std::vector<ReportCell> row = {ReportCell::Text(name),
                                   ReportCell::Text(records.front()->blue_agent),
                                   ReportCell::Text(records.front()->orange_agent),
                                   ReportCell::Count(rounds.size()), ReportCell::Count(failed)};
    if (rounds.empty()) {
      while (row.size() < payoffs.columns.size()) row.push_back(ReportCell::Missing());
      payoffs.rows.push_back(std::move(row));
      continue;
    }
    const SessionMetrics m = session_metrics(rounds);
    for (const PayoffSummary* s : {&m.blue, &m.orange}) {
      row.push_back(ReportCell::Number(s->mean));
      row.push_back(ReportCell::Number(s->median));
      row.push_back(ReportCell::Number(s->total));
    }
    row.push_back(ReportCell::Number(m.welfare));
    row.push_back(ReportCell::Count(m.missed_nash_iterations));
    row.push_back(ReportCell::Count(m.conflicted_disc_count));
    row.push_back(ReportCell::Number(m.cumulative_payoff_lost));
    row.push_back(ReportCell::Number(m.cumulative_shortfall));
    payoffs.rows.push_back(std::move(row));
    const auto& lost =
        mode == PayoffLostMode::kPenalty ? m.payoff_lost_series : m.shortfall_series;
    for (std::size_t i = 0; i < rounds.size(); ++i) {
      series.rows.push_back({ReportCell::Text(name), ReportCell::Count(iterations[i]),
                             ReportCell::Count(m.missed_nash_series[i]),
                             ReportCell::Number(lost[i])});
    }
  }
  ReportBundle bundle;
  bundle.tables.push_back(std::move(payoffs));
  bundle.tables.push_back(std::move(series));
  return bundle;
}

void write_report(const ReportBundle& bundle, const std::filesystem::path& directory) {
  std::filesystem::create_directories(directory);
  for (const auto& table : bundle.tables) {
    WriteFile(directory / (table.name + ".csv"), table.RenderCsv());
  }
  WriteFile(directory / "report.txt", bundle.RenderText());
}

}  // namespace focal
