#include "focal/runner.h"

#include <atomic>
#include <chrono>
#include <ctime>
#include <fstream>
#include <map>
#include <memory>
#include <set>

#include "focal/agent.h"
#include "focal/error.h"
#include "focal/executor.h"
#include "focal/ingest.h"
#include "focal/question.h"
#include "focal/records.h"
#include "focal/rng.h"
#include "focal/trial.h"

namespace focal {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

[[noreturn]] void ConfigError(const std::string& message) {
  throw Error(ErrorKind::kConfig, message);
}

void CheckKeys(const json& doc, const std::set<std::string>& allowed, const std::string& where) {
  if (!doc.is_object()) ConfigError(where + " must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (allowed.count(key) == 0) ConfigError(where + ": unknown key '" + key + "'");
  }
}

template <typename T>
T Get(const json& doc, const std::string& key, T fallback) {
  if (!doc.contains(key)) return fallback;
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception&) {
    ConfigError("'" + key + "' has the wrong type");
  }
}

fs::path ResolvePath(const json& doc, const std::string& key, const fs::path& base_dir) {
  const auto text = Get<std::string>(doc, key, "");
  if (text.empty()) ConfigError("'" + key + "' must name a file");
  const fs::path path(text);
  return (path.is_absolute() ? path : base_dir / path).lexically_normal();
}

TimestampMode ParseTimestamps(const std::string& text) {
  if (text == "auto") return TimestampMode::kAuto;
  if (text == "wall") return TimestampMode::kWall;
  if (text == "fixed") return TimestampMode::kFixed;
  ConfigError("timestamps must be auto, wall or fixed");
}

std::string WallTimestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &utc);
  return buffer;
}

bool UseWallClock(TimestampMode mode, bool any_remote) {
  return mode == TimestampMode::kWall || (mode == TimestampMode::kAuto && any_remote);
}

// Agent construction failures are configuration problems.
std::unique_ptr<Agent> BuildAgent(const json& spec, const std::string& who) {
  try {
    return make_agent(spec);
  } catch (const Error& e) {
    ConfigError(who + ": " + e.what());
  }
}

bool AbortsRun(ErrorKind kind) {
  return kind == ErrorKind::kTransport || kind == ErrorKind::kProvider ||
         kind == ErrorKind::kPolicy;
}

// Loads existing records for resume, trimming an interrupted final line.
std::vector<json> ExistingRecords(const fs::path& path) {
  if (!fs::exists(path)) return {};
  return ReadJsonLines(path, true);
}

std::ofstream OpenAppend(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::app);
  if (!out) throw Error(ErrorKind::kLoad, "cannot write " + path.string());
  return out;
}

void ValidateTaskConfig(const TaskExperimentConfig& c) {
  if (c.agents.empty()) ConfigError("at least one agent is required");
  std::set<std::string> ids;
  for (const auto& a : c.agents) {
    if (a.id.empty()) ConfigError("every agent needs an id");
    if (a.id.find('|') != std::string::npos) ConfigError("agent ids may not contain '|'");
    if (!ids.insert(a.id).second) ConfigError("duplicate agent id '" + a.id + "'");
  }
  if (c.tasks.empty()) ConfigError("no tasks selected");
  if (c.prompt_variants.empty()) ConfigError("no prompt variants selected");
  if (c.trials_per_permutation < 1) ConfigError("trials_per_permutation must be at least 1");
  if (c.permutations < 1) ConfigError("permutations must be at least 1");
  if (!c.permutation_seeds.empty() &&
      c.permutation_seeds.size() != static_cast<std::size_t>(c.permutations)) {
    ConfigError("permutation_seeds must list one seed per permutation");
  }
}

void ValidateBargainingConfig(const BargainingExperimentConfig& c) {
  if (c.matchups.empty()) ConfigError("at least one matchup is required");
  if (c.iterations < 1) ConfigError("iterations must be at least 1");
  std::set<std::string> names;
  for (const auto& m : c.matchups) {
    if (m.name.empty()) ConfigError("every matchup needs a name");
    if (m.name.find('|') != std::string::npos) ConfigError("matchup names may not contain '|'");
    if (!names.insert(m.name).second) ConfigError("duplicate matchup '" + m.name + "'");
    const bool replays = m.blue.kind == RoleBinding::Kind::kHuman ||
                         m.orange.kind == RoleBinding::Kind::kHuman;
    if (!replays && !c.boards) ConfigError("matchup '" + m.name + "' needs a board set");
  }
}

RoleBinding RoleFromJson(const json& doc, const fs::path& base_dir, const std::string& where) {
  if (!doc.is_object() || !doc.contains("type") || !doc["type"].is_string()) {
    ConfigError(where + " needs a type");
  }
  RoleBinding role;
  const auto type = doc["type"].get<std::string>();
  if (type == "strategy") {
    CheckKeys(doc, {"type", "strategy", "angle"}, where);
    const auto strategy = ParseStrategyType(Get<std::string>(doc, "strategy", ""));
    if (!strategy || *strategy == StrategyType::kScripted || *strategy == StrategyType::kLlm) {
      ConfigError(where + ": strategy must be greedy, cooperative or svo");
    }
    role.kind = RoleBinding::Kind::kStrategy;
    role.strategy.type = *strategy;
    if (*strategy == StrategyType::kSvo) {
      if (!doc.contains("angle")) ConfigError(where + ": svo needs an angle");
      role.strategy.svo_angle = Get<double>(doc, "angle", 0.0);
    }
  } else if (type == "scripted") {
    role.kind = RoleBinding::Kind::kScripted;
    role.agent = doc;
  } else if (type == "llm") {
    role.kind = RoleBinding::Kind::kLlm;
    role.agent = doc;
    const auto variant = Get<std::string>(doc, "prompt_variant", "vanilla");
    const auto parsed = ParseBargainingPromptVariant(variant);
    if (!parsed) ConfigError(where + ": unknown prompt_variant '" + variant + "'");
    role.prompt_variant = *parsed;
  } else if (type == "human") {
    CheckKeys(doc, {"type", "history"}, where);
    role.kind = RoleBinding::Kind::kHuman;
    role.history = ResolvePath(doc, "history", base_dir);
  } else {
    ConfigError(where + ": unknown role type '" + type + "'");
  }
  return role;
}

// One role's decision in one iteration.
struct RoleResult {
  std::optional<Assignment> assignment;
  std::string raw;
  int attempts = 0;
  std::string failure;
};

}  // namespace

std::string RoleBinding::Describe() const {
  switch (kind) {
    case Kind::kStrategy: return strategy.Describe();
    case Kind::kScripted:
    case Kind::kLlm: return make_agent(agent)->Describe();
    case Kind::kHuman: return "human:" + history.filename().string();
  }
  return "";
}

std::uint64_t DerivePermutationSeed(std::uint64_t seed, const std::string& question_id,
                                    std::size_t p) {
  const std::uint64_t h =
      StableHash("perm|" + std::to_string(seed) + "|" + question_id + "|" + std::to_string(p));
  return h == 0 ? 1 : h;
}

std::uint64_t DeriveTrialSeed(std::uint64_t seed, const std::string& question_id,
                              TaskVariant task, PromptVariant variant, std::size_t p,
                              std::size_t t) {
  return StableHash(std::to_string(seed) + "|" + question_id + "|" +
                    std::string(TaskVariantName(task)) + "|" +
                    std::string(PromptVariantName(variant)) + "|" + std::to_string(p) + "|" +
                    std::to_string(t));
}

json load_config_json(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) ConfigError("cannot open config " + path.string());
  json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded()) ConfigError("config " + path.string() + " is not valid JSON");
  return doc;
}

TaskExperimentConfig task_config_from_json(const json& doc, const fs::path& base_dir) {
  CheckKeys(doc,
            {"kind", "questions", "agents", "tasks", "prompt_variants", "trials_per_permutation",
             "permutations", "permutation_seeds", "seed", "output", "timestamps",
             "human_tallies", "focality_labels"},
            "task config");
  if (Get<std::string>(doc, "kind", "tasks") != "tasks") ConfigError("config kind is not tasks");
  TaskExperimentConfig c;
  c.questions = ResolvePath(doc, "questions", base_dir);
  if (!doc.contains("agents") || !doc["agents"].is_array()) ConfigError("'agents' must be a list");
  for (const auto& a : doc["agents"]) {
    if (!a.is_object()) ConfigError("agent entries must be objects");
    AgentBinding binding{Get<std::string>(a, "id", ""), a};
    binding.spec.erase("id");
    c.agents.push_back(std::move(binding));
  }
  if (doc.contains("tasks")) {
    c.tasks.clear();
    for (const auto& name : Get<std::vector<std::string>>(doc, "tasks", {})) {
      const auto task = ParseTaskVariant(name);
      if (!task) ConfigError("unknown task '" + name + "'");
      c.tasks.push_back(*task);
    }
  }
  if (doc.contains("prompt_variants")) {
    c.prompt_variants.clear();
    for (const auto& name : Get<std::vector<std::string>>(doc, "prompt_variants", {})) {
      const auto variant = ParsePromptVariant(name);
      if (!variant) ConfigError("unknown prompt variant '" + name + "'");
      c.prompt_variants.push_back(*variant);
    }
  }
  c.trials_per_permutation = Get<int>(doc, "trials_per_permutation", 30);
  c.permutations = Get<int>(doc, "permutations", 3);
  c.permutation_seeds = Get<std::vector<std::uint64_t>>(doc, "permutation_seeds", {});
  c.seed = Get<std::uint64_t>(doc, "seed", 0);
  c.output = (base_dir / Get<std::string>(doc, "output", "out")).lexically_normal();
  c.timestamps = ParseTimestamps(Get<std::string>(doc, "timestamps", "auto"));
  if (doc.contains("human_tallies")) c.human_tallies = ResolvePath(doc, "human_tallies", base_dir);
  if (doc.contains("focality_labels")) {
    c.focality_labels = ResolvePath(doc, "focality_labels", base_dir);
  }
  ValidateTaskConfig(c);
  for (const auto& a : c.agents) BuildAgent(a.spec, "agent '" + a.id + "'");
  return c;
}

BargainingExperimentConfig bargaining_config_from_json(const json& doc,
                                                       const fs::path& base_dir) {
  CheckKeys(doc,
            {"kind", "boards", "matchups", "iterations", "seed", "output", "timestamps",
             "payoff_lost"},
            "bargaining config");
  if (Get<std::string>(doc, "kind", "bargaining") != "bargaining") {
    ConfigError("config kind is not bargaining");
  }
  BargainingExperimentConfig c;
  if (doc.contains("boards")) c.boards = ResolvePath(doc, "boards", base_dir);
  if (!doc.contains("matchups") || !doc["matchups"].is_array()) {
    ConfigError("'matchups' must be a list");
  }
  for (const auto& m : doc["matchups"]) {
    CheckKeys(m, {"name", "blue", "orange"}, "matchup");
    const auto name = Get<std::string>(m, "name", "");
    if (!m.contains("blue") || !m.contains("orange")) {
      ConfigError("matchup '" + name + "' needs blue and orange");
    }
    c.matchups.push_back({name, RoleFromJson(m["blue"], base_dir, name + " blue"),
                          RoleFromJson(m["orange"], base_dir, name + " orange")});
  }
  c.iterations = Get<int>(doc, "iterations", 100);
  c.seed = Get<std::uint64_t>(doc, "seed", 0);
  c.output = (base_dir / Get<std::string>(doc, "output", "out")).lexically_normal();
  c.timestamps = ParseTimestamps(Get<std::string>(doc, "timestamps", "auto"));
  const auto mode = ParsePayoffLostMode(Get<std::string>(doc, "payoff_lost", "penalty"));
  if (!mode) ConfigError("payoff_lost must be penalty or shortfall");
  c.payoff_lost = *mode;
  ValidateBargainingConfig(c);
  for (const auto& m : c.matchups) {
    for (const RoleBinding* role : {&m.blue, &m.orange}) {
      if (role->kind == RoleBinding::Kind::kScripted || role->kind == RoleBinding::Kind::kLlm) {
        BuildAgent(role->agent, "matchup '" + m.name + "'");
      }
    }
  }
  return c;
}

RunSummary run_task_experiment(const TaskExperimentConfig& config, const RunOptions& options) {
  ValidateTaskConfig(config);
  const auto questions = load_question_set(config.questions);
  std::optional<HumanTallies> human;
  if (config.human_tallies) human = load_human_tallies(*config.human_tallies, &questions);
  std::optional<FocalityLabels> labels;
  if (config.focality_labels) labels = FocalityLabels::Load(*config.focality_labels);

  std::vector<std::unique_ptr<Agent>> agents;
  bool any_remote = false;
  int workers = 1;
  for (const auto& a : config.agents) {
    agents.push_back(BuildAgent(a.spec, "agent '" + a.id + "'"));
    any_remote = any_remote || agents.back()->remote();
    workers = std::max(workers, agents.back()->parallelism());
  }
  const bool wall_clock = UseWallClock(config.timestamps, any_remote);

  const std::size_t num_perms = static_cast<std::size_t>(config.permutations);
  std::vector<std::vector<std::vector<QuestionOption>>> orders(questions.size());
  std::vector<std::vector<std::uint64_t>> perm_seeds(questions.size());
  for (std::size_t q = 0; q < questions.size(); ++q) {
    for (std::size_t p = 0; p < num_perms; ++p) {
      const std::uint64_t seed = config.permutation_seeds.empty()
                                     ? DerivePermutationSeed(config.seed, questions[q].id, p)
                                     : config.permutation_seeds[p];
      perm_seeds[q].push_back(seed);
      orders[q].push_back(permute_options(questions[q], seed));
    }
  }

  RunSummary summary;
  fs::create_directories(config.output);
  summary.records_file = config.output / "trials.jsonl";
  summary.report_dir = config.output / "report";
  std::set<std::string> done;
  for (const auto& doc : ExistingRecords(summary.records_file)) {
    done.insert(trial_from_json(doc).Key());
  }

  struct Job {
    std::size_t agent, question, p, t;
    TaskVariant task;
    PromptVariant variant;
  };
  std::vector<Job> jobs;
  for (std::size_t a = 0; a < agents.size(); ++a) {
    for (std::size_t q = 0; q < questions.size(); ++q) {
      for (auto task : config.tasks) {
        for (auto variant : config.prompt_variants) {
          for (std::size_t p = 0; p < num_perms; ++p) {
            for (std::size_t t = 0; t < static_cast<std::size_t>(config.trials_per_permutation);
                 ++t) {
              ++summary.planned;
              TrialRecord probe;
              probe.agent_id = config.agents[a].id;
              probe.question_id = questions[q].id;
              probe.task = task;
              probe.prompt_variant = variant;
              probe.permutation_index = p;
              probe.trial_index = t;
              if (done.count(probe.Key()) > 0) {
                ++summary.resumed;
                continue;
              }
              jobs.push_back({a, q, p, t, task, variant});
            }
          }
        }
      }
    }
  }

  std::atomic<std::size_t> issued{0};
  auto produce = [&](std::size_t i) {
    ++issued;
    const Job& job = jobs[i];
    const Question& question = questions[job.question];
    const auto& displayed = orders[job.question][job.p];
    TrialRecord r;
    r.agent_id = config.agents[job.agent].id;
    r.question_id = question.id;
    r.task = job.task;
    r.prompt_variant = job.variant;
    r.permutation_index = job.p;
    r.trial_index = job.t;
    r.permutation_seed = perm_seeds[job.question][job.p];
    for (const auto& option : displayed) r.displayed_options.push_back(option.label);
    r.rendered_prompt = render_prompt(question, job.task, job.variant, displayed);
    DecisionContext context;
    context.prompt = r.rendered_prompt;
    context.displayed_options = r.displayed_options;
    context.seed = DeriveTrialSeed(config.seed, question.id, job.task, job.variant, job.p, job.t);
    r.raw_response = agents[job.agent]->Respond(context);
    r.parsed_choice = parse_answer(r.raw_response, question);
    r.timestamp = wall_clock ? WallTimestamp() : kFixedTimestamp;
    return r;
  };
  auto out = OpenAppend(summary.records_file);
  auto consume = [&](std::size_t, TrialRecord&& record) {
    out << trial_to_json(record).dump() << '\n';
    out.flush();
    ++summary.persisted;
    if (options.limit && summary.persisted >= *options.limit) {
      summary.limited = summary.persisted < jobs.size();
      return false;
    }
    return true;
  };
  try {
    RunOrdered<TrialRecord>(jobs.size(), workers, produce, consume);
  } catch (const Error& e) {
    if (!AbortsRun(e.kind())) throw;
    summary.aborted = true;
    summary.abort_message = std::string(ErrorKindName(e.kind())) + ": " + e.what();
  }
  out.close();
  summary.issued = issued.load();
  summary.lost = summary.issued - summary.persisted;

  const auto trials = read_trial_file(summary.records_file);
  if (!trials.empty()) {
    TaskReportOptions report_options;
    if (human) report_options.human = &*human;
    if (labels) report_options.labels = &*labels;
    write_report(emit_task_report(trials, report_options), summary.report_dir);
  }
  return summary;
}

RunSummary run_bargaining_experiment(const BargainingExperimentConfig& config,
                                     const RunOptions& options) {
  ValidateBargainingConfig(config);
  std::vector<BargainingBoard> boards;
  if (config.boards) boards = load_board_set(*config.boards);
  std::map<fs::path, std::vector<HistoryRecord>> histories;
  for (const auto& m : config.matchups) {
    for (const RoleBinding* role : {&m.blue, &m.orange}) {
      if (role->kind == RoleBinding::Kind::kHuman && histories.count(role->history) == 0) {
        histories.emplace(role->history, load_bargaining_history(role->history));
      }
    }
  }
  const std::size_t iterations = static_cast<std::size_t>(config.iterations);

  // Per matchup: where boards come from, and checks on replayed sides.
  struct Plan {
    const std::vector<HistoryRecord>* blue_history = nullptr;
    const std::vector<HistoryRecord>* orange_history = nullptr;
    std::unique_ptr<Agent> blue_agent;
    std::unique_ptr<Agent> orange_agent;
    std::string blue_name;
    std::string orange_name;
  };
  std::vector<Plan> plans;
  bool any_remote = false;
  int workers = 1;
  for (const auto& m : config.matchups) {
    Plan plan;
    for (Player side : {Player::kBlue, Player::kOrange}) {
      const RoleBinding& role = side == Player::kBlue ? m.blue : m.orange;
      auto& agent = side == Player::kBlue ? plan.blue_agent : plan.orange_agent;
      auto& name = side == Player::kBlue ? plan.blue_name : plan.orange_name;
      if (role.kind == RoleBinding::Kind::kScripted || role.kind == RoleBinding::Kind::kLlm) {
        agent = BuildAgent(role.agent, "matchup '" + m.name + "'");
        any_remote = any_remote || agent->remote();
        workers = std::max(workers, agent->parallelism());
        name = agent->Describe();
        if (role.kind == RoleBinding::Kind::kLlm) {
          name += "/" + std::string(BargainingPromptVariantName(role.prompt_variant));
        }
      } else {
        name = role.Describe();
      }
      if (role.kind != RoleBinding::Kind::kHuman) continue;
      const auto& history = histories.at(role.history);
      (side == Player::kBlue ? plan.blue_history : plan.orange_history) = &history;
      for (std::size_t i = 0; i < std::min(iterations, history.size()); ++i) {
        const auto& record = history[i];
        if (!(side == Player::kBlue ? record.blue : record.orange)) {
          throw Error(ErrorKind::kIngestion,
                      role.history.string() + ": record " + std::to_string(i + 1) + " has no " +
                          std::string(PlayerName(side)) + " assignment");
        }
      }
    }
    if (plan.blue_history && plan.orange_history) {
      for (std::size_t i = 0; i < iterations; ++i) {
        if (!((*plan.blue_history)[i % plan.blue_history->size()].board ==
              (*plan.orange_history)[i % plan.orange_history->size()].board)) {
          throw Error(ErrorKind::kIngestion, "matchup '" + m.name +
                                                 "': replayed histories disagree on the board of "
                                                 "iteration " + std::to_string(i));
        }
      }
    }
    plans.push_back(std::move(plan));
  }
  const bool wall_clock = UseWallClock(config.timestamps, any_remote);

  RunSummary summary;
  fs::create_directories(config.output);
  summary.records_file = config.output / "outcomes.jsonl";
  summary.report_dir = config.output / "report";
  std::set<std::string> done;
  for (const auto& doc : ExistingRecords(summary.records_file)) {
    done.insert(outcome_from_json(doc).Key());
  }
  std::vector<std::pair<std::size_t, std::size_t>> jobs;  // matchup, iteration
  for (std::size_t m = 0; m < config.matchups.size(); ++m) {
    for (std::size_t i = 0; i < iterations; ++i) {
      ++summary.planned;
      if (done.count(config.matchups[m].name + "|" + std::to_string(i)) > 0) {
        ++summary.resumed;
        continue;
      }
      jobs.emplace_back(m, i);
    }
  }

  auto play = [&](const Matchup& matchup, const Plan& plan, Player side,
                  const BargainingBoard& board, std::size_t history_index,
                  std::size_t iteration) {
    const RoleBinding& role = side == Player::kBlue ? matchup.blue : matchup.orange;
    RoleResult result;
    switch (role.kind) {
      case RoleBinding::Kind::kStrategy:
        result.assignment = apply_rule_strategy(board, side, role.strategy);
        return result;
      case RoleBinding::Kind::kHuman: {
        const auto* history = side == Player::kBlue ? plan.blue_history : plan.orange_history;
        const auto& record = (*history)[history_index];
        result.assignment = side == Player::kBlue ? record.blue : record.orange;
        return result;
      }
      case RoleBinding::Kind::kScripted:
      case RoleBinding::Kind::kLlm:
        break;
    }
    Agent& agent = side == Player::kBlue ? *plan.blue_agent : *plan.orange_agent;
    DecisionContext context;
    context.board = &board;
    context.self = side;
    context.seed = StableHash(std::to_string(config.seed) + "|" + matchup.name + "|" +
                              std::to_string(iteration) + "|" + std::string(PlayerName(side)));
    if (role.kind == RoleBinding::Kind::kLlm) {
      context.prompt = render_bargaining_prompt(board, side, role.prompt_variant);
    }
    const int attempts = 1 + std::max(0, agent.max_retries());
    for (int attempt = 0; attempt < attempts; ++attempt) {
      ++result.attempts;
      result.raw = agent.Respond(context);
      try {
        result.assignment = parse_assignment_json(result.raw, board);
        result.failure.clear();
        return result;
      } catch (const AssignmentParseError& e) {
        result.failure = std::string(PlayerName(side)) + ": " +
                         std::string(ParseFailureName(e.failure()));
      }
    }
    return result;
  };

  std::atomic<std::size_t> issued{0};
  auto produce = [&](std::size_t j) {
    ++issued;
    const auto [m, iteration] = jobs[j];
    const Matchup& matchup = config.matchups[m];
    const Plan& plan = plans[m];
    const auto* history = plan.blue_history ? plan.blue_history : plan.orange_history;
    const std::size_t index = iteration % (history ? history->size() : boards.size());
    BargainingOutcome o{matchup.name, iteration, index,
                        history ? (*history)[index].board : boards[index]};
    const std::size_t blue_index =
        plan.blue_history ? iteration % plan.blue_history->size() : 0;
    const std::size_t orange_index =
        plan.orange_history ? iteration % plan.orange_history->size() : 0;
    RoleResult blue = play(matchup, plan, Player::kBlue, o.board, blue_index, iteration);
    RoleResult orange = play(matchup, plan, Player::kOrange, o.board, orange_index, iteration);
    o.blue = blue.assignment;
    o.orange = orange.assignment;
    o.blue_agent = plan.blue_name;
    o.orange_agent = plan.orange_name;
    o.blue_raw = blue.raw;
    o.orange_raw = orange.raw;
    o.blue_attempts = blue.attempts;
    o.orange_attempts = orange.attempts;
    o.ok = o.blue.has_value() && o.orange.has_value();
    o.failure = blue.failure;
    if (!orange.failure.empty()) o.failure += (o.failure.empty() ? "" : "; ") + orange.failure;
    o.timestamp = wall_clock ? WallTimestamp() : kFixedTimestamp;
    return o;
  };
  auto out = OpenAppend(summary.records_file);
  auto consume = [&](std::size_t, BargainingOutcome&& outcome) {
    out << outcome_to_json(outcome).dump() << '\n';
    out.flush();
    ++summary.persisted;
    if (!outcome.ok) ++summary.failed;
    if (options.limit && summary.persisted >= *options.limit) {
      summary.limited = summary.persisted < jobs.size();
      return false;
    }
    return true;
  };
  try {
    RunOrdered<BargainingOutcome>(jobs.size(), workers, produce, consume);
  } catch (const Error& e) {
    if (!AbortsRun(e.kind())) throw;
    summary.aborted = true;
    summary.abort_message = std::string(ErrorKindName(e.kind())) + ": " + e.what();
  }
  out.close();
  summary.issued = issued.load();
  summary.lost = summary.issued - summary.persisted;

  // Failures from earlier sessions count too.
  const auto outcomes = read_outcome_file(summary.records_file);
  summary.failed = 0;
  for (const auto& o : outcomes) summary.failed += o.ok ? 0 : 1;
  if (!outcomes.empty()) {
    write_report(emit_bargaining_report(outcomes, config.payoff_lost), summary.report_dir);
  }
  return summary;
}

}  // namespace focal
