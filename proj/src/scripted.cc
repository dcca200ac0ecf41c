#include "focal/scripted.h"

#include <algorithm>
#include <cmath>

#include "focal/bargaining_io.h"
#include "focal/error.h"
#include "focal/format.h"
#include "focal/rng.h"

namespace focal {
namespace {

using nlohmann::json;

// Index into `weights` drawn by inverse CDF.
std::size_t Draw(const std::vector<std::pair<std::string, double>>& weights, Rng& rng) {
  const double u = rng.UniformUnit();
  double cumulative = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    cumulative += weights[i].second;
    if (u < cumulative) return i;
  }
  // Rounding left u above the last partial sum: take the last non-zero entry.
  for (std::size_t i = weights.size(); i-- > 0;) {
    if (weights[i].second > 0.0) return i;
  }
  return weights.size() - 1;
}

Rng DrawRng(const ScriptedPolicy& policy, std::uint64_t draw_seed) {
  return Rng(StableHash(std::to_string(policy.seed) + ":" + std::to_string(draw_seed)));
}

}  // namespace

ScriptedPolicy ScriptedPolicy::FixedLabel(std::string label) {
  ScriptedPolicy p;
  p.rule = Rule::kFixedLabel;
  p.label = std::move(label);
  return p;
}

ScriptedPolicy ScriptedPolicy::FirstDisplayed() { return ScriptedPolicy{}; }

ScriptedPolicy ScriptedPolicy::Distribution(std::vector<std::pair<std::string, double>> weights,
                                            std::uint64_t seed) {
  ScriptedPolicy p;
  p.rule = Rule::kDistribution;
  p.distribution = std::move(weights);
  p.seed = seed;
  validate_policy(p);
  return p;
}

std::string ScriptedPolicy::Describe() const {
  std::string out(ScriptedRuleName(rule));
  if (rule == Rule::kFixedLabel) out += "(" + label + ")";
  if (rule == Rule::kDistribution) {
    out += "(";
    for (std::size_t i = 0; i < distribution.size(); ++i) {
      if (i > 0) out += ",";
      out += distribution[i].first + ":" + FormatNumber(distribution[i].second);
    }
    out += ";seed=" + std::to_string(seed) + ")";
  }
  return out;
}

std::string_view ScriptedRuleName(ScriptedPolicy::Rule rule) {
  switch (rule) {
    case ScriptedPolicy::Rule::kFixedLabel: return "fixed-label";
    case ScriptedPolicy::Rule::kFirstDisplayed: return "first-displayed";
    case ScriptedPolicy::Rule::kDistribution: return "distribution";
  }
  return "";
}

void validate_policy(const ScriptedPolicy& policy) {
  if (policy.rule == ScriptedPolicy::Rule::kFixedLabel && policy.label.empty()) {
    throw Error(ErrorKind::kPolicy, "fixed-label policy needs a label");
  }
  if (policy.rule != ScriptedPolicy::Rule::kDistribution) return;
  if (policy.distribution.empty()) throw Error(ErrorKind::kPolicy, "empty distribution");
  double total = 0.0;
  for (const auto& [label, p] : policy.distribution) {
    if (!std::isfinite(p) || p < 0.0) {
      throw Error(ErrorKind::kPolicy, "probability of '" + label + "' must be >= 0");
    }
    total += p;
  }
  if (std::fabs(total - 1.0) > 1e-9) {
    throw Error(ErrorKind::kPolicy,
                "distribution sums to " + FormatNumber(total) + ", expected 1");
  }
}

ScriptedPolicy policy_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("rule") || !doc["rule"].is_string()) {
    throw Error(ErrorKind::kConfig, "scripted policy needs a rule");
  }
  const std::string rule = doc["rule"].get<std::string>();
  try {
    if (rule == "fixed-label") return ScriptedPolicy::FixedLabel(doc.at("label").get<std::string>());
    if (rule == "first-displayed") return ScriptedPolicy::FirstDisplayed();
    if (rule == "distribution") {
      std::vector<std::pair<std::string, double>> weights;
      const json& dist = doc.at("distribution");
      if (dist.is_object()) {
        for (const auto& [label, p] : dist.items()) weights.emplace_back(label, p.get<double>());
      } else {
        for (const auto& item : dist) {
          weights.emplace_back(item.at("label").get<std::string>(), item.at("p").get<double>());
        }
      }
      return ScriptedPolicy::Distribution(std::move(weights), doc.value("seed", std::uint64_t{0}));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kConfig, std::string("bad scripted policy: ") + e.what());
  } catch (const Error& e) {
    throw Error(ErrorKind::kConfig, e.what());
  }
  throw Error(ErrorKind::kConfig, "unknown scripted rule '" + rule + "'");
}

std::string scripted_respond(const std::vector<std::string>& displayed_options,
                             const ScriptedPolicy& policy, std::uint64_t draw_seed) {
  validate_policy(policy);
  if (displayed_options.empty()) throw Error(ErrorKind::kPolicy, "no options displayed");
  const auto displayed = [&](const std::string& label) {
    return std::find(displayed_options.begin(), displayed_options.end(), label) !=
           displayed_options.end();
  };
  std::string choice;
  switch (policy.rule) {
    case ScriptedPolicy::Rule::kFirstDisplayed:
      choice = displayed_options.front();
      break;
    case ScriptedPolicy::Rule::kFixedLabel:
      choice = policy.label;
      break;
    case ScriptedPolicy::Rule::kDistribution: {
      for (const auto& [label, p] : policy.distribution) {
        if (!displayed(label)) {
          throw Error(ErrorKind::kPolicy, "distribution label '" + label + "' is not displayed");
        }
      }
      Rng rng = DrawRng(policy, draw_seed);
      choice = policy.distribution[Draw(policy.distribution, rng)].first;
      break;
    }
  }
  if (!displayed(choice)) {
    throw Error(ErrorKind::kPolicy, "label '" + choice + "' is not among the displayed options");
  }
  return "<answer>" + choice + "</answer>";
}

std::string scripted_respond(const BargainingBoard& board, Player /*self*/,
                             const ScriptedPolicy& policy, std::uint64_t draw_seed) {
  validate_policy(policy);
  const auto color = [](const std::string& name) {
    const auto player = ParsePlayer(name);
    if (!player) throw Error(ErrorKind::kPolicy, "'" + name + "' is not a player color");
    return *player;
  };
  Assignment assignment;
  switch (policy.rule) {
    case ScriptedPolicy::Rule::kFirstDisplayed:
      assignment = Assignment::All(board.num_discs(), Player::kBlue);
      break;
    case ScriptedPolicy::Rule::kFixedLabel:
      assignment = Assignment::All(board.num_discs(), color(policy.label));
      break;
    case ScriptedPolicy::Rule::kDistribution: {
      for (const auto& [label, p] : policy.distribution) color(label);
      Rng rng = DrawRng(policy, draw_seed);
      for (std::size_t i = 0; i < board.num_discs(); ++i) {
        assignment.attribution.push_back(color(policy.distribution[Draw(policy.distribution, rng)].first));
      }
      break;
    }
  }
  return render_assignment_answer(board, assignment);
}

}  // namespace focal
