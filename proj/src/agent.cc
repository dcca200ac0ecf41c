#include "focal/agent.h"

#include "focal/error.h"

namespace focal {

ScriptedAgent::ScriptedAgent(ScriptedPolicy policy) : policy_(std::move(policy)) {
  validate_policy(policy_);
}

std::string ScriptedAgent::Respond(const DecisionContext& context) {
  if (context.board != nullptr) {
    return scripted_respond(*context.board, context.self, policy_, context.seed);
  }
  return scripted_respond(context.displayed_options, policy_, context.seed);
}

std::unique_ptr<Agent> make_agent(const nlohmann::json& binding) {
  if (!binding.is_object() || !binding.contains("type") || !binding["type"].is_string()) {
    throw Error(ErrorKind::kConfig, "agent binding needs a type");
  }
  const std::string type = binding["type"].get<std::string>();
  if (type == "scripted") {
    if (!binding.contains("policy")) throw Error(ErrorKind::kConfig, "scripted agent needs a policy");
    return std::make_unique<ScriptedAgent>(policy_from_json(binding["policy"]));
  }
  if (type == "llm") return std::make_unique<LlmAgent>(agent_config_from_json(binding));
  throw Error(ErrorKind::kConfig, "unknown agent type '" + type + "'");
}

}  // namespace focal
