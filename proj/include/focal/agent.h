#ifndef FOCAL_AGENT_H_
#define FOCAL_AGENT_H_

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "focal/bargaining.h"
#include "focal/chat_client.h"
#include "focal/scripted.h"
#include "json.hpp"

namespace focal {

// Everything an agent may look at for one decision. Task decisions fill
// displayed_options; board decisions fill board and self.
struct DecisionContext {
  std::string prompt;
  std::vector<std::string> displayed_options;
  const BargainingBoard* board = nullptr;
  Player self = Player::kBlue;
  std::uint64_t seed = 0;
};

class Agent {
 public:
  virtual ~Agent() = default;

  virtual std::string Respond(const DecisionContext& context) = 0;
  virtual std::string Describe() const = 0;
  virtual int parallelism() const { return 1; }
  virtual bool remote() const { return false; }
  virtual int max_retries() const { return 0; }
};

class ScriptedAgent : public Agent {
 public:
  explicit ScriptedAgent(ScriptedPolicy policy);

  std::string Respond(const DecisionContext& context) override;
  std::string Describe() const override { return "scripted:" + policy_.Describe(); }

 private:
  ScriptedPolicy policy_;
};

class LlmAgent : public Agent {
 public:
  explicit LlmAgent(AgentConfig config) : client_(std::move(config)) {}

  std::string Respond(const DecisionContext& context) override {
    return client_.complete_chat(context.prompt);
  }
  std::string Describe() const override { return "llm:" + client_.config().model_name; }
  int parallelism() const override { return client_.config().parallelism; }
  bool remote() const override { return true; }
  int max_retries() const override { return client_.config().max_retries; }

 private:
  ChatClient client_;
};

// {"type": "scripted", "policy": {...}} or {"type": "llm", endpoint_url, model, ...}.
// Throws kConfig.
std::unique_ptr<Agent> make_agent(const nlohmann::json& binding);

}  // namespace focal

#endif  // FOCAL_AGENT_H_
