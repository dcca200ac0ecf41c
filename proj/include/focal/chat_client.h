#ifndef FOCAL_CHAT_CLIENT_H_
#define FOCAL_CHAT_CLIENT_H_

#include <chrono>
#include <memory>
#include <mutex>
#include <optional>
#include <semaphore>
#include <string>
#include <string_view>

#include "json.hpp"

namespace focal {

enum class ReasoningEffort { kNone, kLow, kMedium, kHigh };

std::string_view ReasoningEffortName(ReasoningEffort effort);
std::optional<ReasoningEffort> ParseReasoningEffort(std::string_view name);

struct AgentConfig {
  std::string endpoint_url;  // base like http://host:8000/v1, or the full .../chat/completions
  std::string model_name;
  std::optional<double> temperature;  // unset: provider default
  ReasoningEffort reasoning_effort = ReasoningEffort::kNone;
  int max_retries = 3;
  std::chrono::milliseconds request_timeout{120'000};
  int parallelism = 1;
  std::string api_key_env;  // name of the variable holding the bearer token
  std::string audit_log;    // JSON-lines mirror of every request/response, if set
  std::chrono::milliseconds initial_backoff{500};
  double backoff_factor = 2.0;
};

// Throws kConfig on an invalid config.
void validate_agent_config(const AgentConfig& config);
// Reads the llm fields of an agent binding; unknown fields are ignored.
AgentConfig agent_config_from_json(const nlohmann::json& doc);

// Single-turn chat-completion client. Shareable across threads; at most
// `parallelism` requests are in flight at once.
class ChatClient {
 public:
  explicit ChatClient(AgentConfig config);

  const AgentConfig& config() const { return config_; }

  // Sends `prompt` as the only user message and returns the assistant text
  // verbatim. Connection failures, 429 and 5xx are retried with exponential
  // backoff up to max_retries times. Throws kTransport when the endpoint could
  // not be reached on the last attempt and kProvider on any other failure.
  std::string complete_chat(const std::string& prompt);

  // The JSON body sent for `prompt`.
  nlohmann::json RequestBody(const std::string& prompt) const;

 private:
  void Audit(const nlohmann::json& entry);

  AgentConfig config_;
  std::string scheme_host_port_;
  std::string path_;
  std::counting_semaphore<1024> slots_;
  std::mutex audit_mutex_;
};

// One-off convenience wrapper around ChatClient.
std::string complete_chat(const std::string& prompt, const AgentConfig& config);

}  // namespace focal

#endif  // FOCAL_CHAT_CLIENT_H_
