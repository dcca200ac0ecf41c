#include "focal/chat_client.h"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <thread>

#include "focal/error.h"
#include "httplib.h"

namespace focal {
namespace {

using nlohmann::json;

constexpr std::string_view kCompletionsPath = "/chat/completions";
constexpr std::size_t kBodyExcerpt = 200;

bool Transient(int status) { return status == 429 || status >= 500; }

}  // namespace

std::string_view ReasoningEffortName(ReasoningEffort effort) {
  switch (effort) {
    case ReasoningEffort::kNone: return "none";
    case ReasoningEffort::kLow: return "low";
    case ReasoningEffort::kMedium: return "medium";
    case ReasoningEffort::kHigh: return "high";
  }
  return "none";
}

std::optional<ReasoningEffort> ParseReasoningEffort(std::string_view name) {
  for (auto e : {ReasoningEffort::kNone, ReasoningEffort::kLow, ReasoningEffort::kMedium,
                 ReasoningEffort::kHigh}) {
    if (ReasoningEffortName(e) == name) return e;
  }
  return std::nullopt;
}

void validate_agent_config(const AgentConfig& config) {
  if (config.endpoint_url.empty()) throw Error(ErrorKind::kConfig, "agent needs an endpoint_url");
  if (config.model_name.empty()) throw Error(ErrorKind::kConfig, "agent needs a model name");
  if (config.parallelism < 1 || config.parallelism > 1024) {
    throw Error(ErrorKind::kConfig, "parallelism must be in [1, 1024]");
  }
  if (config.max_retries < 0) throw Error(ErrorKind::kConfig, "max_retries must be >= 0");
  if (config.temperature && !(*config.temperature >= 0.0)) {
    throw Error(ErrorKind::kConfig, "temperature must be >= 0");
  }
  if (config.request_timeout.count() <= 0) {
    throw Error(ErrorKind::kConfig, "request_timeout must be positive");
  }
  if (config.backoff_factor < 1.0 || config.initial_backoff.count() < 0) {
    throw Error(ErrorKind::kConfig, "backoff must be non-negative and non-shrinking");
  }
}

AgentConfig agent_config_from_json(const json& doc) {
  AgentConfig c;
  try {
    c.endpoint_url = doc.value("endpoint_url", std::string());
    c.model_name = doc.value("model", doc.value("model_name", std::string()));
    if (doc.contains("temperature") && !doc["temperature"].is_null()) {
      c.temperature = doc["temperature"].get<double>();
    }
    const auto effort = ParseReasoningEffort(doc.value("reasoning_effort", std::string("none")));
    if (!effort) throw Error(ErrorKind::kConfig, "unknown reasoning_effort");
    c.reasoning_effort = *effort;
    c.max_retries = doc.value("max_retries", c.max_retries);
    c.request_timeout = std::chrono::milliseconds(
        doc.value("request_timeout_ms", static_cast<std::int64_t>(c.request_timeout.count())));
    c.parallelism = doc.value("parallelism", c.parallelism);
    c.api_key_env = doc.value("api_key_env", std::string());
    c.audit_log = doc.value("audit_log", std::string());
    c.initial_backoff = std::chrono::milliseconds(
        doc.value("initial_backoff_ms", static_cast<std::int64_t>(c.initial_backoff.count())));
    c.backoff_factor = doc.value("backoff_factor", c.backoff_factor);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kConfig, std::string("bad agent field: ") + e.what());
  }
  validate_agent_config(c);
  return c;
}

ChatClient::ChatClient(AgentConfig config)
    : config_(std::move(config)), slots_(std::clamp(config_.parallelism, 1, 1024)) {
  validate_agent_config(config_);

  static const std::regex kUrl(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch match;
  if (!std::regex_match(config_.endpoint_url, match, kUrl)) {
    throw Error(ErrorKind::kConfig, "endpoint_url must look like http[s]://host[:port][/path]");
  }
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
  if (config_.endpoint_url.rfind("https://", 0) == 0) {
    throw Error(ErrorKind::kConfig, "built without TLS support; use an http:// endpoint");
  }
#endif
  scheme_host_port_ = match[1].str();
  path_ = match[2].matched ? match[2].str() : "";
  while (!path_.empty() && path_.back() == '/') path_.pop_back();
  if (path_.size() < kCompletionsPath.size() ||
      path_.compare(path_.size() - kCompletionsPath.size(), kCompletionsPath.size(),
                    kCompletionsPath) != 0) {
    path_ += kCompletionsPath;
  }
}

json ChatClient::RequestBody(const std::string& prompt) const {
  json body = {{"model", config_.model_name},
               {"messages", json::array({{{"role", "user"}, {"content", prompt}}})}};
  if (config_.temperature) body["temperature"] = *config_.temperature;
  if (config_.reasoning_effort != ReasoningEffort::kNone) {
    body["reasoning_effort"] = ReasoningEffortName(config_.reasoning_effort);
  }
  return body;
}

void ChatClient::Audit(const json& entry) {
  if (config_.audit_log.empty()) return;
  std::lock_guard<std::mutex> lock(audit_mutex_);
  std::ofstream out(config_.audit_log, std::ios::app);
  out << entry.dump() << '\n';
}

std::string ChatClient::complete_chat(const std::string& prompt) {
  const json body = RequestBody(prompt);
  const std::string payload = body.dump();
  httplib::Headers headers;
  if (!config_.api_key_env.empty()) {
    if (const char* key = std::getenv(config_.api_key_env.c_str()); key && *key) {
      headers.emplace("Authorization", std::string("Bearer ") + key);
    }
  }

  auto delay = config_.initial_backoff;
  std::string last_failure;
  bool last_was_transport = false;
  for (int attempt = 0; attempt <= config_.max_retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(delay);
      delay = std::chrono::milliseconds(
          static_cast<std::int64_t>(static_cast<double>(delay.count()) * config_.backoff_factor));
    }
    httplib::Result result;
    {
      slots_.acquire();
      httplib::Client client(scheme_host_port_);
      const auto seconds = std::chrono::duration_cast<std::chrono::seconds>(config_.request_timeout);
      const auto micros = std::chrono::duration_cast<std::chrono::microseconds>(
          config_.request_timeout - seconds);
      client.set_connection_timeout(seconds.count(), micros.count());
      client.set_read_timeout(seconds.count(), micros.count());
      client.set_write_timeout(seconds.count(), micros.count());
      result = client.Post(path_, headers, payload, "application/json");
      slots_.release();
    }

    if (!result) {
      last_was_transport = true;
      last_failure = "request to " + scheme_host_port_ + path_ + " failed: " +
                     httplib::to_string(result.error());
      Audit({{"request", body}, {"attempt", attempt}, {"error", last_failure}});
      continue;
    }
    const int status = result->status;
    Audit({{"request", body}, {"attempt", attempt}, {"status", status}, {"response", result->body}});
    const std::string excerpt = result->body.substr(0, kBodyExcerpt);
    if (status < 200 || status >= 300) {
      last_was_transport = false;
      last_failure = "provider returned status " + std::to_string(status) + ": " + excerpt;
      if (Transient(status)) continue;
      throw Error(ErrorKind::kProvider, last_failure);
    }
    const json reply = json::parse(result->body, nullptr, false);
    if (reply.is_discarded() || !reply.contains("choices") || !reply["choices"].is_array() ||
        reply["choices"].empty()) {
      throw Error(ErrorKind::kProvider, "malformed completion response: " + excerpt);
    }
    const json& message = reply["choices"][0].value("message", json::object());
    if (!message.contains("content") || !message["content"].is_string()) {
      throw Error(ErrorKind::kProvider, "completion has no text content: " + excerpt);
    }
    return message["content"].get<std::string>();
  }
  throw Error(last_was_transport ? ErrorKind::kTransport : ErrorKind::kProvider,
              last_failure + " (after " + std::to_string(config_.max_retries + 1) +
                  " attempts)");
}

std::string complete_chat(const std::string& prompt, const AgentConfig& config) {
  ChatClient client(config);
  return client.complete_chat(prompt);
}

}  // namespace focal
