#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <thread>

#include "doctest.h"
#include "fixtures.h"
#include "focal/agent.h"
#include "focal/bargaining_io.h"
#include "focal/chat_client.h"
#include "focal/error.h"
#include "focal/scripted.h"
#include "mock_server.h"

namespace focal {
namespace {

using nlohmann::json;
using testing::Completion;
using testing::MockServer;

ErrorKind KindOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::kConfig;
}

AgentConfig FastConfig(const std::string& url) {
  AgentConfig config;
  config.endpoint_url = url;
  config.model_name = "mock-model";
  config.initial_backoff = std::chrono::milliseconds(1);
  config.request_timeout = std::chrono::milliseconds(5000);
  return config;
}

TEST_CASE("complete_chat sends the prompt verbatim and returns the text") {
  std::mutex mu;
  json seen;
  std::string auth;
  MockServer server([&](const httplib::Request& req, httplib::Response& res) {
    std::lock_guard<std::mutex> lock(mu);
    seen = json::parse(req.body);
    auth = req.get_header_value("Authorization");
    res.set_content(Completion(seen["messages"][0]["content"].get<std::string>()).dump(),
                    "application/json");
  });
  const std::string prompt = render_bargaining_prompt(
      fixtures::GameOne(), Player::kBlue, BargainingPromptVariant::kAllFeatures) +
      "\n\tunicode: \xc3\xa9 \"quoted\"";
  auto config = FastConfig(server.base_url());
  config.temperature = 0.7;
  config.reasoning_effort = ReasoningEffort::kHigh;
  ::setenv("FOCAL_TEST_KEY", "sekret", 1);
  config.api_key_env = "FOCAL_TEST_KEY";
  CHECK(complete_chat(prompt, config) == prompt);
  CHECK(seen["model"] == "mock-model");
  CHECK(seen["messages"].size() == 1);
  CHECK(seen["messages"][0]["role"] == "user");
  CHECK(seen["messages"][0]["content"].get<std::string>() == prompt);
  CHECK(seen["temperature"] == 0.7);
  CHECK(seen["reasoning_effort"] == "high");
  CHECK(auth == "Bearer sekret");

  // Without optional fields the body carries only model and messages.
  const auto bare = ChatClient(FastConfig(server.base_url())).RequestBody("hi");
  CHECK(bare.size() == 2);
}

TEST_CASE("5xx is retried, then succeeds") {
  std::atomic<int> calls{0};
  MockServer server([&](const httplib::Request&, httplib::Response& res) {
    if (++calls <= 2) {
      res.status = 500;
      res.set_content("boom", "text/plain");
      return;
    }
    res.set_content(Completion("<answer>ok</answer>").dump(), "application/json");
  });
  CHECK(complete_chat("x", FastConfig(server.base_url())) == "<answer>ok</answer>");
  CHECK(calls == 3);
}

TEST_CASE("exhausted retries and non-retryable statuses") {
  std::atomic<int> calls{0};
  MockServer always_busy([&](const httplib::Request&, httplib::Response& res) {
    ++calls;
    res.status = 503;
  });
  auto config = FastConfig(always_busy.base_url());
  config.max_retries = 2;
  CHECK(KindOf([&] { complete_chat("x", config); }) == ErrorKind::kProvider);
  CHECK(calls == 3);

  std::atomic<int> bad_calls{0};
  MockServer bad_request([&](const httplib::Request&, httplib::Response& res) {
    ++bad_calls;
    res.status = 400;
  });
  CHECK(KindOf([&] { complete_chat("x", FastConfig(bad_request.base_url())); }) ==
        ErrorKind::kProvider);
  CHECK(bad_calls == 1);

  MockServer garbage([&](const httplib::Request&, httplib::Response& res) {
    res.set_content("{\"choices\": []}", "application/json");
  });
  CHECK(KindOf([&] { complete_chat("x", FastConfig(garbage.base_url())); }) ==
        ErrorKind::kProvider);
}

TEST_CASE("unreachable endpoint is a transport error") {
  auto config = FastConfig("http://127.0.0.1:1/v1");
  config.max_retries = 1;
  CHECK(KindOf([&] { complete_chat("x", config); }) == ErrorKind::kTransport);
}

TEST_CASE("parallelism caps requests in flight") {
  std::atomic<int> in_flight{0};
  std::atomic<int> peak{0};
  MockServer server([&](const httplib::Request&, httplib::Response& res) {
    const int now = ++in_flight;
    int prev = peak.load();
    while (now > prev && !peak.compare_exchange_weak(prev, now)) {
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(40));
    --in_flight;
    res.set_content(Completion("ok").dump(), "application/json");
  });
  auto config = FastConfig(server.base_url());
  config.parallelism = 2;
  ChatClient client(config);
  std::vector<std::thread> threads;
  for (int i = 0; i < 6; ++i) threads.emplace_back([&] { client.complete_chat("x"); });
  for (auto& t : threads) t.join();
  CHECK(peak.load() == 2);
}

TEST_CASE("audit log mirrors each exchange") {
  MockServer server([&](const httplib::Request&, httplib::Response& res) {
    res.set_content(Completion("logged").dump(), "application/json");
  });
  const std::string path =
      (std::filesystem::temp_directory_path() / "focal_agents_test_audit.jsonl").string();
  std::remove(path.c_str());
  auto config = FastConfig(server.base_url());
  config.audit_log = path;
  complete_chat("first", config);
  complete_chat("second", config);
  std::ifstream in(path);
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) {
    CHECK(json::parse(line).is_object());
    ++lines;
  }
  CHECK(lines == 2);
}

TEST_CASE("agent config validation") {
  CHECK(KindOf([] { validate_agent_config(AgentConfig{}); }) == ErrorKind::kConfig);
  auto config = FastConfig("http://localhost:8000/v1");
  config.parallelism = 0;
  CHECK(KindOf([&] { validate_agent_config(config); }) == ErrorKind::kConfig);
  const auto parsed = agent_config_from_json(
      {{"endpoint_url", "http://h:1/v1"}, {"model", "m"}, {"parallelism", 4},
       {"reasoning_effort", "low"}, {"request_timeout_ms", 10}});
  CHECK(parsed.model_name == "m");
  CHECK(parsed.parallelism == 4);
  CHECK(parsed.reasoning_effort == ReasoningEffort::kLow);
  CHECK(parsed.request_timeout == std::chrono::milliseconds(10));
}

TEST_CASE("scripted task responses") {
  const std::vector<std::string> shown = {"b", "a", "c"};
  CHECK(scripted_respond(shown, ScriptedPolicy::FirstDisplayed(), 1) == "<answer>b</answer>");
  CHECK(scripted_respond(shown, ScriptedPolicy::FixedLabel("c"), 1) == "<answer>c</answer>");
  CHECK(KindOf([&] { scripted_respond(shown, ScriptedPolicy::FixedLabel("z"), 1); }) ==
        ErrorKind::kPolicy);
  CHECK(KindOf([] { validate_policy(ScriptedPolicy::Distribution({{"a", 0.5}}, 1)); }) ==
        ErrorKind::kPolicy);

  const auto policy = ScriptedPolicy::Distribution({{"a", 0.25}, {"b", 0.75}, {"c", 0.0}}, 9);
  std::map<std::string, int> counts;
  for (std::uint64_t seed = 0; seed < 20000; ++seed) {
    const auto reply = scripted_respond(shown, policy, seed);
    CHECK(reply == scripted_respond(shown, policy, seed));
    ++counts[reply];
  }
  CHECK(counts.count("<answer>c</answer>") == 0);
  CHECK(std::abs(counts["<answer>a</answer>"] / 20000.0 - 0.25) < 0.02);
}

TEST_CASE("scripted board responses parse back") {
  const auto board = fixtures::GameOne();
  CHECK(parse_assignment_json(
            scripted_respond(board, Player::kOrange, ScriptedPolicy::FirstDisplayed(), 3),
            board) == Assignment::All(5, Player::kBlue));
  CHECK(parse_assignment_json(
            scripted_respond(board, Player::kBlue, ScriptedPolicy::FixedLabel("yellow"), 3),
            board) == Assignment::All(5, Player::kOrange));
  const auto mixed = ScriptedPolicy::Distribution({{"blue", 0.5}, {"yellow", 0.5}}, 4);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    CHECK_NOTHROW(parse_assignment_json(scripted_respond(board, Player::kBlue, mixed, seed),
                                        board));
  }
}

TEST_CASE("make_agent") {
  auto scripted = make_agent({{"type", "scripted"},
                              {"policy", {{"rule", "fixed-label"}, {"label", "a"}}}});
  DecisionContext ctx;
  ctx.displayed_options = {"b", "a"};
  CHECK(scripted->Respond(ctx) == "<answer>a</answer>");
  CHECK(!scripted->remote());
  auto llm = make_agent({{"type", "llm"}, {"endpoint_url", "http://h:1/v1"}, {"model", "m"},
                         {"parallelism", 3}});
  CHECK(llm->remote());
  CHECK(llm->parallelism() == 3);
  CHECK(KindOf([] { make_agent({{"type", "oracle"}}); }) == ErrorKind::kConfig);
}

}  // namespace
}  // namespace focal
