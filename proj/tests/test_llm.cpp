#include <atomic>
#include <cstdlib>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "doctest.h"
#include "httplib.h"
#include "json.hpp"
#include "uavisac/llm/backend.hpp"
#include "uavisac/llm/operator.hpp"
#include "uavisac/llm/prompt.hpp"
#include "uavisac/moead/algorithm.hpp"
#include "uavisac/rng.hpp"
#include "uavisac/strfmt.hpp"

using namespace uavisac;

namespace {

std::size_t count_occurrences(const std::string& text,
                              const std::string& needle) {
  std::size_t n = 0, pos = 0;
  while ((pos = text.find(needle, pos)) != std::string::npos) {
    ++n;
    pos += needle.size();
  }
  return n;
}

llm::PromptContext example_context() {
  llm::PromptContext ctx;
  ctx.generation = 3;
  ctx.subproblem = 7;
  ctx.weight = {0.25, 0.75};
  ctx.reference = {-70.5, 1.25};
  ctx.dim = 8;
  ctx.num_offspring = 2;
  std::mt19937_64 gen(100);
  for (int p = 0; p < 3; ++p) {
    moead::ParentInfo info;
    info.genes.resize(8);
    for (double& g : info.genes) g = rng::uniform01(gen);
    info.fitness = 0.123456789 + 0.1 * p;
    ctx.parents.push_back(std::move(info));
  }
  return ctx;
}

// Scripted backend for exercising the retry/fallback paths.
struct ScriptedBackend final : llm::ChatBackend {
  std::vector<std::string> replies;  // empty string = throw TransportError
  std::size_t cursor = 0;

  std::string complete(const std::string&, std::mt19937_64&) override {
    const std::string r =
        cursor < replies.size() ? replies[cursor] : std::string();
    ++cursor;
    if (r.empty()) throw llm::TransportError("scripted failure");
    return r;
  }
};

}  // namespace

TEST_CASE("the rendered prompt carries all three sections and the numbers") {
  const auto ctx = example_context();
  const std::string prompt = llm::build_prompt(ctx);

  CHECK(prompt.find("Problem description:") != std::string::npos);
  CHECK(prompt.find("In-context examples:") != std::string::npos);
  CHECK(prompt.find("Task instructions:") != std::string::npos);

  CHECK(prompt.find("Propose 2 new solution vectors") != std::string::npos);
  CHECK(prompt.find("contain exactly 8 comma-separated") != std::string::npos);
  CHECK(prompt.find("w1 = 0.25") != std::string::npos);
  CHECK(prompt.find("w2 = 0.75") != std::string::npos);
  CHECK(prompt.find("z1 = -70.5") != std::string::npos);
  CHECK(prompt.find("z2 = 1.25") != std::string::npos);

  // One example line per parent, best first, genes at 4 decimals and the
  // fitness at 6 significant digits.
  CHECK(count_occurrences(prompt, "point: <") == 3);
  CHECK(prompt.find("fitness: <0.123457>") != std::string::npos);
  const std::string first_gene = strfmt::fixed(ctx.parents[0].genes[0], 4);
  CHECK(prompt.find("point: <" + first_gene) != std::string::npos);
  // Examples appear in the order given (already best-first).
  CHECK(prompt.find("fitness: <0.123457>") <
        prompt.find("fitness: <0.223457>"));

  // All placeholders resolved.
  CHECK(prompt.find('{') == std::string::npos);
  CHECK(prompt.find('}') == std::string::npos);
}

TEST_CASE("the prompt renders even without in-context examples") {
  auto ctx = example_context();
  ctx.parents.clear();
  const std::string prompt = llm::build_prompt(ctx);
  CHECK(count_occurrences(prompt, "point: <") == 0);
  CHECK(prompt.find("Task instructions:") != std::string::npos);
}

TEST_CASE("the system role and template version are non-empty constants") {
  CHECK(!llm::system_role().empty());
  CHECK(llm::system_role().back() != '\n');
  CHECK(llm::prompt_template_version() == "v1");
}

TEST_CASE("reply parsing accepts exactly-dimensioned numeric lines") {
  SUBCASE("plain comma lists") {
    const auto v = llm::parse_response("0.1, 0.2\n0.3, 0.4\n", 5, 2);
    REQUIRE(v.size() == 2);
    CHECK(v[0] == DecisionVector{0.1, 0.2});
    CHECK(v[1] == DecisionVector{0.3, 0.4});
  }
  SUBCASE("out-of-range components clamp into the cube") {
    const auto v = llm::parse_response("1.5, -0.25", 1, 2);
    CHECK(v[0] == DecisionVector{1.0, 0.0});
  }
  SUBCASE("scientific notation is fine") {
    const auto v = llm::parse_response("5e-1, 2.5e-1", 1, 2);
    CHECK(v[0] == DecisionVector{0.5, 0.25});
  }
  SUBCASE("surplus lines beyond the request are ignored") {
    const auto v = llm::parse_response(
        "0.1, 0.1\n0.2, 0.2\n0.3, 0.3\n0.4, 0.4\n", 2, 2);
    REQUIRE(v.size() == 2);
    CHECK(v[1] == DecisionVector{0.2, 0.2});
  }
  SUBCASE("garbage lines are skipped, good ones kept") {
    const auto v = llm::parse_response(
        "I suggest the following:\nnot numbers\n0.7, 0.9\n", 2, 2);
    REQUIRE(v.size() == 1);
    CHECK(v[0] == DecisionVector{0.7, 0.9});
  }
  SUBCASE("prose with stray digits fails the exact-count rule") {
    // "2" in the sentence makes three numbers on the line, not two.
    CHECK_THROWS_AS(
        llm::parse_response("Here are 2 values: 0.3 and 0.4", 1, 2),
        llm::ParseFailure);
  }
  SUBCASE("overflowing literals invalidate their whole line") {
    CHECK_THROWS_AS(llm::parse_response("1e999, 0.5", 1, 2),
                    llm::ParseFailure);
  }
  SUBCASE("word-form specials act as separators, not numbers") {
    CHECK_THROWS_AS(llm::parse_response("inf, 0.5", 1, 2), llm::ParseFailure);
  }
  SUBCASE("malformed tokens disqualify the line") {
    CHECK_THROWS_AS(llm::parse_response("0.5.3, 0.2", 1, 2),
                    llm::ParseFailure);
  }
  SUBCASE("empty and pure-prose replies throw") {
    CHECK_THROWS_AS(llm::parse_response("", 1, 2), llm::ParseFailure);
    CHECK_THROWS_AS(llm::parse_response("no numbers here at all", 1, 2),
                    llm::ParseFailure);
  }
}

TEST_CASE("offspring generation consumes replies, retries and falls back") {
  const auto ctx = example_context();

  SUBCASE("healthy reply on the first attempt") {
    ScriptedBackend backend;
    backend.replies = {
        "0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8\n"
        "0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.2, 0.1\n"};
    std::mt19937_64 rng(1);
    const auto res = llm::generate(ctx, backend, 3, {}, rng);
    CHECK(res.transcript.outcome == "ok");
    CHECK(res.transcript.attempts == 1);
    CHECK(res.transcript.parsed == 2);
    CHECK(!res.transcript.fallback);
    REQUIRE(res.offspring.size() == 2);
    CHECK(res.offspring[0][0] == 0.1);
    CHECK(res.offspring[1][0] == 0.8);
  }

  SUBCASE("unparseable replies burn all attempts, then fall back") {
    ScriptedBackend backend;
    backend.replies = {"junk", "more junk", "still junk"};
    std::mt19937_64 rng(2);
    const auto res = llm::generate(ctx, backend, 3, {}, rng);
    CHECK(res.transcript.outcome == "parse_failure");
    CHECK(res.transcript.attempts == 3);
    CHECK(res.transcript.fallback);
    REQUIRE(res.offspring.size() == 2);
    for (const auto& child : res.offspring) {
      REQUIRE(child.size() == 8);
      for (double g : child) CHECK((g >= 0.0 && g <= 1.0));
    }
  }

  SUBCASE("a bad attempt followed by a good one recovers") {
    ScriptedBackend backend;
    backend.replies = {"junk",
                       "0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8\n"
                       "0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.2, 0.1\n"};
    std::mt19937_64 rng(3);
    const auto res = llm::generate(ctx, backend, 3, {}, rng);
    CHECK(res.transcript.outcome == "ok");
    CHECK(res.transcript.attempts == 2);
    CHECK(!res.transcript.fallback);
  }

  SUBCASE("a short but usable reply is padded classically") {
    ScriptedBackend backend;
    backend.replies = {"0.25, 0.5, 0.25, 0.5, 0.25, 0.5, 0.25, 0.5\n"};
    std::mt19937_64 rng(4);
    const auto res = llm::generate(ctx, backend, 3, {}, rng);
    CHECK(res.transcript.outcome == "partial");
    CHECK(res.transcript.parsed == 1);
    CHECK(!res.transcript.fallback);
    REQUIRE(res.offspring.size() == 2);
    CHECK(res.offspring[0] ==
          DecisionVector{0.25, 0.5, 0.25, 0.5, 0.25, 0.5, 0.25, 0.5});
    for (double g : res.offspring[1]) CHECK((g >= 0.0 && g <= 1.0));
  }

  SUBCASE("transport errors exhaust the attempts the same way") {
    ScriptedBackend backend;  // empty script: every call throws
    std::mt19937_64 rng(5);
    const auto res = llm::generate(ctx, backend, 3, {}, rng);
    CHECK(res.transcript.outcome == "transport_error");
    CHECK(res.transcript.attempts == 3);
    CHECK(res.transcript.fallback);
    CHECK(res.offspring.size() == 2);
  }

  SUBCASE("zero retries still makes one attempt") {
    ScriptedBackend backend;
    backend.replies = {"0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8\n"
                       "0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.2, 0.1\n"};
    std::mt19937_64 rng(6);
    const auto res = llm::generate(ctx, backend, 0, {}, rng);
    CHECK(res.transcript.attempts == 1);
    CHECK(res.transcript.outcome == "ok");
  }

  SUBCASE("no parents means the fallback samples uniformly") {
    auto orphan = ctx;
    orphan.parents.clear();
    ScriptedBackend backend;
    std::mt19937_64 rng(7);
    const auto res = llm::generate(orphan, backend, 2, {}, rng);
    CHECK(res.transcript.fallback);
    REQUIRE(res.offspring.size() == 2);
    for (const auto& child : res.offspring) CHECK(child.size() == 8);
  }
}

TEST_CASE("the mock backend is deterministic and speaks the reply format") {
  const auto ctx = example_context();
  const std::string prompt = llm::build_prompt(ctx);
  llm::MockBackend mock;

  std::mt19937_64 a(50), b(50), c(51);
  const std::string ra = mock.complete(prompt, a);
  const std::string rb = mock.complete(prompt, b);
  const std::string rc = mock.complete(prompt, c);
  CHECK(ra == rb);
  CHECK(ra != rc);

  // Round trip: the reply must parse into exactly the requested batch.
  std::mt19937_64 d(52);
  const auto batch =
      llm::parse_response(mock.complete(prompt, d), ctx.num_offspring, ctx.dim);
  REQUIRE(batch.size() == 2);
  for (const auto& child : batch) {
    REQUIRE(child.size() == 8);
    for (double g : child) CHECK((g >= 0.0 && g <= 1.0));
  }

  // Without examples the mock still answers with the right shape.
  auto orphan = ctx;
  orphan.parents.clear();
  std::mt19937_64 e(53);
  const auto uniform_batch = llm::parse_response(
      mock.complete(llm::build_prompt(orphan), e), 2, 8);
  CHECK(uniform_batch.size() == 2);
}

TEST_CASE("the model-backed operator keeps count and reports transcripts") {
  const auto ctx = example_context();

  SUBCASE("every healthy call is counted, none as fallback") {
    llm::MockBackend mock;
    std::vector<llm::Transcript> seen;
    llm::LlmOperator op(mock, 3, {},
                        [&](const llm::Transcript& t) { seen.push_back(t); });
    std::mt19937_64 rng(60);
    const auto kids = op.propose(ctx, rng);
    CHECK(kids.size() == 2);
    CHECK(op.calls() == 1);
    CHECK(op.fallbacks() == 0);
    REQUIRE(seen.size() == 1);
    CHECK(seen[0].generation == 3);
    CHECK(seen[0].subproblem == 7);
    CHECK(seen[0].outcome == "ok");
    CHECK(!seen[0].prompt.empty());
    CHECK(!seen[0].response.empty());
  }

  SUBCASE("garbage backends raise the fallback counter, never abort") {
    ScriptedBackend backend;  // always throws
    llm::LlmOperator op(backend, 2, {}, {});
    std::mt19937_64 rng(61);
    for (int i = 0; i < 5; ++i) {
      const auto kids = op.propose(ctx, rng);
      CHECK(kids.size() == 2);
    }
    CHECK(op.calls() == 5);
    CHECK(op.fallbacks() == 5);
  }
}

namespace {

ObjectiveVector llm_toy_objective(const DecisionVector& x) {
  return {x[0] * x[0], (x[0] - 1.0) * (x[0] - 1.0)};
}

}  // namespace

TEST_CASE("a full optimizer loop over the mock emits one transcript per call") {
  moead::AlgoParams params;
  params.population = 6;
  params.neighbor_size = 3;
  params.num_parents = 3;
  params.offspring_per_call = 2;
  params.iterations = 3;
  params.seed = 2024;

  auto run_once = [&](std::vector<llm::Transcript>& sink) {
    llm::MockBackend mock;
    llm::LlmOperator op(mock, 3, {},
                        [&](const llm::Transcript& t) { sink.push_back(t); });
    return moead::run(2, llm_toy_objective, op, params);
  };

  std::vector<llm::Transcript> ta, tb;
  const auto a = run_once(ta);
  const auto b = run_once(tb);

  CHECK(ta.size() == 3u * 6u);
  for (const auto& t : ta) {
    CHECK(t.outcome == "ok");
    CHECK(!t.fallback);
  }

  // Determinism of the whole loop, mock included.
  REQUIRE(a.archive.size() == b.archive.size());
  for (std::size_t i = 0; i < a.archive.size(); ++i) {
    CHECK(a.archive.entries()[i].genes == b.archive.entries()[i].genes);
    CHECK(same_objectives(a.archive.entries()[i].objectives,
                          b.archive.entries()[i].objectives));
  }
  REQUIRE(ta.size() == tb.size());
  for (std::size_t i = 0; i < ta.size(); ++i) {
    CHECK(ta[i].prompt == tb[i].prompt);
    CHECK(ta[i].response == tb[i].response);
  }
}

// ---- live HTTP path against a local stub endpoint --------------------------

namespace {

struct StubServer {
  httplib::Server srv;
  int port = 0;
  std::thread worker;

  explicit StubServer(
      std::function<void(const httplib::Request&, httplib::Response&)> h) {
    srv.Post("/v1/chat/completions", std::move(h));
    port = srv.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    worker = std::thread([this] { srv.listen_after_bind(); });
    srv.wait_until_ready();
  }
  ~StubServer() {
    srv.stop();
    worker.join();
  }

  llm::LlmConfig config() const {
    llm::LlmConfig cfg;
    cfg.endpoint =
        "http://127.0.0.1:" + std::to_string(port) + "/v1/chat/completions";
    cfg.api_key_env = "UAVISAC_TEST_KEY";
    cfg.max_retries = 2;
    cfg.backoff_base_ms = 10;  // keep retry tests fast
    cfg.timeout_s = 5.0;
    return cfg;
  }
};

std::string chat_reply(const std::string& content) {
  nlohmann::json message;
  message["content"] = content;
  nlohmann::json choice;
  choice["message"] = message;
  nlohmann::json root;
  root["choices"] = nlohmann::json::array({choice});
  return root.dump();
}

}  // namespace

TEST_CASE("the HTTP backend requires the key in the environment") {
  unsetenv("UAVISAC_MISSING_KEY");
  llm::LlmConfig cfg;
  cfg.api_key_env = "UAVISAC_MISSING_KEY";
  CHECK_THROWS_AS(llm::HttpBackend{cfg}, std::runtime_error);
}

TEST_CASE("the HTTP backend speaks the chat-completions protocol") {
  setenv("UAVISAC_TEST_KEY", "testkey-123", 1);

  std::string seen_auth, seen_prompt, seen_system, seen_model;
  StubServer server([&](const httplib::Request& req, httplib::Response& res) {
    seen_auth = req.get_header_value("Authorization");
    const auto body = nlohmann::json::parse(req.body);
    seen_model = body.at("model").get<std::string>();
    seen_system = body.at("messages").at(0).at("content").get<std::string>();
    seen_prompt = body.at("messages").at(1).at("content").get<std::string>();
    res.set_content(chat_reply("0.1, 0.9"), "application/json");
  });

  llm::HttpBackend backend(server.config());
  std::mt19937_64 rng(70);
  const std::string reply = backend.complete("compose something", rng);
  CHECK(reply == "0.1, 0.9");
  CHECK(seen_auth == "Bearer testkey-123");
  CHECK(seen_prompt == "compose something");
  CHECK(seen_system == llm::system_role());
  CHECK(seen_model == "gpt-3.5-turbo");
}

TEST_CASE("rate limiting is retried with backoff, then succeeds") {
  setenv("UAVISAC_TEST_KEY", "testkey-123", 1);

  std::atomic<int> hits{0};
  StubServer server([&](const httplib::Request&, httplib::Response& res) {
    if (hits.fetch_add(1) == 0) {
      res.status = 429;
      return;
    }
    res.set_content(chat_reply("0.5, 0.5"), "application/json");
  });

  llm::HttpBackend backend(server.config());
  std::mt19937_64 rng(71);
  CHECK(backend.complete("p", rng) == "0.5, 0.5");
  CHECK(hits.load() == 2);
}

TEST_CASE("hard server errors fail immediately without retries") {
  setenv("UAVISAC_TEST_KEY", "testkey-123", 1);

  std::atomic<int> hits{0};
  StubServer server([&](const httplib::Request&, httplib::Response& res) {
    hits.fetch_add(1);
    res.status = 500;
  });

  llm::HttpBackend backend(server.config());
  std::mt19937_64 rng(72);
  CHECK_THROWS_AS(backend.complete("p", rng), llm::TransportError);
  CHECK(hits.load() == 1);
}

TEST_CASE("persistent rate limiting exhausts the retry budget") {
  setenv("UAVISAC_TEST_KEY", "testkey-123", 1);

  std::atomic<int> hits{0};
  StubServer server([&](const httplib::Request&, httplib::Response& res) {
    hits.fetch_add(1);
    res.status = 429;
  });

  llm::HttpBackend backend(server.config());
  std::mt19937_64 rng(73);
  CHECK_THROWS_AS(backend.complete("p", rng), llm::TransportError);
  CHECK(hits.load() == 3);  // initial try + max_retries
}

TEST_CASE("an unreadable success payload is a transport error") {
  setenv("UAVISAC_TEST_KEY", "testkey-123", 1);

  StubServer server([&](const httplib::Request&, httplib::Response& res) {
    res.set_content("this is not json", "text/plain");
  });

  llm::HttpBackend backend(server.config());
  std::mt19937_64 rng(74);
  CHECK_THROWS_AS(backend.complete("p", rng), llm::TransportError);
}

TEST_CASE("an unreachable endpoint raises after the retry budget") {
  setenv("UAVISAC_TEST_KEY", "testkey-123", 1);
  llm::LlmConfig cfg;
  cfg.endpoint = "http://127.0.0.1:1/v1/chat/completions";  // nothing listens
  cfg.api_key_env = "UAVISAC_TEST_KEY";
  cfg.max_retries = 1;
  cfg.backoff_base_ms = 5;
  cfg.timeout_s = 1.0;

  llm::HttpBackend backend(cfg);
  std::mt19937_64 rng(75);
  CHECK_THROWS_AS(backend.complete("p", rng), llm::TransportError);
}

TEST_CASE("connection settings are validated") {
  llm::LlmConfig cfg;
  cfg.endpoint = "no-scheme";
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.model.clear();
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.temperature = -1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.max_retries = -1;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.timeout_s = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  cfg.max_in_flight = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = {};
  CHECK_NOTHROW(cfg.validate());
}
