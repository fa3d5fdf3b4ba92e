#pragma once

#include <random>
#include <stdexcept>
#include <string>

namespace uavisac::llm {

// Network/protocol failure of one completion call (after the backend's own
// internal retries, where applicable).
struct TransportError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Connection settings for an OpenAI-style chat-completions endpoint.
struct LlmConfig {
  std::string endpoint = "https://api.openai.com/v1/chat/completions";
  std::string model = "gpt-3.5-turbo";
  double temperature = 1.0;
  int max_retries = 3;
  double timeout_s = 30.0;
  // Name of the environment variable holding the API key; the key itself is
  // never written to config or artifacts.
  std::string api_key_env = "LLM_API_KEY";
  // Extras beyond the protocol basics: first sleep of the exponential
  // backoff (doubled per retry) and the per-generation request concurrency.
  int backoff_base_ms = 1000;
  int max_in_flight = 4;

  void validate() const;  // throws std::invalid_argument
};

// A text-completion provider. complete() returns the raw reply text for one
// prompt or throws TransportError.
class ChatBackend {
 public:
  virtual ~ChatBackend() = default;
  // rng is the caller's per-request stream; deterministic backends draw from
  // it, network backends ignore it.
  virtual std::string complete(const std::string& prompt,
                               std::mt19937_64& rng) = 0;
  virtual int max_in_flight() const { return 1; }
};

// Deterministic stand-in for a live model: reads the example lines out of
// the prompt and replies with noisy blends of the two best, in the exact
// reply format the prompt requests. Makes full runs reproducible offline.
class MockBackend final : public ChatBackend {
 public:
  std::string complete(const std::string& prompt,
                       std::mt19937_64& rng) override;
};

// Talks to a real chat-completions endpoint over HTTP(S). Retries
// connection failures, timeouts and HTTP 429 with exponential backoff
// (backoff_base_ms, doubling per attempt, max_retries extra attempts);
// any other non-2xx status or an unreadable payload fails immediately.
class HttpBackend final : public ChatBackend {
 public:
  // Reads the API key from cfg.api_key_env; throws std::runtime_error when
  // the variable is unset or empty.
  explicit HttpBackend(LlmConfig cfg);

  std::string complete(const std::string& prompt,
                       std::mt19937_64& rng) override;
  int max_in_flight() const override { return cfg_.max_in_flight; }

 private:
  LlmConfig cfg_;
  std::string api_key_;
  std::string host_;  // scheme://authority
  std::string path_;
};

}  // namespace uavisac::llm
