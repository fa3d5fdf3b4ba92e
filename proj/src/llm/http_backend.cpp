#include <chrono>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "httplib.h"
#include "json.hpp"
#include "uavisac/llm/backend.hpp"
#include "uavisac/llm/prompt.hpp"

namespace uavisac::llm {

void LlmConfig::validate() const {
  if (endpoint.find("://") == std::string::npos)
    throw std::invalid_argument("llm config: endpoint must be a full URL");
  if (model.empty())
    throw std::invalid_argument("llm config: model must not be empty");
  if (!(temperature >= 0.0) || !std::isfinite(temperature))
    throw std::invalid_argument("llm config: temperature must be >= 0");
  if (max_retries < 0)
    throw std::invalid_argument("llm config: max_retries must be >= 0");
  if (!(timeout_s > 0.0) || !std::isfinite(timeout_s))
    throw std::invalid_argument("llm config: timeout must be positive");
  if (api_key_env.empty())
    throw std::invalid_argument("llm config: api_key_env must not be empty");
  if (backoff_base_ms < 0)
    throw std::invalid_argument("llm config: backoff_base_ms must be >= 0");
  if (max_in_flight < 1)
    throw std::invalid_argument("llm config: max_in_flight must be >= 1");
}

HttpBackend::HttpBackend(LlmConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.validate();
  const char* key = std::getenv(cfg_.api_key_env.c_str());
  if (key == nullptr || *key == '\0')
    throw std::runtime_error("environment variable " + cfg_.api_key_env +
                             " must hold the API key for the HTTP backend");
  api_key_ = key;

  const auto scheme_end = cfg_.endpoint.find("://");
  const auto path_start = cfg_.endpoint.find('/', scheme_end + 3);
  if (path_start == std::string::npos) {
    host_ = cfg_.endpoint;
    path_ = "/";
  } else {
    host_ = cfg_.endpoint.substr(0, path_start);
    path_ = cfg_.endpoint.substr(path_start);
  }
}

std::string HttpBackend::complete(const std::string& prompt,
                                  std::mt19937_64& /*rng*/) {
  const nlohmann::json payload = {
      {"model", cfg_.model},
      {"temperature", cfg_.temperature},
      {"messages",
       {{{"role", "system"}, {"content", system_role()}},
        {{"role", "user"}, {"content", prompt}}}}};
  const std::string body = payload.dump();

  const auto timeout =
      std::chrono::milliseconds(static_cast<long>(cfg_.timeout_s * 1000.0));

  std::string last_error;
  for (int attempt = 0;; ++attempt) {
    httplib::Client client(host_);
    client.set_connection_timeout(timeout);
    client.set_read_timeout(timeout);
    client.set_write_timeout(timeout);
    client.set_bearer_token_auth(api_key_);

    auto res = client.Post(path_, body, "application/json");

    if (res && res->status >= 200 && res->status < 300) {
      try {
        const auto reply = nlohmann::json::parse(res->body);
        return reply.at("choices").at(0).at("message").at("content")
            .get<std::string>();
      } catch (const std::exception& e) {
        throw TransportError(std::string("unreadable completion payload: ") +
                             e.what());
      }
    }

    // Only transient conditions are worth retrying; 4xx/5xx other than 429
    // will not improve by waiting.
    if (res && res->status != 429)
      throw TransportError("endpoint returned HTTP " +
                           std::to_string(res->status));
    last_error = res ? "HTTP 429"
                     : "transport failure: " + httplib::to_string(res.error());
    if (attempt >= cfg_.max_retries)
      throw TransportError(last_error + " (after " +
                           std::to_string(attempt + 1) + " attempts)");
    std::this_thread::sleep_for(
        std::chrono::milliseconds(static_cast<long>(cfg_.backoff_base_ms)
                                  << attempt));
  }
}

}  // namespace uavisac::llm
