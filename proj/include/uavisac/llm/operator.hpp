#pragma once

#include <functional>
#include <mutex>
#include <string>
#include <vector>

#include "uavisac/llm/backend.hpp"
#include "uavisac/llm/prompt.hpp"
#include "uavisac/moead/operator.hpp"
#include "uavisac/objective.hpp"
#include "uavisac/ops/operators.hpp"

namespace uavisac::llm {

// Audit record of one offspring request to the model.
struct Transcript {
  int generation = 0;
  int subproblem = 0;
  std::string prompt;
  std::string response;  // raw text of the last reply; empty if none arrived
  // "ok" (full parse), "partial" (parsed some, padded classically),
  // "parse_failure" or "transport_error" (all attempts burned).
  std::string outcome;
  bool fallback = false;  // true when no model line was usable at all
  int attempts = 0;       // completion calls made
  int parsed = 0;         // vectors recovered from the model reply
};

struct GenerateResult {
  std::vector<DecisionVector> offspring;  // always exactly ctx.num_offspring
  Transcript transcript;
};

// One model-driven offspring request: build the prompt, call the backend up
// to max_retries times (a transport error or a fully unparseable reply burns
// one attempt), accept the first reply that yields at least one vector. A
// short reply is padded with crossover/mutation children of ctx.parents;
// when every attempt fails, the whole batch comes from the classical
// fallback and the transcript is flagged.
GenerateResult generate(const PromptContext& ctx, ChatBackend& backend,
                        int max_retries, const ops::GaParams& fallback_params,
                        std::mt19937_64& rng);

using TranscriptSink = std::function<void(const Transcript&)>;

// Offspring operator backed by a text-completion model, with a classical
// safety net. Thread-safe; concurrency is whatever the backend allows.
class LlmOperator final : public moead::OffspringOperator {
 public:
  explicit LlmOperator(ChatBackend& backend, int max_retries = 3,
                       ops::GaParams fallback_params = {},
                       TranscriptSink sink = {});

  std::vector<DecisionVector> propose(const moead::OperatorContext& ctx,
                                      std::mt19937_64& rng) override;
  int max_concurrency() const override { return backend_.max_in_flight(); }

  long long calls() const;
  long long fallbacks() const;

 private:
  ChatBackend& backend_;
  int max_retries_;
  ops::GaParams fallback_params_;
  TranscriptSink sink_;
  mutable std::mutex mu_;
  long long calls_ = 0;
  long long fallbacks_ = 0;
};

}  // namespace uavisac::llm
