#include "uavisac/llm/operator.hpp"

#include <algorithm>
#include <utility>

namespace uavisac::llm {

namespace {

std::vector<DecisionVector> classical_batch(const PromptContext& ctx,
                                            const ops::GaParams& params,
                                            int count, std::mt19937_64& rng) {
  if (ctx.parents.empty()) return ops::random_offspring(ctx.dim, count, rng);
  std::vector<DecisionVector> genes;
  genes.reserve(ctx.parents.size());
  for (const auto& p : ctx.parents) genes.push_back(p.genes);
  return ops::ga_offspring(genes, count, params, rng);
}

}  // namespace

GenerateResult generate(const PromptContext& ctx, ChatBackend& backend,
                        int max_retries, const ops::GaParams& fallback_params,
                        std::mt19937_64& rng) {
  GenerateResult res;
  Transcript& t = res.transcript;
  t.generation = ctx.generation;
  t.subproblem = ctx.subproblem;
  t.prompt = build_prompt(ctx);

  const int attempts = std::max(1, max_retries);
  std::string failure_kind;
  for (int a = 0; a < attempts; ++a) {
    ++t.attempts;
    std::string reply;
    try {
      reply = backend.complete(t.prompt, rng);
    } catch (const TransportError&) {
      failure_kind = "transport_error";
      continue;
    }
    t.response = reply;
    try {
      res.offspring = parse_response(reply, ctx.num_offspring, ctx.dim);
    } catch (const ParseFailure&) {
      failure_kind = "parse_failure";
      continue;
    }
    t.parsed = static_cast<int>(res.offspring.size());
    if (t.parsed < ctx.num_offspring) {
      // The model delivered something usable but not enough; top up
      // classically rather than burn another network round trip.
      t.outcome = "partial";
      auto pad = classical_batch(ctx, fallback_params,
                                 ctx.num_offspring - t.parsed, rng);
      for (auto& v : pad) res.offspring.push_back(std::move(v));
    } else {
      t.outcome = "ok";
    }
    return res;
  }

  t.outcome = failure_kind;
  t.fallback = true;
  res.offspring = classical_batch(ctx, fallback_params, ctx.num_offspring, rng);
  return res;
}

LlmOperator::LlmOperator(ChatBackend& backend, int max_retries,
                         ops::GaParams fallback_params, TranscriptSink sink)
    : backend_(backend),
      max_retries_(max_retries),
      fallback_params_(fallback_params),
      sink_(std::move(sink)) {}

std::vector<DecisionVector> LlmOperator::propose(
    const moead::OperatorContext& ctx, std::mt19937_64& rng) {
  GenerateResult res =
      generate(ctx, backend_, max_retries_, fallback_params_, rng);
  {
    std::lock_guard<std::mutex> lock(mu_);
    ++calls_;
    if (res.transcript.fallback) ++fallbacks_;
    if (sink_) sink_(res.transcript);  // sink body is serialized by the lock
  }
  return std::move(res.offspring);
}

long long LlmOperator::calls() const {
  std::lock_guard<std::mutex> lock(mu_);
  return calls_;
}

long long LlmOperator::fallbacks() const {
  std::lock_guard<std::mutex> lock(mu_);
  return fallbacks_;
}

}  // namespace uavisac::llm
