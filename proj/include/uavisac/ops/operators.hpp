#pragma once

#include <optional>
#include <random>
#include <vector>

#include "uavisac/moead/operator.hpp"
#include "uavisac/objective.hpp"

namespace uavisac::ops {

struct GaParams {
  double crossover_prob = 0.9;
  double sbx_eta = 20.0;  // simulated binary crossover distribution index
  double mut_eta = 20.0;  // polynomial mutation distribution index
  // Per-gene mutation probability; defaults to 1/dim at call time.
  std::optional<double> mut_prob;
};

struct DeParams {
  double weight = 0.5;          // differential weight F
  double crossover_rate = 0.9;  // binomial crossover CR
};

// Simulated binary crossover + polynomial mutation on [0,1] genes. Parent
// pairs are drawn uniformly (distinct when possible); with fewer than two
// parents, parent 0 is paired with itself. Children are clamped to [0,1].
std::vector<DecisionVector> ga_offspring(
    const std::vector<DecisionVector>& parents, int n_offspring,
    const GaParams& params, std::mt19937_64& rng);

// rand/1/bin differential evolution: for each child, four distinct parents
// (base, a, b, c) are sampled, the donor is a + F*(b - c) and binomial
// crossover with a forced coordinate mixes donor and base. Falls back to
// ga_offspring when fewer than four parents are available.
std::vector<DecisionVector> de_offspring(
    const std::vector<DecisionVector>& parents, int n_offspring,
    const DeParams& params, std::mt19937_64& rng);

// Fresh uniform vectors in [0,1]^dim; the search baseline.
std::vector<DecisionVector> random_offspring(int dim, int n_offspring,
                                             std::mt19937_64& rng);

class GaOperator final : public moead::OffspringOperator {
 public:
  explicit GaOperator(GaParams params = {}) : params_(params) {}
  std::vector<DecisionVector> propose(const moead::OperatorContext& ctx,
                                      std::mt19937_64& rng) override;

 private:
  GaParams params_;
};

class DeOperator final : public moead::OffspringOperator {
 public:
  explicit DeOperator(DeParams params = {}) : params_(params) {}
  std::vector<DecisionVector> propose(const moead::OperatorContext& ctx,
                                      std::mt19937_64& rng) override;

 private:
  DeParams params_;
};

class RandomOperator final : public moead::OffspringOperator {
 public:
  std::vector<DecisionVector> propose(const moead::OperatorContext& ctx,
                                      std::mt19937_64& rng) override;
};

}  // namespace uavisac::ops
