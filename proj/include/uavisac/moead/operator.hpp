#pragma once

#include <random>
#include <vector>

#include "uavisac/moead/decomposition.hpp"
#include "uavisac/objective.hpp"

namespace uavisac::moead {

// One mating-pool member handed to an offspring operator.
struct ParentInfo {
  DecisionVector genes;
  ObjectiveVector objectives;
  // Chebyshev value on the requesting subproblem; lower is better.
  double fitness = 0.0;
};

// Everything an operator may condition on for one offspring request.
struct OperatorContext {
  int generation = 0;
  int subproblem = 0;
  WeightVector weight;
  ReferencePoint reference;
  int dim = 0;
  int num_offspring = 0;
  std::vector<ParentInfo> parents;  // sorted best (lowest fitness) first
};

// Strategy interface for producing candidate decision vectors. The caller
// clamps proposals into [0,1] before evaluating them, so operators may
// return slightly out-of-range components.
class OffspringOperator {
 public:
  virtual ~OffspringOperator() = default;

  // Produce ctx.num_offspring candidates of dimension ctx.dim. rng is the
  // dedicated stream for this (generation, subproblem) pair; implementations
  // must take all randomness from it.
  virtual std::vector<DecisionVector> propose(const OperatorContext& ctx,
                                              std::mt19937_64& rng) = 0;

  // How many propose() calls of one generation may run concurrently.
  // Implementations returning > 1 must be thread-safe.
  virtual int max_concurrency() const { return 1; }
};

}  // namespace uavisac::moead
