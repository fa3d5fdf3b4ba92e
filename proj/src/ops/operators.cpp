#include "uavisac/ops/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "uavisac/rng.hpp"

namespace uavisac::ops {

namespace {

// Genes closer than this are treated as equal by the crossover; the spread
// formula divides by their difference.
constexpr double kGeneEps = 1e-14;

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

// Standard bounded SBX on one gene pair; u is the uniform draw shared by
// both children.
void sbx_gene(double y1, double y2, double eta, double u, double& c1,
              double& c2) {
  auto spread = [&](double beta_bound) {
    const double alpha = 2.0 - std::pow(beta_bound, -(eta + 1.0));
    if (u <= 1.0 / alpha) return std::pow(u * alpha, 1.0 / (eta + 1.0));
    return std::pow(1.0 / (2.0 - u * alpha), 1.0 / (eta + 1.0));
  };
  const double diff = y2 - y1;
  const double beta_lo = 1.0 + 2.0 * (y1 - 0.0) / diff;
  const double beta_hi = 1.0 + 2.0 * (1.0 - y2) / diff;
  c1 = 0.5 * ((y1 + y2) - spread(beta_lo) * diff);
  c2 = 0.5 * ((y1 + y2) + spread(beta_hi) * diff);
}

void sbx_pair(const DecisionVector& p1, const DecisionVector& p2,
              const GaParams& params, std::mt19937_64& rng, DecisionVector& c1,
              DecisionVector& c2) {
  c1 = p1;
  c2 = p2;
  if (rng::uniform01(rng) > params.crossover_prob) return;
  for (std::size_t i = 0; i < p1.size(); ++i) {
    if (rng::uniform01(rng) > 0.5) continue;  // each gene crosses half the time
    const double y1 = std::min(p1[i], p2[i]);
    const double y2 = std::max(p1[i], p2[i]);
    if (y2 - y1 < kGeneEps) continue;
    double a = 0.0, b = 0.0;
    sbx_gene(y1, y2, params.sbx_eta, rng::uniform01(rng), a, b);
    c1[i] = clamp01(a);
    c2[i] = clamp01(b);
  }
}

void polynomial_mutation(DecisionVector& x, double eta, double prob,
                         std::mt19937_64& rng) {
  for (double& g : x) {
    if (rng::uniform01(rng) >= prob) continue;
    const double u = rng::uniform01(rng);
    double delta;
    if (u < 0.5) {
      const double base =
          2.0 * u + (1.0 - 2.0 * u) * std::pow(1.0 - g, eta + 1.0);
      delta = std::pow(base, 1.0 / (eta + 1.0)) - 1.0;
    } else {
      const double base = 2.0 * (1.0 - u) +
                          2.0 * (u - 0.5) * std::pow(g, eta + 1.0);
      delta = 1.0 - std::pow(base, 1.0 / (eta + 1.0));
    }
    g = clamp01(g + delta);
  }
}

std::vector<DecisionVector> parent_genes(
    const std::vector<moead::ParentInfo>& parents) {
  std::vector<DecisionVector> out;
  out.reserve(parents.size());
  for (const auto& p : parents) out.push_back(p.genes);
  return out;
}

}  // namespace

std::vector<DecisionVector> ga_offspring(
    const std::vector<DecisionVector>& parents, int n_offspring,
    const GaParams& params, std::mt19937_64& rng) {
  if (parents.empty())
    throw std::invalid_argument("ga_offspring: parent set is empty");
  if (n_offspring < 0)
    throw std::invalid_argument("ga_offspring: n_offspring must be >= 0");
  const std::size_t dim = parents[0].size();
  const double mut_prob =
      params.mut_prob.value_or(dim > 0 ? 1.0 / static_cast<double>(dim) : 0.0);

  std::vector<DecisionVector> out;
  out.reserve(n_offspring);
  while (static_cast<int>(out.size()) < n_offspring) {
    std::size_t i1 = 0, i2 = 0;
    if (parents.size() >= 2) {
      i1 = static_cast<std::size_t>(
          rng::uniform_int(rng, 0, static_cast<int>(parents.size()) - 1));
      do {
        i2 = static_cast<std::size_t>(
            rng::uniform_int(rng, 0, static_cast<int>(parents.size()) - 1));
      } while (i2 == i1);
    }
    DecisionVector c1, c2;
    sbx_pair(parents[i1], parents[i2], params, rng, c1, c2);
    polynomial_mutation(c1, params.mut_eta, mut_prob, rng);
    polynomial_mutation(c2, params.mut_eta, mut_prob, rng);
    out.push_back(std::move(c1));
    if (static_cast<int>(out.size()) < n_offspring)
      out.push_back(std::move(c2));
  }
  return out;
}

std::vector<DecisionVector> de_offspring(
    const std::vector<DecisionVector>& parents, int n_offspring,
    const DeParams& params, std::mt19937_64& rng) {
  if (parents.empty())
    throw std::invalid_argument("de_offspring: parent set is empty");
  if (parents.size() < 4) return ga_offspring(parents, n_offspring, {}, rng);

  const std::size_t dim = parents[0].size();
  std::vector<int> indices(parents.size());
  std::iota(indices.begin(), indices.end(), 0);

  std::vector<DecisionVector> out;
  out.reserve(n_offspring);
  for (int c = 0; c < n_offspring; ++c) {
    const auto pick = rng::sample_without_replacement(rng, indices, 4);
    const DecisionVector& base = parents[pick[0]];
    const DecisionVector& pa = parents[pick[1]];
    const DecisionVector& pb = parents[pick[2]];
    const DecisionVector& pc = parents[pick[3]];
    const std::size_t forced = static_cast<std::size_t>(
        rng::uniform_int(rng, 0, static_cast<int>(dim) - 1));
    DecisionVector child(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      const bool take_donor =
          rng::uniform01(rng) <= params.crossover_rate || i == forced;
      child[i] = take_donor
                     ? clamp01(pa[i] + params.weight * (pb[i] - pc[i]))
                     : base[i];
    }
    out.push_back(std::move(child));
  }
  return out;
}

std::vector<DecisionVector> random_offspring(int dim, int n_offspring,
                                             std::mt19937_64& rng) {
  if (dim < 1) throw std::invalid_argument("random_offspring: dim must be >= 1");
  std::vector<DecisionVector> out(std::max(n_offspring, 0));
  for (auto& child : out) {
    child.resize(dim);
    for (double& g : child) g = rng::uniform01(rng);
  }
  return out;
}

std::vector<DecisionVector> GaOperator::propose(
    const moead::OperatorContext& ctx, std::mt19937_64& rng) {
  return ga_offspring(parent_genes(ctx.parents), ctx.num_offspring, params_,
                      rng);
}

std::vector<DecisionVector> DeOperator::propose(
    const moead::OperatorContext& ctx, std::mt19937_64& rng) {
  return de_offspring(parent_genes(ctx.parents), ctx.num_offspring, params_,
                      rng);
}

std::vector<DecisionVector> RandomOperator::propose(
    const moead::OperatorContext& ctx, std::mt19937_64& rng) {
  return random_offspring(ctx.dim, ctx.num_offspring, rng);
}

}  // namespace uavisac::ops
