#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "uavisac/moead/operator.hpp"
#include "uavisac/objective.hpp"

namespace uavisac::llm {

// The prompt is built from exactly the information an offspring request
// carries; the two types are deliberately the same.
using PromptContext = moead::OperatorContext;

// Thrown by parse_response when not a single line of the reply parses.
struct ParseFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Version tag of the embedded prompt template, recorded in run artifacts so
// result sets can be told apart after the wording evolves.
const std::string& prompt_template_version();

// Instruction text sent as the system role alongside every prompt.
const std::string& system_role();

// Render the three-section prompt (problem description, in-context examples
// best-first, task instructions) for one offspring request. Genes are
// printed with 4 decimals, fitness with 6 significant digits.
std::string build_prompt(const PromptContext& ctx);

// Extract up to n_o decision vectors from a model reply. A line qualifies
// when it contains exactly dim finite numbers once everything that is not
// numeric is treated as separator; qualifying components are clamped into
// [0, 1]. Surplus qualifying lines are ignored. Returns at least one vector
// or throws ParseFailure.
std::vector<DecisionVector> parse_response(const std::string& text, int n_o,
                                           int dim);

}  // namespace uavisac::llm
