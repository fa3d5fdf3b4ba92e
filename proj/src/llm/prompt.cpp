#include "uavisac/llm/prompt.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "uavisac/llm/prompt_template.hpp"
#include "uavisac/strfmt.hpp"

namespace uavisac::llm {

namespace {

void replace_all(std::string& text, const std::string& key,
                 const std::string& value) {
  std::size_t pos = 0;
  while ((pos = text.find(key, pos)) != std::string::npos) {
    text.replace(pos, key.size(), value);
    pos += value.size();
  }
}

}  // namespace

const std::string& prompt_template_version() {
  static const std::string v = detail::kPromptTemplateVersionRaw;
  return v;
}

const std::string& system_role() {
  static const std::string v = [] {
    std::string s = detail::kSystemRoleRaw;
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
    return s;
  }();
  return v;
}

std::string build_prompt(const PromptContext& ctx) {
  std::string examples;
  for (std::size_t p = 0; p < ctx.parents.size(); ++p) {
    const auto& parent = ctx.parents[p];
    examples += "point: <";
    for (std::size_t i = 0; i < parent.genes.size(); ++i) {
      if (i > 0) examples += ',';
      examples += strfmt::fixed(parent.genes[i], 4);
    }
    examples += "> fitness: <";
    examples += strfmt::general(parent.fitness, 6);
    examples += '>';
    if (p + 1 < ctx.parents.size()) examples += '\n';
  }

  std::string out = detail::kPromptTemplateRaw;
  replace_all(out, "{dim}", std::to_string(ctx.dim));
  replace_all(out, "{num_offspring}", std::to_string(ctx.num_offspring));
  replace_all(out, "{w1}", strfmt::general(ctx.weight.w1, 6));
  replace_all(out, "{w2}", strfmt::general(ctx.weight.w2, 6));
  replace_all(out, "{z1}", strfmt::general(ctx.reference.z1, 6));
  replace_all(out, "{z2}", strfmt::general(ctx.reference.z2, 6));
  replace_all(out, "{example_lines}", examples);
  return out;
}

namespace {

bool numeric_char(char c) {
  return (c >= '0' && c <= '9') || c == '+' || c == '-' || c == '.' ||
         c == 'e' || c == 'E';
}

// Numbers found in one line, or no value when the line contains a numeric
// overflow (1e999 and friends must invalidate the whole line, not vanish).
// Word-form specials ("nan", "inf") never reach strtod: their letters are
// not numeric characters and become separators.
bool line_numbers(const std::string& line, std::vector<double>& out) {
  out.clear();
  std::string filtered = line;
  for (char& c : filtered)
    if (!numeric_char(c)) c = ' ';
  std::istringstream tokens(filtered);
  std::string tok;
  while (tokens >> tok) {
    const char* begin = tok.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end != begin + tok.size()) continue;  // stray punctuation, not a number
    if (!std::isfinite(v)) return false;
    out.push_back(v);
  }
  return true;
}

}  // namespace

std::vector<DecisionVector> parse_response(const std::string& text, int n_o,
                                           int dim) {
  std::vector<DecisionVector> out;
  std::istringstream lines(text);
  std::string line;
  std::vector<double> numbers;
  while (static_cast<int>(out.size()) < n_o && std::getline(lines, line)) {
    if (!line_numbers(line, numbers)) continue;
    if (static_cast<int>(numbers.size()) != dim) continue;
    DecisionVector v(dim);
    for (int i = 0; i < dim; ++i) v[i] = std::clamp(numbers[i], 0.0, 1.0);
    out.push_back(std::move(v));
  }
  if (out.empty())
    throw ParseFailure("reply contained no line with exactly " +
                       std::to_string(dim) + " numbers");
  return out;
}

}  // namespace uavisac::llm
