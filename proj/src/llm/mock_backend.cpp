#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <string>
#include <vector>

#include "uavisac/llm/backend.hpp"
#include "uavisac/rng.hpp"
#include "uavisac/strfmt.hpp"

namespace uavisac::llm {

namespace {

// First integer following the anchor text, or fallback when absent. The
// mock is versioned together with the prompt template; these anchors exist
// in every rendered prompt.
int int_after(const std::string& text, const std::string& anchor,
              int fallback) {
  const auto pos = text.find(anchor);
  if (pos == std::string::npos) return fallback;
  const char* p = text.c_str() + pos + anchor.size();
  char* end = nullptr;
  const long v = std::strtol(p, &end, 10);
  if (end == p || v < 1) return fallback;
  return static_cast<int>(v);
}

// Gene vectors of the "point: <...>" example lines, in prompt order
// (best first).
std::vector<std::vector<double>> example_points(const std::string& prompt) {
  std::vector<std::vector<double>> points;
  std::istringstream lines(prompt);
  std::string line;
  while (std::getline(lines, line)) {
    const auto label = line.find("point:");
    if (label == std::string::npos) continue;
    const auto open = line.find('<', label);
    const auto close = line.find('>', open == std::string::npos ? 0 : open);
    if (open == std::string::npos || close == std::string::npos) continue;
    std::string body = line.substr(open + 1, close - open - 1);
    for (char& c : body)
      if (c == ',') c = ' ';
    std::istringstream nums(body);
    std::vector<double> v;
    double g;
    while (nums >> g) v.push_back(g);
    if (!v.empty()) points.push_back(std::move(v));
  }
  return points;
}

std::string format_line(const std::vector<double>& v) {
  std::string line;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) line += ',';
    line += strfmt::fixed(v[i], 4);
  }
  return line;
}

}  // namespace

std::string MockBackend::complete(const std::string& prompt,
                                  std::mt19937_64& rng) {
  const int n_o = int_after(prompt, "Propose ", 1);
  const int dim = int_after(prompt, "contain exactly ", 1);
  const auto points = example_points(prompt);

  std::string reply;
  for (int line = 0; line < n_o; ++line) {
    std::vector<double> child(dim);
    if (points.empty()) {
      for (double& g : child) g = rng::uniform01(rng);
    } else {
      const auto& best = points[0];
      const auto& second = points.size() > 1 ? points[1] : points[0];
      // One blend weight per line, then small gaussian exploration per gene;
      // mimics an interpolating-and-perturbing model reply.
      const double u = rng::uniform01(rng);
      for (int i = 0; i < dim; ++i) {
        const double bi = i < static_cast<int>(best.size()) ? best[i] : 0.5;
        const double si =
            i < static_cast<int>(second.size()) ? second[i] : 0.5;
        child[i] = std::clamp(
            u * bi + (1.0 - u) * si + rng::gaussian(rng, 0.0, 0.05), 0.0, 1.0);
      }
    }
    reply += format_line(child);
    reply += '\n';
  }
  return reply;
}

}  // namespace uavisac::llm
