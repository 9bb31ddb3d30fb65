#pragma once

#include <string>

#include "qdual/modelfile.hpp"
#include "qdual/registry.hpp"
#include "qdual/tensor.hpp"

namespace qdual::test {

inline Model model_from_text(const std::string& text, const Truncation& t) {
  return instantiate(parse_model_text(text), t);
}

/// Normal-ordered value of an expression, truncated at the presentation degree.
inline PBWForm pbw(const HopfPresentation& h, const std::string& expr) {
  ExprValue v = evaluate(parse_expression(expr), h.generators(), h.space());
  return h.engine().normal_order(v.poly).truncated(h.degree());
}

/// Legwise normal-ordered tensor, each leg truncated at the presentation degree.
inline TensorElement tensor(const HopfPresentation& h, const std::string& expr) {
  ExprValue v = evaluate(parse_expression(expr), h.generators(), h.space());
  TensorElement out;
  if (!v.is_tensor) return out;
  for (const auto& [a, b] : v.tensor) out += tensor_of(h.engine().normal_order(a), h.engine().normal_order(b));
  return out.leg_truncated(h.degree());
}

inline Mono mono(const HopfPresentation& h, std::initializer_list<std::pair<const char*, int>> powers) {
  std::vector<int> e(h.size(), 0);
  for (const auto& [name, k] : powers) e[h.generators().require(name)] = k;
  return Mono::from_exponents(e);
}

/// Replaces the first line starting with `prefix` by `line`.
inline std::string replace_line(std::string text, const std::string& prefix, const std::string& line) {
  auto pos = text.find("\n" + prefix);
  if (pos == std::string::npos) return text;
  auto end = text.find('\n', pos + 1);
  return text.substr(0, pos + 1) + line + text.substr(end);
}

}  // namespace qdual::test
