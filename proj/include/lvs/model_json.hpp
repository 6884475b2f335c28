#pragma once

// JSON form of a ModelSpec:
//
//   {
//     "label": "my model",
//     "alpha": 14, "beta": 18,
//     "a": [{"type": "constant", "c": 1}],
//     "b": [{"type": "exp", "c": 1, "k": 2}],
//     "c": [{"type": "constant", "c": "1/10"}],
//     "d": [{"type": "linear", "k": 1}, {"type": "tan", "c": 1}, {"type": "cos", "c": 1}]
//   }
//
// Numbers may be JSON numbers (read as the shortest round-tripping decimal, so
// 0.1 is exactly 1/10) or strings holding "p/q" or a decimal literal.

#include <filesystem>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "lvs/model.hpp"

namespace lvs {

namespace detail {

inline Rational json_rational(const nlohmann::json& j, const std::string& field) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number()) return decimal_rational(j.get<double>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  raise(ErrorKind::InvalidArgument, "field '" + field + "' must be a number or a rational string");
}

inline std::string rational_json(const Rational& r) { return r.str(); }

inline Term json_term(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("type")) raise(ErrorKind::InvalidArgument, "term must be an object with a 'type'");
  const auto type = j.at("type").get<std::string>();
  auto get = [&](const char* key) {
    if (!j.contains(key)) raise(ErrorKind::InvalidArgument, "term '" + type + "' is missing '" + key + "'");
    return json_rational(j.at(key), key);
  };
  if (type == "constant") return Term::constant(get("c"));
  if (type == "linear") return Term::linear(get("k"));
  if (type == "exp") return Term::exponential(j.contains("c") ? get("c") : Rational(1), get("k"));
  if (type == "tan") return Term::tangent(j.contains("c") ? get("c") : Rational(1));
  if (type == "cos") return Term::cosine(j.contains("c") ? get("c") : Rational(1));
  raise(ErrorKind::UnsupportedFunction, "unknown term type '" + type + "'");
}

inline CoefficientFn json_coefficient(const nlohmann::json& j, const std::string& field) {
  if (j.is_number() || j.is_string()) return CoefficientFn::constant(json_rational(j, field));
  if (!j.is_array()) raise(ErrorKind::InvalidArgument, "field '" + field + "' must be a term list");
  std::vector<Term> terms;
  for (const auto& item : j) terms.push_back(json_term(item));
  return CoefficientFn(std::move(terms));
}

inline nlohmann::json term_json(const Term& t) {
  switch (t.kind) {
    case TermKind::Constant: return {{"type", "constant"}, {"c", rational_json(t.coeff)}};
    case TermKind::Linear: return {{"type", "linear"}, {"k", rational_json(t.coeff)}};
    case TermKind::Exponential: return {{"type", "exp"}, {"c", rational_json(t.coeff)}, {"k", rational_json(t.rate)}};
    case TermKind::Tangent: return {{"type", "tan"}, {"c", rational_json(t.coeff)}};
    case TermKind::Cosine: return {{"type", "cos"}, {"c", rational_json(t.coeff)}};
  }
  return {};
}

}  // namespace detail

[[nodiscard]] inline ModelSpec model_from_json(const nlohmann::json& j) {
  if (!j.is_object()) raise(ErrorKind::InvalidArgument, "model document must be a JSON object");
  for (const char* key : {"a", "b", "c", "d", "alpha", "beta"}) {
    if (!j.contains(key)) raise(ErrorKind::InvalidArgument, std::string("model document is missing '") + key + "'");
  }
  return ModelSpec{detail::json_coefficient(j.at("a"), "a"),
                   detail::json_coefficient(j.at("b"), "b"),
                   detail::json_coefficient(j.at("c"), "c"),
                   detail::json_coefficient(j.at("d"), "d"),
                   detail::json_rational(j.at("alpha"), "alpha"),
                   detail::json_rational(j.at("beta"), "beta"),
                   j.value("label", std::string("custom"))};
}

[[nodiscard]] inline nlohmann::json model_to_json(const ModelSpec& m) {
  nlohmann::json j;
  j["label"] = m.label;
  j["alpha"] = detail::rational_json(m.alpha);
  j["beta"] = detail::rational_json(m.beta);
  const std::pair<const char*, const CoefficientFn*> fields[] = {{"a", &m.a}, {"b", &m.b}, {"c", &m.c}, {"d", &m.d}};
  for (const auto& [key, fn] : fields) {
    auto terms = nlohmann::json::array();
    for (const auto& term : fn->terms()) terms.push_back(detail::term_json(term));
    j[key] = std::move(terms);
  }
  return j;
}

[[nodiscard]] inline ModelSpec load_model_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) raise(ErrorKind::InvalidArgument, "cannot open model file " + path.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    raise(ErrorKind::InvalidArgument, path.string() + ": " + e.what());
  }
  return model_from_json(j);
}

}  // namespace lvs
