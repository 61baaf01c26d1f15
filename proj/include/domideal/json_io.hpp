#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "domideal/counting_formulas.hpp"
#include "domideal/dominance.hpp"
#include "domideal/format.hpp"
#include "domideal/lcm_enumeration.hpp"
#include "domideal/monomial.hpp"
#include "domideal/prime_structure.hpp"
#include "domideal/random_models.hpp"

namespace domideal {

using json = nlohmann::json;

inline json to_json(const Monomial& m) { return json(m.vector()); }

inline Monomial monomial_from_json(const json& j) {
  if (!j.is_array()) throw parse_error("domideal: monomial JSON must be an exponent array");
  return Monomial(j.get<std::vector<Exponent>>());
}

/// {"nvars": n, "generators": [[...], ...]}.
inline json to_json(const MinimalMonomialSet& ideal) {
  json gens = json::array();
  for (const auto& g : ideal) gens.push_back(to_json(g));
  return {{"nvars", ideal.nvars()}, {"generators", std::move(gens)}};
}

/// Accepts the object form above or a bare array of exponent arrays.
inline MinimalMonomialSet ideal_from_json(const json& j) {
  const json& gens = j.is_object() ? j.at("generators") : j;
  if (!gens.is_array()) throw parse_error("domideal: ideal JSON needs a generator array");
  std::vector<Monomial> list;
  for (const auto& g : gens) list.push_back(monomial_from_json(g));
  if (j.is_object() && j.contains("nvars")) return minimalize(j.at("nvars").get<std::size_t>(), std::move(list));
  return minimalize(std::move(list));
}

inline json to_json(const std::vector<HistogramRecord<FootprintProfile>>& hist, const VariableNames& names) {
  json out = json::array();
  for (const auto& r : hist) out.push_back({{"count", r.count}, {"footprint", r.key.render(names)}});
  return out;
}

inline json to_json(const std::vector<HistogramRecord<LowOrMaxSignature>>& hist) {
  json out = json::array();
  for (const auto& r : hist) out.push_back({{"LowOrMax", r.key.render()}, {"count", r.count}});
  return out;
}

inline json to_json(const CountPolynomial& p) {
  json terms = json::array();
  for (const auto& [e, c] : p.ordered_terms()) terms.push_back({{"coefficient", c}, {"exponents", e}});
  return {{"nvars", p.nvars()}, {"text", p.render()}, {"terms", std::move(terms)}};
}

inline json to_json(const FormulaComparison& r) {
  json diffs = json::array();
  for (const auto& d : r.differing_terms)
    diffs.push_back({{"term", CountPolynomial::render_monomial(d.term)},
                     {"printed", d.printed},
                     {"regenerated", d.regenerated}});
  return {{"formula", r.formula ? json(*r.formula) : json(nullptr)},
          {"symbolic", r.symbolic},
          {"enumeration", r.enumeration},
          {"agree", r.agree},
          {"differing_terms", std::move(diffs)}};
}

/// Exponent tuples and variable indices; `text` adds rendered forms.
inline json to_json(const DominatingWitness& w) {
  json gens = json::array();
  for (const auto& g : w.gens) gens.push_back(to_json(g));
  return {{"generators", std::move(gens)}, {"variables", w.vars}, {"annihilated", to_json(w.annihilated)}};
}

inline json to_json(const DominatingWitness& w, const VariableNames& names) {
  json j = to_json(w);
  json gens = json::array(), vars = json::array();
  for (const auto& g : w.gens) gens.push_back(render(g, names));
  for (auto v : w.vars) vars.push_back(names[v]);
  j["text"] = {{"generators", std::move(gens)}, {"variables", std::move(vars)}, {"annihilated", render(w.annihilated, names)}};
  return j;
}

/// Primes as sorted variable-index lists.
inline json to_json(const std::set<std::vector<std::size_t>>& primes) {
  json out = json::array();
  for (const auto& p : primes) out.push_back(p);
  return out;
}

inline json to_json(const ModelSpec& spec) {
  return std::visit(
      [](const auto& m) -> json {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, BasicModel>)
          return {{"model", "basic"}, {"n", m.n}, {"D", m.D}, {"p", m.p}};
        else if constexpr (std::is_same_v<T, GradedModel>)
          return {{"model", "graded"}, {"n", m.n}, {"p", m.p}};
        else
          return {{"model", "fixed-count"}, {"n", m.n}, {"M", m.M}};
      },
      spec);
}

inline ModelSpec model_from_json(const json& j) {
  const auto kind = j.at("model").get<std::string>();
  const auto n = j.at("n").get<std::size_t>();
  ModelSpec spec;
  if (kind == "basic")
    spec = BasicModel{n, j.at("D").get<std::size_t>(), j.at("p").get<double>()};
  else if (kind == "graded")
    spec = GradedModel{n, j.at("p").get<std::vector<double>>()};
  else if (kind == "fixed-count")
    spec = FixedCountModel{n, j.at("M").get<std::vector<std::uint64_t>>()};
  else
    throw parse_error("domideal: unknown model '" + kind + "' (expected basic, graded or fixed-count)");
  validate(spec);
  return spec;
}

}  // namespace domideal
