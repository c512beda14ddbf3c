#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "segguard/bounds.hpp"
#include "segguard/classify.hpp"
#include "segguard/extreme.hpp"
#include "segguard/oracle.hpp"
#include "segguard/segmentation.hpp"

namespace segguard {

using nlohmann::json;

inline Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  throw ParseError("expected a rational string such as \"3/10\"");
}

inline std::vector<Rational> rationals_from_json(const json& j, const char* field) {
  if (!j.is_array()) throw ParseError(std::string(field) + " must be an array");
  std::vector<Rational> out;
  out.reserve(j.size());
  for (const json& item : j) out.push_back(rational_from_json(item));
  return out;
}

inline json rationals_to_json(const std::vector<Rational>& values) {
  json arr = json::array();
  for (const Rational& q : values) arr.push_back(to_string(q));
  return arr;
}

// Market files: {"valuations": ["1","2","3"], "masses": ["2/5","1/2","1/10"]}.
inline json market_to_json(const Market& m) {
  return json{{"valuations", rationals_to_json(m.grid().values())},
              {"masses", rationals_to_json(m.masses())}};
}

inline Market market_from_json(const json& j) {
  if (!j.is_object() || !j.contains("valuations") || !j.contains("masses"))
    throw ParseError("market object needs \"valuations\" and \"masses\"");
  return Market(ValuationGrid(rationals_from_json(j["valuations"], "valuations")),
                rationals_from_json(j["masses"], "masses"));
}

// Database files: {"masses": ["1/2","1/2"]}.
inline json database_to_json(const Database& f) {
  return json{{"masses", rationals_to_json(f.masses())}};
}

inline Database database_from_json(const json& j) {
  if (!j.is_object() || !j.contains("masses"))
    throw ParseError("database object needs \"masses\"");
  return Database(rationals_from_json(j["masses"], "masses"));
}

inline json segmentation_to_json(const Segmentation& seg) {
  json conditionals = json::array();
  for (const Market& cond : seg.conditionals) conditionals.push_back(rationals_to_json(cond.masses()));
  return json{{"database", database_to_json(seg.database)}, {"conditionals", conditionals}};
}

inline Segmentation segmentation_from_json(const json& j, const ValuationGrid& grid) {
  if (!j.is_object() || !j.contains("database") || !j.contains("conditionals"))
    throw ParseError("segmentation object needs \"database\" and \"conditionals\"");
  Database f = database_from_json(j["database"]);
  if (!j["conditionals"].is_array() || j["conditionals"].size() != f.labels())
    throw ParseError("conditionals must hold one market per label");
  std::vector<Market> conditionals;
  conditionals.reserve(f.labels());
  for (const json& cond : j["conditionals"])
    conditionals.emplace_back(grid, rationals_from_json(cond, "conditionals"));
  return Segmentation{std::move(f), std::move(conditionals)};
}

namespace detail {
inline json integer_to_json(const Integer& n) {
  if (n >= std::numeric_limits<std::int64_t>::min() &&
      n <= std::numeric_limits<std::int64_t>::max())
    return json(n.convert_to<std::int64_t>());
  return json(n.str());
}
}  // namespace detail

inline json bounds_to_json(const Bounds& b, const ValuationGrid& grid) {
  return json{{"lambda_lower", to_string(b.lambda_lower)},
              {"lambda_lower_dec", to_double(b.lambda_lower)},
              {"lambda_upper", to_string(b.lambda_upper)},
              {"lambda_upper_dec", to_double(b.lambda_upper)},
              {"i_star", b.i_star},
              {"i_bar", b.i_bar},
              {"i_low", b.i_low},
              {"v_star", to_string(grid.value(b.i_star))},
              {"v_bar", to_string(grid.value(b.i_bar))},
              {"v_low", to_string(grid.value(b.i_low))},
              {"u_star", to_string(b.u_star)},
              {"u_star_dec", to_double(b.u_star)},
              {"pi_star", to_string(b.pi_star)},
              {"pi_star_dec", to_double(b.pi_star)},
              {"max_labels", detail::integer_to_json(max_label_count(b))},
              {"wc_nontrivial_nonempty", nontrivial_wc_nonempty(b)},
              {"f2_nonempty", f2_nonempty(b)}};
}

inline json classification_to_json(const Classification& c, const Bounds& b,
                                   const ValuationGrid& grid) {
  json j{{"in_wc", c.in_wc},
         {"in_f2", c.in_f2},
         {"undominated", c.undominated},
         {"bounds", bounds_to_json(b, grid)}};
  if (c.binding_label)
    j["binding_label"] = *c.binding_label;
  else
    j["binding_label"] = nullptr;
  return j;
}

inline json outcome_to_json(const SegmentationOutcome& out, const ValuationGrid& grid) {
  json prices = json::array();
  json price_indices = json::array();
  for (PriceIndex p : out.prices) {
    prices.push_back(to_string(grid.value(p)));
    price_indices.push_back(p);
  }
  return json{{"prices", prices},
              {"price_indices", price_indices},
              {"cs", to_string(out.cs)},
              {"cs_dec", to_double(out.cs)},
              {"ps", to_string(out.ps)},
              {"ps_dec", to_double(out.ps)}};
}

inline json oracle_result_to_json(const OracleResult& r, const ValuationGrid& grid) {
  json profile = json::array();
  for (PriceIndex p : r.profile.prices) profile.push_back(to_string(grid.value(p)));
  json j{{"value", to_string(r.value)},
         {"value_dec", to_double(r.value)},
         {"profile", profile},
         {"witness", segmentation_to_json(r.witness)},
         {"achieved", r.achieved},
         {"max_vertex_price", to_string(grid.value(r.max_vertex_price))},
         {"profiles_enumerated", r.profiles_enumerated},
         {"lps_solved", r.lps_solved}};
  if (r.strict_witness) {
    j["strict_witness"] = segmentation_to_json(*r.strict_witness);
    j["strict_value"] = to_string(*r.strict_value);
  }
  return j;
}

inline json decomposition_to_json(const GreedyDecomposition& d) {
  json steps = json::array();
  for (const GreedyStep& st : d.steps) {
    json support = json::array();
    for (PriceIndex k : st.support) support.push_back(k);
    steps.push_back(json{{"support", support},
                         {"masses", rationals_to_json(st.extreme.masses())},
                         {"mass", to_string(st.mass)}});
  }
  json residuals = json::array();
  for (const Market& r : d.residuals) residuals.push_back(rationals_to_json(r.masses()));
  return json{{"steps", steps}, {"residuals", residuals}, {"alphas", rationals_to_json(d.alphas)}};
}

inline json json_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return j;
}

inline Market market_from_file(const std::string& path) {
  return market_from_json(json_from_file(path));
}

inline Database database_from_file(const std::string& path) {
  return database_from_json(json_from_file(path));
}

}  // namespace segguard
