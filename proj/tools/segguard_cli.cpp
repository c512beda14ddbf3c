// Command-line surface for the segguard library: market analysis, greedy
// segmentation tables, database classification, adversarial witnesses, oracle
// verification, and CSV emitters for the lambda sweep and surplus triangle.
//
// Exit codes are a contract: 0 ok, 1 input validation, 3 database not
// worst-case optimal, 4 witness precondition failed, 5 oracle/threshold mismatch,
// 6 enumeration guard tripped.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "segguard/segguard.hpp"

namespace {

using namespace segguard;

constexpr int kExitValidation = 1;
constexpr int kExitNotWorstCase = 3;
constexpr int kExitConstructor = 4;
constexpr int kExitMismatch = 5;
constexpr int kExitEnumeration = 6;

OracleOptions oracle_options() {
  OracleOptions opts;
  if (const char* env = std::getenv("SEGGUARD_MAX_PROFILES")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && v > 0) opts.max_profiles = static_cast<std::size_t>(v);
  }
  return opts;
}

void emit(const std::string& payload, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << payload;
    if (payload.empty() || payload.back() != '\n') std::cout << '\n';
  } else {
    std::ofstream out(out_path);
    if (!out) throw Error("cannot write " + out_path);
    out << payload;
  }
}

std::string csv_quote(const Rational& q) { return "\"" + to_string(q) + "\""; }

std::string render_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths;
  for (const auto& row : rows) {
    if (widths.size() < row.size()) widths.resize(row.size(), 0);
    for (std::size_t c = 0; c < row.size(); ++c)
      widths[c] = std::max(widths[c], row[c].size());
  }
  std::ostringstream out;
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << row[c];
      if (c + 1 < row.size()) out << std::string(widths[c] - row[c].size() + 2, ' ');
    }
    out << '\n';
  }
  return out.str();
}

struct CommonArgs {
  std::string market_path;
  std::string database_path;
  std::string alpha;
  std::string format;
  std::string out_path;
};

int run_analyze(const CommonArgs& args) {
  const Market m = market_from_file(args.market_path);
  const Bounds b = compute_bounds(m);
  if (args.format == "json") {
    emit(bounds_to_json(b, m.grid()).dump(2), args.out_path);
    return 0;
  }
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"uniform monopoly price", to_string(m.grid().value(b.i_star)),
                  "(index " + std::to_string(b.i_star) + ")"});
  rows.push_back({"consumer surplus u*", to_string(b.u_star), decimal_string(b.u_star)});
  rows.push_back({"producer surplus pi*", to_string(b.pi_star), decimal_string(b.pi_star)});
  rows.push_back({"lambda_lower", to_string(b.lambda_lower), decimal_string(b.lambda_lower)});
  rows.push_back({"lambda_upper", to_string(b.lambda_upper), decimal_string(b.lambda_upper)});
  rows.push_back({"v_bar", to_string(m.grid().value(b.i_bar)),
                  "(index " + std::to_string(b.i_bar) + ")"});
  rows.push_back({"v_low", to_string(m.grid().value(b.i_low)),
                  "(index " + std::to_string(b.i_low) + ")"});
  rows.push_back({"max labels", max_label_count(b).str(), ""});
  rows.push_back({"nontrivial WC nonempty", nontrivial_wc_nonempty(b) ? "yes" : "no", ""});
  rows.push_back({"F2 nonempty", f2_nonempty(b) ? "yes" : "no", ""});
  emit(render_table(rows), args.out_path);
  return 0;
}

int run_segment(const CommonArgs& args) {
  const Market m = market_from_file(args.market_path);
  const GreedyDecomposition d = greedy_decompose(m);

  // In-process soundness check before anything is printed.
  std::vector<Rational> mix(m.size(), Rational(0));
  for (const GreedyStep& st : d.steps)
    for (std::size_t i = 0; i < m.size(); ++i) mix[i] += st.mass * st.extreme.masses()[i];
  for (std::size_t i = 0; i < m.size(); ++i)
    if (mix[i] != m.masses()[i]) {
      std::cerr << "decomposition identity violated at index " << i + 1 << '\n';
      return kExitMismatch;
    }

  if (args.format == "json") {
    emit(decomposition_to_json(d).dump(2), args.out_path);
    return 0;
  }
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header{"extreme market"};
  for (const Rational& v : m.grid().values()) header.push_back("v=" + to_string(v));
  header.push_back("mass");
  rows.push_back(std::move(header));
  for (const GreedyStep& st : d.steps) {
    std::string name = "x{";
    for (std::size_t i = 0; i < st.support.size(); ++i) {
      if (i) name += ",";
      name += to_string(m.grid().value(st.support[i]));
    }
    name += "}";
    std::vector<std::string> row{std::move(name)};
    for (const Rational& q : st.extreme.masses()) row.push_back(to_string(q));
    row.push_back(to_string(st.mass));
    rows.push_back(std::move(row));
  }
  std::vector<std::string> total{"aggregate"};
  for (const Rational& q : m.masses()) total.push_back(to_string(q));
  total.push_back("1");
  rows.push_back(std::move(total));
  emit(render_table(rows) + decomposition_to_json(d).dump() + "\n", args.out_path);
  return 0;
}

int run_classify(const CommonArgs& args) {
  const Market m = market_from_file(args.market_path);
  const Database f = database_from_file(args.database_path);
  const Bounds b = compute_bounds(m);
  Classification c;
  if (!args.alpha.empty())
    c = classify_weighted(m, f, parse_rational(args.alpha));
  else
    c = classify_with_bounds(b, f);
  emit(classification_to_json(c, b, m.grid()).dump(2), args.out_path);
  return c.in_wc ? 0 : kExitNotWorstCase;
}

int run_witness(const CommonArgs& args, const std::string& direction, std::size_t label) {
  const Market m = market_from_file(args.market_path);
  const Database f = database_from_file(args.database_path);
  const Bounds b = compute_bounds(m);

  if (label == 0) {  // smallest eligible label, else the minimum-mass label
    const Rational threshold = direction == "reduce" ? b.lambda_lower : b.lambda_upper;
    std::size_t fallback = 1;
    for (std::size_t s = 1; s <= f.labels(); ++s) {
      if (direction == "reduce" ? f.mass(s) <= threshold : f.mass(s) < threshold) {
        label = s;
        break;
      }
      if (f.mass(s) < f.mass(fallback)) fallback = s;
    }
    if (label == 0) label = fallback;
  }

  const Segmentation seg = direction == "reduce" ? construct_cs_reducing(m, f, label)
                                                 : construct_cs_improving(m, f, label);
  const SegmentationOutcome out = evaluate(m, seg);
  const bool strict = direction == "reduce"
                          ? out.cs < b.u_star && out.prices[label - 1] > b.i_star
                          : out.cs > b.u_star && out.ps > b.pi_star;
  if (!strict) {
    std::cerr << "witness failed its strict inequality\n";
    return kExitMismatch;
  }
  json doc{{"direction", direction},
           {"label", label},
           {"segmentation", segmentation_to_json(seg)},
           {"outcome", outcome_to_json(out, m.grid())},
           {"u_star", to_string(b.u_star)},
           {"pi_star", to_string(b.pi_star)}};
  emit(doc.dump(2), args.out_path);
  return 0;
}

int run_verify(const CommonArgs& args) {
  const Market m = market_from_file(args.market_path);
  const Database f = database_from_file(args.database_path);
  const Bounds b = compute_bounds(m);
  const Classification c = classify_with_bounds(b, f);
  const OracleOptions opts = oracle_options();
  const OracleVerdict v = oracle_classify(m, f, Rational(1), opts);

  bool all_ok = true;
  const auto report = [&](const std::string& name, bool ok, const std::string& detail) {
    std::cout << name << ' ' << detail << (ok ? " PASS" : " FAIL") << '\n';
    all_ok = all_ok && ok;
  };

  const bool th1 = v.wc == c.in_wc && (v.wc || v.worst.value < b.u_star);
  report("WORST_CASE", th1,
         "inf_cs=" + to_string(v.worst.value) + " u*=" + to_string(b.u_star) +
             " bound_wc=" + (c.in_wc ? "true" : "false"));
  if (v.wc) {
    report("IMPROVEMENT", v.f2 == c.in_f2,
           "sup_cs=" + to_string(v.best->value) + " bound_f2=" + (c.in_f2 ? "true" : "false"));
    const PriceIndex worst_vertex =
        std::max(v.worst.max_vertex_price, v.best->max_vertex_price);
    report("PRICE_CAP", worst_vertex <= b.i_star,
           "max_vertex_price=" + to_string(m.grid().value(worst_vertex)));
  }
  if (f.labels() == 1)
    report("TRIVIAL_DB", v.worst.value == b.u_star && v.best && v.best->value == b.u_star,
           "trivial database pins surplus at u*");
  if (!args.alpha.empty()) {
    const Rational alpha = parse_rational(args.alpha);
    const OracleVerdict w = oracle_classify(m, f, alpha, opts);
    if (alpha < Rational(1) / 2 || alpha > 1) throw AlphaOutOfRange(to_string(alpha));
    report("WEIGHTED", w.wc == c.in_wc && (!w.wc || w.f2 == c.in_f2),
           "alpha=" + to_string(alpha) + " wc=" + (w.wc ? "true" : "false") +
               " f2=" + (w.f2 ? "true" : "false"));
  }
  std::cout << (all_ok ? "VERDICT PASS" : "VERDICT FAIL") << '\n';
  return all_ok ? 0 : kExitMismatch;
}

int run_sweep(const CommonArgs& args, std::size_t steps) {
  const std::vector<SweepRow> rows = lambda_sweep(steps);
  const ValuationGrid grid({Rational(1), Rational(2), Rational(3)});
  if (args.format == "json") {
    json arr = json::array();
    for (const SweepRow& r : rows)
      arr.push_back(json{{"x3", to_string(r.x3)},
                         {"lambda_lower", to_string(r.lambda_lower)},
                         {"lambda_lower_dec", to_double(r.lambda_lower)},
                         {"monopoly_price", to_string(grid.value(r.i_star))}});
    emit(arr.dump(2), args.out_path);
    return 0;
  }
  std::ostringstream csv;
  csv << "x3,lambda_lower,lambda_lower_dec,monopoly_price\n";
  for (const SweepRow& r : rows)
    csv << csv_quote(r.x3) << ',' << csv_quote(r.lambda_lower) << ','
        << decimal_string(r.lambda_lower) << ',' << csv_quote(grid.value(r.i_star)) << '\n';
  emit(csv.str(), args.out_path);
  return 0;
}

int run_triangle(const CommonArgs& args, std::size_t samples, std::uint64_t seed) {
  const Market m = market_from_file(args.market_path);
  const Database f = database_from_file(args.database_path);
  const std::vector<TrianglePoint> points =
      triangle_sample(m, f, samples, seed, oracle_options());
  std::ostringstream csv;
  csv << "kind,ps,cs,ps_dec,cs_dec\n";
  for (const TrianglePoint& p : points)
    csv << p.kind << ',' << csv_quote(p.ps) << ',' << csv_quote(p.cs) << ','
        << decimal_string(p.ps) << ',' << decimal_string(p.cs) << '\n';
  emit(csv.str(), args.out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact tools for worst-case analysis of third-degree price discrimination "
               "under data-access regulation"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string direction = "reduce";
  std::size_t label = 0;
  std::size_t steps = 10;
  std::size_t samples = 64;
  std::uint64_t seed = 12345;

  const auto add_market = [&](CLI::App* cmd) {
    cmd->add_option("--market", args.market_path, "market JSON file")->required();
  };
  const auto add_database = [&](CLI::App* cmd) {
    cmd->add_option("--database", args.database_path, "database JSON file")->required();
  };
  const auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--format", args.format, "output format (json|table|csv)")
        ->check(CLI::IsMember({"json", "table", "csv"}));
    cmd->add_option("--out", args.out_path, "write output to file instead of stdout");
  };

  CLI::App* analyze = app.add_subcommand("analyze", "robust bounds and surplus quantities");
  add_market(analyze);
  add_common(analyze);

  CLI::App* segment = app.add_subcommand("segment", "greedy extreme-market decomposition");
  add_market(segment);
  add_common(segment);

  CLI::App* classify_cmd = app.add_subcommand("classify", "WC / F2 / undominated verdict");
  add_market(classify_cmd);
  add_database(classify_cmd);
  classify_cmd->add_option("--alpha", args.alpha, "weight on consumer surplus, in [1/2,1]");
  add_common(classify_cmd);

  CLI::App* witness = app.add_subcommand("witness", "construct an adversarial segmentation");
  add_market(witness);
  add_database(witness);
  witness->add_option("--direction", direction, "reduce|improve")
      ->check(CLI::IsMember({"reduce", "improve"}));
  witness->add_option("--label", label, "1-based target label (default: first eligible)");
  add_common(witness);

  CLI::App* verify = app.add_subcommand("verify", "cross-check thresholds against the LP oracle");
  add_market(verify);
  add_database(verify);
  verify->add_option("--alpha", args.alpha, "also verify the weighted objective");
  add_common(verify);

  CLI::App* sweep = app.add_subcommand("sweep", "lambda_lower over the x3 family, CSV");
  sweep->add_option("--x3-steps", steps, "grid points in (0, 1/10]")->check(CLI::Range(2, 1000000));
  add_common(sweep);

  CLI::App* triangle = app.add_subcommand("triangle", "sampled (ps, cs) surplus points, CSV");
  add_market(triangle);
  add_database(triangle);
  triangle->add_option("--samples", samples, "number of sampled vertices");
  triangle->add_option("--seed", seed, "RNG seed");
  add_common(triangle);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze) return run_analyze(args);
    if (*segment) return run_segment(args);
    if (*classify_cmd) return run_classify(args);
    if (*witness) return run_witness(args, direction, label);
    if (*verify) return run_verify(args);
    if (*sweep) return run_sweep(args, steps);
    if (*triangle) return run_triangle(args, samples, seed);
  } catch (const EnumerationTooLarge& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitEnumeration;
  } catch (const LabelNotBinding& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConstructor;
  } catch (const LabelNotQualifying& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConstructor;
  } catch (const TrivialDatabase& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConstructor;
  } catch (const NotWorstCaseOptimal& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConstructor;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return 0;
}
