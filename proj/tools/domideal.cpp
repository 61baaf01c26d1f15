// domideal command-line tool.

#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "domideal.hpp"

using namespace domideal;

namespace {

// Exit status for usage and input errors. is-dominant reserves 0 and 1 for
// its answer.
constexpr int kExitError = 2;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Variable names for parsing `text`: explicit --vars, else letters used in the
// text, else x1..xn sized from tuples or x<k> tokens.
VariableNames names_for(const std::string& text, const std::string& vars) {
  if (!vars.empty()) return VariableNames::from_spec(vars);
  if (auto inferred = infer_letter_names(text)) return *inferred;
  const auto gens = split_generators(text);
  if (gens.empty()) throw parse_error("no generators given");
  if (gens.front().front() == '[') {
    const std::size_t n = static_cast<std::size_t>(std::count(gens.front().begin(), gens.front().end(), ',')) + 1;
    return VariableNames::indexed(n);
  }
  std::size_t n = 0;
  for (std::size_t i = 0; i + 1 < text.size(); ++i) {
    if (text[i] != 'x' || !std::isdigit(static_cast<unsigned char>(text[i + 1]))) continue;
    std::size_t k{};
    std::from_chars(text.data() + i + 1, text.data() + text.size(), k);
    n = std::max(n, k);
  }
  if (n == 0) throw parse_error("cannot infer variables from '" + text + "'; pass --vars");
  return VariableNames::indexed(n);
}

struct IdealInput {
  std::string text;
  std::string file;
  std::string vars;

  void attach(CLI::App* cmd) {
    cmd->add_option("ideal", text, "Generators, e.g. \"x^2*y, x*z^3\" or \"[2,1,0],[1,0,3]\"");
    cmd->add_option("-f,--file", file, "Read the generators from a file");
    cmd->add_option("--vars", vars, "Variable names, e.g. xyz or x,y,z");
  }

  std::pair<MinimalMonomialSet, VariableNames> read() const {
    if (text.empty() == file.empty()) throw CLI::ValidationError("give the ideal inline or with --file (exactly one)");
    const std::string src = file.empty() ? text : slurp(file);
    auto names = names_for(src, vars);
    return {minimalize(names.size(), parse_generators(src, names)), names};
  }
};

Monomial parse_lcm(const std::string& s) {
  std::string t = s;
  if (t.empty() || t.front() != '[') t = "[" + t + "]";
  const auto n = static_cast<std::size_t>(std::count(t.begin(), t.end(), ',')) + 1;
  return parse_monomial(t, n);
}

VariableNames default_names(std::size_t n, const std::string& vars) {
  if (!vars.empty()) return VariableNames::from_spec(vars);
  return n <= 3 ? VariableNames::letters(std::string("xyz").substr(0, n)) : VariableNames::indexed(n);
}

// "3..15", "3,5,7" or a mix such as "2,4..6".
template <class T>
std::vector<T> parse_list(const std::string& s) {
  std::vector<T> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    auto dots = tok.find("..");
    if (dots == std::string::npos) {
      out.push_back(static_cast<T>(std::stoull(tok)));
      continue;
    }
    const auto lo = std::stoull(tok.substr(0, dots)), hi = std::stoull(tok.substr(dots + 2));
    if (lo > hi) throw CLI::ValidationError("empty range '" + tok + "'");
    for (auto v = lo; v <= hi; ++v) out.push_back(static_cast<T>(v));
  }
  if (out.empty()) throw CLI::ValidationError("empty list '" + s + "'");
  return out;
}

std::vector<double> parse_doubles(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dominant monomial ideals: dominance tests, lcm enumeration, counting, primes and random models"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  app.add_flag("--json", as_json, "Machine-readable output")->capture_default_str();
  unsigned threads = 0;
  app.add_option("--threads", threads, "Worker threads (0 = all cores)");

  // is-dominant
  auto* cmd_dom = app.add_subcommand("is-dominant", "Decide whether an ideal is dominant (exit 0 yes, 1 no)");
  IdealInput dom_in;
  dom_in.attach(cmd_dom);

  // enumerate-lcm
  auto* cmd_enum = app.add_subcommand("enumerate-lcm", "List every dominant ideal with the given lcm");
  std::string enum_lcm, enum_vars;
  cmd_enum->add_option("--lcm", enum_lcm, "lcm exponents, e.g. 2,3,4")->required();
  cmd_enum->add_option("--vars", enum_vars, "Variable names");

  // count
  auto* cmd_count = app.add_subcommand("count", "Count dominant ideals with the given lcm by formula and enumeration");
  std::string count_lcm;
  cmd_count->add_option("--lcm", count_lcm, "lcm exponents, e.g. 2,3,4")->required();

  // formula
  auto* cmd_formula = app.add_subcommand("formula", "Print the counting polynomial in m1..mn");
  std::size_t formula_n = 0;
  std::string formula_source = "auto";
  cmd_formula->add_option("--n", formula_n, "Number of variables")->required()->check(CLI::Range(1, 64));
  cmd_formula->add_option("--source", formula_source, "closed, symbolic or auto")
      ->check(CLI::IsMember({"auto", "closed", "symbolic"}));
  bool formula_compare = false;
  cmd_formula->add_flag("--compare", formula_compare, "Diff the closed form against the regenerated polynomial");

  // histogram
  auto* cmd_hist = app.add_subcommand("histogram", "Group dominant ideals with the given lcm by shape");
  std::string hist_lcm, hist_vars, hist_kind = "footprint";
  cmd_hist->add_option("--lcm", hist_lcm, "lcm exponents, e.g. 2,3,4")->required();
  cmd_hist->add_option("--kind", hist_kind, "footprint or low-or-max")->check(CLI::IsMember({"footprint", "low-or-max"}));
  cmd_hist->add_option("--vars", hist_vars, "Variable names");

  // assoc-heights
  auto* cmd_assoc = app.add_subcommand("assoc-heights", "Heights of associated primes via dominating witnesses");
  IdealInput assoc_in;
  assoc_in.attach(cmd_assoc);
  bool assoc_oracle = false;
  cmd_assoc->add_flag("--oracle", assoc_oracle, "Cross-check against the colon-quotient scan");

  // pdim-max
  auto* cmd_pdim = app.add_subcommand("pdim-max", "Decide whether pd(S/I) equals the number of variables");
  IdealInput pdim_in;
  pdim_in.attach(cmd_pdim);

  // sample
  auto* cmd_sample = app.add_subcommand("sample", "Draw random monomial ideals");
  std::string sample_model = "basic", sample_spec_file, sample_vars;
  std::size_t sample_n = 3, sample_degree = 2, sample_count = 1;
  double sample_p = 0.5;
  std::uint64_t sample_g = 0, sample_seed = 0, sample_stream = 0;
  cmd_sample->add_option("--model", sample_model, "basic, graded or fixed-count")
      ->check(CLI::IsMember({"basic", "graded", "fixed-count"}));
  cmd_sample->add_option("--spec", sample_spec_file, "Model spec as a JSON file");
  cmd_sample->add_option("--n", sample_n, "Number of variables");
  cmd_sample->add_option("--degree", sample_degree, "Maximum degree (basic) or the generator degree");
  cmd_sample->add_option("--p", sample_p, "Probability (basic) or top-degree probability (graded)");
  cmd_sample->add_option("--g", sample_g, "Generator count (fixed-count)");
  cmd_sample->add_option("--count", sample_count, "Number of samples");
  auto* seed_opt = cmd_sample->add_option("--seed", sample_seed, "Seed (default: $DOMIDEAL_SEED or 0)");
  cmd_sample->add_option("--stream", sample_stream, "First stream index");
  cmd_sample->add_option("--vars", sample_vars, "Variable names");

  // experiment
  auto* cmd_exp = app.add_subcommand("experiment", "Run a dominance-frequency sweep");
  std::string exp_config, exp_model, exp_n, exp_degrees, exp_grid, exp_p, exp_g, exp_output, exp_format;
  std::size_t exp_samples = 0;
  std::uint64_t exp_seed = 0;
  double exp_timeout = 0;
  bool exp_legacy = false;
  cmd_exp->add_option("--config", exp_config, "JSON config file; flags override its fields");
  cmd_exp->add_option("--model", exp_model, "basic, graded or fixed-count");
  cmd_exp->add_option("--n", exp_n, "Variable counts, e.g. 3 or 3..10");
  cmd_exp->add_option("--degrees", exp_degrees, "Degrees, e.g. 3..15");
  cmd_exp->add_option("--grid", exp_grid, "basic-grid, graded-grid or explicit");
  cmd_exp->add_option("--p", exp_p, "Explicit probabilities, comma separated");
  cmd_exp->add_option("--g", exp_g, "Generator counts (fixed-count), e.g. 3..6");
  cmd_exp->add_option("--samples", exp_samples, "Samples per grid point");
  auto* exp_seed_opt = cmd_exp->add_option("--seed", exp_seed, "Seed (default: $DOMIDEAL_SEED or 0)");
  cmd_exp->add_option("-o,--output", exp_output, "Output file (stdout if omitted)");
  cmd_exp->add_option("--format", exp_format, "csv or jsonl");
  cmd_exp->add_flag("--legacy-format", exp_legacy, "Tuple-per-line output");
  cmd_exp->add_option("--timeout", exp_timeout, "Per-point time limit in seconds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  EnumerationOptions opts;
  opts.threads = threads;

  try {
    if (*cmd_dom) {
      auto [ideal, names] = dom_in.read();
      const bool dominant = is_dominant_ideal(ideal);
      if (as_json) {
        json gens = json::array();
        for (const auto& g : ideal) {
          gens.push_back({{"generator", render(g, names)}, {"dominant_variables", json::array()}});
          for (auto v : dominant_variables(g, ideal.gens())) gens.back()["dominant_variables"].push_back(names[v]);
        }
        std::cout << json{{"ideal", render_ideal(ideal, names)}, {"dominant", dominant}, {"generators", gens}}.dump()
                  << '\n';
      } else {
        std::cout << (dominant ? "true" : "false") << '\n';
      }
      return dominant ? 0 : 1;
    }

    if (*cmd_enum) {
      const LcmTarget target(parse_lcm(enum_lcm));
      const auto names = default_names(target.nvars(), enum_vars);
      for (const auto& ideal : enumerate_dominant_with_lcm(target, opts)) {
        if (as_json) {
          json gens = json::array();
          for (const auto& g : ideal) gens.push_back(to_json(g));
          std::cout << gens.dump() << '\n';
        } else {
          std::cout << render_ideal(ideal, names) << '\n';
        }
      }
      return 0;
    }

    if (*cmd_count) {
      const LcmTarget target(parse_lcm(count_lcm));
      const std::size_t n = target.nvars();
      const auto enumerated = count_dominant_with_lcm(target, opts);
      std::vector<std::uint64_t> point(target.monomial().vector().begin(), target.monomial().vector().end());
      std::optional<std::uint64_t> formula;
      std::string label = "formula";
      if (n >= 2 && n <= 5) {
        formula = closed_count(target);
      } else if (n <= kMaxSymbolicVariables) {
        formula = symbolic_formula(n, opts).evaluate(point);
        label = "symbolic";
      }
      const bool agree = !formula || *formula == enumerated;
      if (as_json) {
        std::cout << json{{"lcm", target.monomial().vector()},
                          {label, formula ? json(*formula) : json(nullptr)},
                          {"enumeration", enumerated},
                          {"agree", agree}}
                         .dump()
                  << '\n';
      } else if (formula) {
        std::cout << *formula << " (" << label << ") / " << enumerated << " (enumeration) "
                  << (agree ? "agree" : "DISAGREE") << '\n';
      } else {
        std::cout << enumerated << " (enumeration)\n";
      }
      return agree ? 0 : 1;
    }

    if (*cmd_formula) {
      const bool closed_available = formula_n >= 2 && formula_n <= 5;
      std::string src = formula_source;
      if (src == "auto") src = closed_available ? "closed" : "symbolic";
      if (src == "closed" && !closed_available)
        throw std::invalid_argument("closed forms exist for n = 2..5 only; use --source symbolic");
      const auto poly = src == "closed" ? closed_form_polynomial(formula_n) : symbolic_formula(formula_n, opts);
      std::vector<TermDifference> diffs;
      if (formula_compare) {
        if (!closed_available) throw std::invalid_argument("--compare needs n in 2..5");
        diffs = diff_terms(closed_form_polynomial(formula_n), symbolic_formula(formula_n, opts));
      }
      if (as_json) {
        json j = to_json(poly);
        j["source"] = src;
        if (formula_compare) {
          FormulaComparison r;
          r.differing_terms = diffs;
          j["differing_terms"] = to_json(r)["differing_terms"];
        }
        std::cout << j.dump() << '\n';
      } else {
        std::cout << poly.render() << '\n';
        if (formula_compare) {
          if (diffs.empty()) std::cout << "closed form matches the regenerated polynomial term by term\n";
          for (const auto& d : diffs)
            std::cout << "  " << CountPolynomial::render_monomial(d.term) << ": closed " << d.printed << ", regenerated "
                      << d.regenerated << '\n';
        }
      }
      return diffs.empty() ? 0 : 1;
    }

    if (*cmd_hist) {
      const LcmTarget target(parse_lcm(hist_lcm));
      const auto names = default_names(target.nvars(), hist_vars);
      std::vector<std::pair<std::uint64_t, std::vector<std::string>>> rows;
      json j;
      if (hist_kind == "footprint") {
        const auto h = footprint_histogram(target, opts);
        j = to_json(h, names);
        for (const auto& r : h) rows.emplace_back(r.count, r.key.render(names));
      } else {
        const auto h = low_or_max_histogram(target, opts);
        j = to_json(h);
        for (const auto& r : h) rows.emplace_back(r.count, r.key.render());
      }
      if (as_json) {
        std::cout << j.dump(2) << '\n';
      } else {
        std::uint64_t total = 0;
        for (const auto& [count, key] : rows) {
          total += count;
          std::cout << std::setw(8) << count << "  [";
          for (std::size_t i = 0; i < key.size(); ++i) std::cout << (i ? ", " : "") << key[i];
          std::cout << "]\n";
        }
        std::cout << std::setw(8) << total << "  total\n";
      }
      return 0;
    }

    if (*cmd_assoc) {
      auto [ideal, names] = assoc_in.read();
      json witnesses = json::array();
      std::set<std::size_t> heights;
      for (std::size_t k = 1; k <= ideal.nvars(); ++k) {
        if (auto w = dominating_witness(ideal, k)) {
          heights.insert(k);
          witnesses.push_back(to_json(*w, names));
          witnesses.back()["height"] = k;
          if (!as_json) {
            std::cout << "height " << k << ": L = (";
            for (std::size_t j = 0; j < w->gens.size(); ++j) std::cout << (j ? ", " : "") << render(w->gens[j], names);
            std::cout << "), I : (" << render(w->annihilated, names) << ") = (";
            for (std::size_t j = 0; j < w->vars.size(); ++j) std::cout << (j ? ", " : "") << names[w->vars[j]];
            std::cout << ")\n";
          }
        }
      }
      bool agree = true;
      json oracle_json;
      if (assoc_oracle) {
        std::set<std::size_t> oracle_heights;
        oracle_json = json::array();
        for (const auto& prime : associated_primes_oracle(ideal)) {
          oracle_heights.insert(prime.size());
          json vars = json::array();
          for (auto v : prime) vars.push_back(names[v]);
          oracle_json.push_back(vars);
        }
        agree = oracle_heights == heights;
        if (!as_json) {
          std::cout << "associated primes (colon scan):";
          for (const auto& p : oracle_json) {
            std::cout << " (";
            for (std::size_t i = 0; i < p.size(); ++i) std::cout << (i ? ", " : "") << p[i].get<std::string>();
            std::cout << ")";
          }
          std::cout << '\n' << (agree ? "heights agree" : "HEIGHTS DISAGREE") << '\n';
        }
      }
      if (as_json) {
        json j = {{"ideal", render_ideal(ideal, names)}, {"heights", heights}, {"witnesses", witnesses}};
        if (assoc_oracle) {
          j["oracle_primes"] = oracle_json;
          j["agree"] = agree;
        }
        std::cout << j.dump() << '\n';
      } else if (heights.empty()) {
        std::cout << "no associated primes found\n";
      }
      return agree ? 0 : 1;
    }

    if (*cmd_pdim) {
      auto [ideal, names] = pdim_in.read();
      const bool max = pdim_is_max(ideal);
      const auto sub = max_dominant_subset(ideal.gens());
      const auto bound = localization_pdim_bound(ideal);
      if (as_json) {
        json witness = json::array();
        for (const auto& g : sub.witness) witness.push_back(render(g, names));
        std::cout << json{{"ideal", render_ideal(ideal, names)},
                          {"pdim_is_max", max},
                          {"max_dominant_subset", sub.size},
                          {"max_dominant_witness", witness},
                          {"localization_bound", bound ? json(*bound) : json(nullptr)}}
                         .dump()
                  << '\n';
      } else {
        std::cout << (max ? "true" : "false") << '\n';
        std::cout << "largest dominant subset: " << sub.size << '\n';
        if (bound) std::cout << "localization bound (heuristic): pd <= " << *bound << '\n';
      }
      return 0;
    }

    if (*cmd_sample) {
      ModelSpec spec;
      if (!sample_spec_file.empty()) {
        spec = model_from_json(json::parse(slurp(sample_spec_file)));
      } else if (sample_model == "basic") {
        spec = BasicModel{sample_n, sample_degree, sample_p};
      } else if (sample_model == "graded") {
        spec = graded_single(sample_n, sample_degree, sample_p);
      } else {
        spec = fixed_count_single(sample_n, sample_degree, sample_g);
      }
      validate(spec);
      const std::uint64_t seed = seed_opt->count() ? sample_seed : default_seed();
      const auto names = default_names(model_nvars(spec), sample_vars);
      for (std::size_t i = 0; i < sample_count; ++i) {
        const SeedSpec s{seed, sample_stream + i};
        const auto ideal = sample(spec, s);
        const bool dominant = is_dominant_ideal(ideal);
        if (as_json) {
          json j = to_json(ideal);
          j["dominant"] = dominant;
          j["seed"] = s.seed;
          j["stream"] = s.stream;
          std::cout << j.dump() << '\n';
        } else {
          std::cout << render_ideal(ideal, names) << (dominant ? "  dominant" : "") << '\n';
        }
      }
      return 0;
    }

    if (*cmd_exp) {
      ExperimentConfig config = exp_config.empty() ? ExperimentConfig{} : config_from_json(json::parse(slurp(exp_config)));
      if (exp_config.empty()) config.seed = default_seed();
      if (!exp_model.empty()) {
        config.model = parse_model_kind(exp_model);
        if (exp_grid.empty() && config.model == ModelKind::Graded) config.source = GridSource::GradedGrid;
      }
      if (!exp_n.empty()) config.nvars = parse_list<std::size_t>(exp_n);
      if (!exp_degrees.empty()) config.degrees = parse_list<std::size_t>(exp_degrees);
      if (!exp_p.empty()) {
        config.probabilities = parse_doubles(exp_p);
        if (exp_grid.empty()) config.source = GridSource::Explicit;
      }
      if (!exp_grid.empty()) config.source = parse_grid_source(exp_grid);
      if (!exp_g.empty()) config.generator_counts = parse_list<std::uint64_t>(exp_g);
      if (exp_samples) config.sample_size = exp_samples;
      if (exp_seed_opt->count()) config.seed = exp_seed;
      if (!exp_output.empty()) config.output = exp_output;
      if (!exp_format.empty()) config.format = parse_output_format(exp_format);
      if (exp_legacy) config.format = OutputFormat::Legacy;
      if (threads) config.threads = threads;
      if (exp_timeout > 0) config.point_timeout_seconds = exp_timeout;
      const auto rows = config.output.empty() ? write_experiment(config, std::cout) : write_experiment(config);
      if (!config.output.empty()) {
        std::size_t skipped = 0;
        for (const auto& r : rows) skipped += r.skipped;
        std::cerr << rows.size() << " rows written to " << config.output << " (" << skipped << " skipped)\n";
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return 0;
}
