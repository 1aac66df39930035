// gtr: question-order model toolkit.
//
// Subcommands: fit, forward, equalities, simulate, replicate, unpack,
// datasets. Exit codes: 0 success, 2 parse/validation error, 3 infeasible
// model, 4 degenerate data, 5 impossible forced outcome.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gtr/gtr.hpp"
#include "gtr/json_io.hpp"

namespace {

using namespace gtr;

constexpr int kExitParse = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitDegenerate = 4;
constexpr int kExitImpossible = 5;

struct CommonOpts {
  std::string format = "table";
};

void add_format_flag(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"table", "json"}))
      ->capture_default_str();
}

void emit(const json& report, const CommonOpts& opts, const std::string& table_text) {
  if (opts.format == "json")
    std::cout << report.dump(2) << "\n";
  else
    std::cout << table_text;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("GTR_SEED")) {
    try {
      return std::stoull(env);
    } catch (...) {
      throw parse_error("GTR_SEED must be a non-negative integer");
    }
  }
  return 0;
}

ExperimentDataset resolve_dataset(const std::string& name, const std::string& file) {
  if (!name.empty() && !file.empty())
    throw parse_error("give either --dataset or --probs, not both");
  if (!name.empty()) {
    if (const ExperimentDataset* d = find_builtin_dataset(name)) return *d;
    throw parse_error("unknown builtin dataset \"" + name + "\"; see `gtr datasets`");
  }
  if (!file.empty()) return load_dataset(file);
  throw parse_error("a dataset is required: --dataset <name> or --probs <file>");
}

std::vector<double> parse_number_list(const std::string& text, std::size_t count, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(item, &pos));
      while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (...) {
      throw parse_error(std::string(what) + ": cannot parse \"" + item + "\" as a number");
    }
  }
  if (out.size() != count)
    throw parse_error(std::string(what) + ": expected " + std::to_string(count) + " comma-separated values");
  return out;
}

std::string format_four(const FourProbs& p) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "yy=%-12.10g yn=%-12.10g ny=%-12.10g nn=%-12.10g", p.yy, p.yn, p.ny,
                p.nn);
  return buf;
}

json feasibility_to_json(const FeasibilityReport& rep) {
  json constraints = json::array();
  for (const auto& c : rep.constraints) constraints.push_back({{"name", c.name}, {"pass", c.pass}});
  return {{"born_compatible", rep.born_compatible},
          {"same_distribution_possible", rep.same_distribution_possible},
          {"constraints", constraints},
          {"admissible_epsilon_a",
           {{"lo", rep.admissible_eps_a.lo}, {"hi", rep.admissible_eps_a.hi}}}};
}

// ---- fit ------------------------------------------------------------------

int cmd_fit(const std::string& dataset_name, const std::string& probs_file, double epsilon_a,
            const std::string& params_out, const CommonOpts& opts) {
  const ExperimentDataset dataset = resolve_dataset(dataset_name, probs_file);
  const SequentialProbTable table = dataset.to_table();
  const RatioSolution ratios = fit_ratios(table);
  const FeasibilityReport feas = feasibility_report(ratios, epsilon_a);

  json report{{"dataset", dataset.name},
              {"epsilon_a", epsilon_a},
              {"ratios", to_json(ratios)},
              {"feasibility", feasibility_to_json(feas)}};

  std::ostringstream text;
  text << "dataset: " << dataset.name << "\n"
       << "ratios:\n"
       << "  d_A/eps_A          = " << ratios.da_over_ea << "\n"
       << "  cos_theta_A/eps_A  = " << ratios.costhetaa_over_ea << "\n"
       << "  cos_theta/eps_A    = " << ratios.costheta_over_ea << "\n"
       << "  d_B/eps_B          = " << ratios.db_over_eb << "\n"
       << "  cos_theta_B/eps_B  = " << ratios.costhetab_over_eb << "\n"
       << "  cos_theta/eps_B    = " << ratios.costheta_over_eb << "\n";

  const ModelParams params = concretize(ratios, epsilon_a);  // throws infeasible_error if bad
  report["params"] = to_json(params);
  text << "params at eps_A = " << epsilon_a << ":\n"
       << "  eps_B = " << params.eps_b << "  d_A = " << params.d_a << "  d_B = " << params.d_b << "\n"
       << "  cos_theta_A = " << params.cos_theta_a << "  cos_theta_B = " << params.cos_theta_b
       << "  cos_theta = " << params.cos_theta << "\n";

  text << "feasibility:\n"
       << "  born_compatible             = " << (feas.born_compatible ? "yes" : "no") << "\n"
       << "  same_distribution_possible  = " << (feas.same_distribution_possible ? "yes" : "no") << "\n"
       << "  admissible eps_A            = (" << feas.admissible_eps_a.lo << ", "
       << feas.admissible_eps_a.hi << "]\n";
  for (const auto& c : feas.constraints)
    text << "  [" << (c.pass ? "pass" : "FAIL") << "] " << c.name << "\n";

  try {
    const BlochEmbedding emb = embed_bloch(params);
    report["embedding"] = {{"x_psi", {emb.x_psi.x, emb.x_psi.y, emb.x_psi.z}},
                           {"a_y", {emb.a_y.x, emb.a_y.y, emb.a_y.z}},
                           {"b_y", {emb.b_y.x, emb.b_y.y, emb.b_y.z}}};
    text << "bloch embedding:\n"
         << "  x_psi = (" << emb.x_psi.x << ", " << emb.x_psi.y << ", " << emb.x_psi.z << ")\n"
         << "  a_y   = (" << emb.a_y.x << ", " << emb.a_y.y << ", " << emb.a_y.z << ")\n"
         << "  b_y   = (" << emb.b_y.x << ", " << emb.b_y.y << ", " << emb.b_y.z << ")\n";
  } catch (const infeasible_error& e) {
    report["embedding"] = nullptr;
    text << "bloch embedding: none (" << e.what() << ")\n";
  }

  if (!params_out.empty()) {
    std::ofstream out(params_out);
    if (!out) throw parse_error("cannot write " + params_out);
    out << json{{"ratios", to_json(ratios)}}.dump(2) << "\n";
    text << "ratios written to " << params_out << "\n";
  }

  emit(report, opts, text.str());
  return 0;
}

// ---- forward --------------------------------------------------------------

int cmd_forward(const std::string& params_file, const std::string& order, const CommonOpts& opts) {
  const ParameterInput input = load_parameter_input(params_file);
  const RatioSolution ratios = input.ratios ? *input.ratios : input.params->ratios();

  json report;
  std::ostringstream text;
  if (order == "ab" || order == "both") {
    const FourProbs p = sequential_probabilities(ratios, Order::AB);
    report["order_ab"] = to_json(p);
    text << "order AB: " << format_four(p) << "\n";
  }
  if (order == "ba" || order == "both") {
    const FourProbs p = sequential_probabilities(ratios, Order::BA);
    report["order_ba"] = to_json(p);
    text << "order BA: " << format_four(p) << "\n";
  }
  emit(report, opts, text.str());
  return 0;
}

// ---- equalities -----------------------------------------------------------

int cmd_equalities(const std::string& dataset_name, const std::string& probs_file, double q_threshold,
                   double q_prime_threshold, const CommonOpts& opts) {
  const ExperimentDataset dataset = resolve_dataset(dataset_name, probs_file);
  const SequentialProbTable table = dataset.to_table();
  const double q = qq_statistic(table);
  const double qp = q_prime_statistic(table);
  const bool q_holds = std::abs(q) <= q_threshold;
  const bool qp_holds = std::abs(qp) <= q_prime_threshold;

  const json report{{"dataset", dataset.name},
                    {"q", q},
                    {"q_threshold", q_threshold},
                    {"q_holds", q_holds},
                    {"q_prime", qp},
                    {"q_prime_threshold", q_prime_threshold},
                    {"q_prime_holds", qp_holds}};

  std::ostringstream text;
  text << "dataset: " << dataset.name << "\n"
       << "q       = " << q << "  (|q| <= " << q_threshold << ": " << (q_holds ? "holds" : "violated")
       << ")\n"
       << "q_prime = " << qp << "  (|q'| <= " << q_prime_threshold << ": "
       << (qp_holds ? "holds" : "violated") << ")\n";
  emit(report, opts, text.str());
  return 0;
}

// ---- simulate ---------------------------------------------------------------

json estimate_to_json(const EstimateReport& rep) {
  const char* keys[4] = {"yy", "yn", "ny", "nn"};
  json counts, estimates, errors;
  for (int k = 0; k < 4; ++k) {
    counts[keys[k]] = rep.counts[k];
    estimates[keys[k]] = rep.estimates[k];
    errors[keys[k]] = rep.standard_errors[k];
  }
  return {{"order", to_string(rep.order)}, {"n", rep.n},          {"seed", rep.seed},
          {"shards", rep.shards},          {"counts", counts},    {"estimates", estimates},
          {"standard_errors", errors}};
}

int cmd_simulate(const std::string& params_file, const std::string& order, std::uint64_t n,
                 std::optional<std::uint64_t> seed, unsigned shards, double epsilon_a,
                 const CommonOpts& opts) {
  const ParameterInput input = load_parameter_input(params_file);
  const ModelParams params = input.params ? *input.params : concretize(*input.ratios, epsilon_a);
  const std::uint64_t the_seed = seed ? *seed : default_seed();

  json report = json::array();
  std::ostringstream text;
  for (Order o : {Order::AB, Order::BA}) {
    if (order != "both" && order != to_string(o)) continue;
    const EstimateReport rep = estimate_sequential(params, o, n, the_seed, shards);
    report.push_back(estimate_to_json(rep));
    text << "order " << (o == Order::AB ? "AB" : "BA") << " (n=" << n << ", seed=" << the_seed
         << ", shards=" << shards << "):\n"
         << "  estimates: " << format_four({rep.estimates[0], rep.estimates[1], rep.estimates[2],
                                            rep.estimates[3]})
         << "\n"
         << "  std errors: " << format_four({rep.standard_errors[0], rep.standard_errors[1],
                                             rep.standard_errors[2], rep.standard_errors[3]})
         << "\n";
  }
  emit(report, opts, text.str());
  return 0;
}

// ---- replicate --------------------------------------------------------------

int cmd_replicate(const std::string& params_file, const std::string& sequence,
                  const std::string& force, std::optional<std::uint64_t> seed,
                  const std::string& plot_path, double epsilon_a, const CommonOpts& opts) {
  const ParameterInput input = load_parameter_input(params_file);
  const ModelParams params = input.params ? *input.params : concretize(*input.ratios, epsilon_a);
  const std::uint64_t the_seed = seed ? *seed : default_seed();

  std::vector<Observable> labels;
  {
    std::stringstream ss(sequence);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item == "A" || item == "a")
        labels.push_back(Observable::A);
      else if (item == "B" || item == "b")
        labels.push_back(Observable::B);
      else
        throw parse_error("sequence entries must be A or B, got \"" + item + "\"");
    }
    if (labels.empty()) throw parse_error("sequence must contain at least one measurement");
  }

  std::vector<Outcome> forced;
  if (!force.empty()) {
    std::stringstream ss(force);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item == "y" || item == "yes")
        forced.push_back(Outcome::yes);
      else if (item == "n" || item == "no")
        forced.push_back(Outcome::no);
      else
        throw parse_error("forced outcomes must be y or n, got \"" + item + "\"");
    }
    if (forced.size() != labels.size())
      throw parse_error("--force needs one outcome per sequence entry");
  }

  std::ofstream plot;
  if (!plot_path.empty()) {
    plot.open(plot_path);
    if (!plot) throw parse_error("cannot write " + plot_path);
    plot << "step,x_lo,x_hi,density\n";
  }

  Session session(params);
  Rng rng(the_seed);
  json steps = json::array();
  std::ostringstream text;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (plot.is_open()) {
      // The density the upcoming measurement draws from.
      const PiecewiseDistribution& d = session.distribution(labels[i]);
      for (std::size_t k = 0; k < d.densities().size(); ++k)
        plot << i + 1 << "," << d.breakpoints()[k] << "," << d.breakpoints()[k + 1] << ","
             << d.densities()[k] << "\n";
    }
    const MeasurementStep st = forced.empty() ? session.measure(labels[i], rng)
                                              : session.measure_forced(labels[i], forced[i]);
    steps.push_back({{"index", i + 1},
                     {"observable", to_string(st.which)},
                     {"outcome", to_string(st.outcome)},
                     {"probability", st.probability}});
    char line[96];
    std::snprintf(line, sizeof(line), "step %2zu: %s -> %-3s  p = %.17g\n", i + 1, to_string(st.which),
                  to_string(st.outcome), st.probability);
    text << line;
  }

  const json report{{"seed", the_seed}, {"steps", steps}};
  emit(report, opts, text.str());
  return 0;
}

// ---- unpack -----------------------------------------------------------------

int cmd_unpack(const std::string& packed, const std::string& unpacked, double tol,
               std::optional<double> cos_theta_a, const std::string& packed_dist,
               const std::string& unpacked_dist, const CommonOpts& opts) {
  json report;
  std::ostringstream text;
  bool did_anything = false;

  if (!packed.empty() || !unpacked.empty()) {
    if (packed.empty() || unpacked.empty())
      throw parse_error("--packed and --unpacked must be given together");
    const auto pv = parse_number_list(packed, 2, "--packed");
    const auto uv = parse_number_list(unpacked, 3, "--unpacked");
    const PackedResult pr(pv[0], pv[1]);
    const UnpackedResult ur(uv[0], uv[1], uv[2]);
    const AdditivityGap gap = additivity_gap(pr, ur, tol);
    const bool equal = check_degenerate_equality(pr, ur, tol);
    report["gap"] = gap.gap;
    report["classification"] = to_string(gap.classification);
    report["degenerate_equality_holds"] = equal;
    text << "gap            = " << gap.gap << " (" << to_string(gap.classification) << ")\n"
         << "degenerate equality (tol " << tol << "): " << (equal ? "holds" : "violated") << "\n";
    did_anything = true;
  }

  if (cos_theta_a || !packed_dist.empty() || !unpacked_dist.empty()) {
    if (!cos_theta_a || packed_dist.empty() || unpacked_dist.empty())
      throw parse_error("the distribution form needs --cos-theta-a, --packed-dist and --unpacked-dist");
    const auto pd = parse_number_list(packed_dist, 2, "--packed-dist");
    const auto ud = parse_number_list(unpacked_dist, 2, "--unpacked-dist");
    try {
      const double g = gtr_unpacking_gap(*cos_theta_a, {pd[0], pd[1]}, {ud[0], ud[1]});
      report["gtr_gap"] = g;
      const char* cls = g > tol ? "superadditive" : (g < -tol ? "subadditive" : "additive");
      report["gtr_classification"] = cls;
      text << "gtr gap        = " << g << " (" << cls << ")\n";
    } catch (const validation_error& e) {
      throw parse_error(e.what());
    }
    did_anything = true;
  }

  if (!did_anything)
    throw parse_error("nothing to do: give --packed/--unpacked and/or the distribution form");
  emit(report, opts, text.str());
  return 0;
}

// ---- datasets ---------------------------------------------------------------

int cmd_datasets(const CommonOpts& opts) {
  json report = json::array();
  std::ostringstream text;
  for (const ExperimentDataset& d : builtin_datasets()) {
    report.push_back(to_json(d));
    text << d.name << "\n"
         << "  order AB: " << format_four(d.order_ab) << "\n"
         << "  order BA: " << format_four(d.order_ba) << "\n"
         << "  " << d.provenance << "\n";
  }
  emit(report, opts, text.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gtr: tension-reduction model for sequential yes/no measurements"};
  app.require_subcommand(1);

  // fit
  auto* fit = app.add_subcommand("fit", "Fit the model to an eight-probability table");
  std::string fit_dataset, fit_probs, fit_params_out;
  double fit_eps = 0.5;
  CommonOpts fit_opts;
  fit->add_option("--dataset", fit_dataset, "Builtin dataset name");
  fit->add_option("--probs", fit_probs, "Dataset JSON file");
  fit->add_option("--epsilon-a", fit_eps, "Free parameter eps_A")->capture_default_str();
  fit->add_option("--params-out", fit_params_out, "Write the fitted ratios as a parameter file");
  add_format_flag(fit, fit_opts);

  // forward
  auto* forward = app.add_subcommand("forward", "Sequential probabilities from a parameter file");
  std::string fwd_params, fwd_order = "both";
  CommonOpts fwd_opts;
  forward->add_option("--params", fwd_params, "Parameter JSON file")->required();
  forward->add_option("--order", fwd_order, "Measurement order")
      ->check(CLI::IsMember({"ab", "ba", "both"}))
      ->capture_default_str();
  add_format_flag(forward, fwd_opts);

  // equalities
  auto* equalities = app.add_subcommand("equalities", "q and q' statistics of a dataset");
  std::string eq_dataset, eq_probs;
  double eq_q_tol = 0.01, eq_qp_tol = 0.01;
  CommonOpts eq_opts;
  equalities->add_option("--dataset", eq_dataset, "Builtin dataset name");
  equalities->add_option("--probs", eq_probs, "Dataset JSON file");
  equalities->add_option("--q-threshold", eq_q_tol, "|q| verdict threshold")->capture_default_str();
  equalities->add_option("--q-prime-threshold", eq_qp_tol, "|q'| verdict threshold")
      ->capture_default_str();
  add_format_flag(equalities, eq_opts);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo estimate of the sequential probabilities");
  std::string sim_params, sim_order = "both";
  std::uint64_t sim_n = 1000000;
  std::optional<std::uint64_t> sim_seed;
  unsigned sim_shards = 1;
  double sim_eps = 0.5;
  CommonOpts sim_opts;
  simulate->add_option("--params", sim_params, "Parameter JSON file")->required();
  simulate->add_option("--order", sim_order, "Measurement order")
      ->check(CLI::IsMember({"ab", "ba", "both"}))
      ->capture_default_str();
  simulate->add_option("-n,--samples", sim_n, "Sample count")->capture_default_str();
  simulate->add_option("--seed", sim_seed, "RNG seed (default GTR_SEED or 0)");
  simulate->add_option("--shards", sim_shards, "Deterministic shard count")->capture_default_str();
  simulate->add_option("--epsilon-a", sim_eps, "eps_A used when the file holds ratios")
      ->capture_default_str();
  add_format_flag(simulate, sim_opts);

  // replicate
  auto* replicate = app.add_subcommand("replicate", "Run a measurement sequence with memory");
  std::string rep_params, rep_sequence = "A,B,A", rep_force, rep_plot;
  std::optional<std::uint64_t> rep_seed;
  double rep_eps = 0.5;
  CommonOpts rep_opts;
  replicate->add_option("--params", rep_params, "Parameter JSON file")->required();
  replicate->add_option("--sequence", rep_sequence, "Comma-separated labels over {A, B}")
      ->capture_default_str();
  replicate->add_option("--force", rep_force, "Forced outcomes, one y/n per sequence entry");
  replicate->add_option("--seed", rep_seed, "RNG seed (default GTR_SEED or 0)");
  replicate->add_option("--plot-data", rep_plot, "Write per-step density segments as CSV");
  replicate->add_option("--epsilon-a", rep_eps, "eps_A used when the file holds ratios")
      ->capture_default_str();
  add_format_flag(replicate, rep_opts);

  // unpack
  auto* unpack = app.add_subcommand("unpack", "Packed vs unpacked probability analysis");
  std::string up_packed, up_unpacked, up_pdist, up_udist;
  std::optional<double> up_cos;
  double up_tol = 1e-9;
  CommonOpts up_opts;
  unpack->add_option("--packed", up_packed, "Packed probabilities p_yes,p_no");
  unpack->add_option("--unpacked", up_unpacked, "Unpacked probabilities p_yy,p_yn,p_n");
  unpack->add_option("--tol", up_tol, "Equality/classification tolerance")->capture_default_str();
  unpack->add_option("--cos-theta-a", up_cos, "Outcome cosine of the coarse-grained comparison");
  unpack->add_option("--packed-dist", up_pdist, "Packed density eps,d");
  unpack->add_option("--unpacked-dist", up_udist, "Unpacked density eps,d");
  add_format_flag(unpack, up_opts);

  // datasets
  auto* datasets = app.add_subcommand("datasets", "List builtin datasets");
  CommonOpts ds_opts;
  add_format_flag(datasets, ds_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (fit->parsed()) return cmd_fit(fit_dataset, fit_probs, fit_eps, fit_params_out, fit_opts);
    if (forward->parsed()) return cmd_forward(fwd_params, fwd_order, fwd_opts);
    if (equalities->parsed()) return cmd_equalities(eq_dataset, eq_probs, eq_q_tol, eq_qp_tol, eq_opts);
    if (simulate->parsed())
      return cmd_simulate(sim_params, sim_order, sim_n, sim_seed, sim_shards, sim_eps, sim_opts);
    if (replicate->parsed())
      return cmd_replicate(rep_params, rep_sequence, rep_force, rep_seed, rep_plot, rep_eps, rep_opts);
    if (unpack->parsed())
      return cmd_unpack(up_packed, up_unpacked, up_tol, up_cos, up_pdist, up_udist, up_opts);
    if (datasets->parsed()) return cmd_datasets(ds_opts);
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const infeasible_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const degenerate_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const impossible_outcome_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitImpossible;
  }
  return 0;
}
