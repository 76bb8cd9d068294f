#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "posred/clustering/initial_model.hpp"
#include "posred/clustering/partition.hpp"
#include "posred/error.hpp"
#include "posred/feasible/graph.hpp"
#include "posred/feasible/perron.hpp"
#include "posred/sysmodel/heat2d.hpp"
#include "posred/sysmodel/model_io.hpp"

namespace posred::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fmt(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

json finite_or_null(double value) {
  if (std::isfinite(value)) return value;
  return nullptr;
}

json certificate_json(const feasible::FeasibilityCertificate& cert) {
  char checksum[24];
  std::snprintf(checksum, sizeof checksum, "%016llx",
                static_cast<unsigned long long>(cert.pattern_checksum));
  return {{"abscissa", finite_or_null(cert.abscissa)},
          {"min_off_diagonal", finite_or_null(cert.min_off_diagonal)},
          {"min_b", cert.min_b},
          {"min_c", cert.min_c},
          {"pattern_respected", cert.pattern_respected},
          {"within_box", cert.within_box},
          {"pattern_checksum", checksum},
          {"passes", cert.passes}};
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("write failed for " + path.string());
}

}  // namespace

RunConfig run_config_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw FormatError("config must be a JSON object");
  RunConfig cfg;
  try {
    for (const auto& [key, value] : doc.items()) {
      if (key == "system") cfg.system_dir = value.get<std::string>();
      else if (key == "partition") cfg.partition_path = value.get<std::string>();
      else if (key == "out") cfg.out_dir = value.get<std::string>();
      else if (key == "c") cfg.algo.c = value.get<double>();
      else if (key == "c1") cfg.algo.c1 = value.get<double>();
      else if (key == "c2") cfg.algo.c2 = value.get<double>();
      else if (key == "epsilon") cfg.algo.epsilon = value.get<double>();
      else if (key == "gamma") cfg.algo.gamma = value.get<double>();
      else if (key == "max_iters") cfg.algo.max_iters = value.get<numkit::Index>();
      else if (key == "stat_tol") cfg.algo.stat_tol = value.get<double>();
      else if (key == "trace") cfg.algo.trace = value.get<bool>();
      else if (key == "adaptive") cfg.algo.adaptive = value.get<bool>();
      else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
      else if (key == "alpha") {
        if (value.is_string()) {
          if (value.get<std::string>() != "auto") throw FormatError("alpha must be \"auto\" or a number");
          cfg.alpha.reset();
        } else {
          cfg.alpha = value.get<double>();
        }
      } else {
        throw FormatError("unknown config key '" + key + "'");
      }
    }
  } catch (const json::exception& e) {
    throw FormatError(std::string("config value has the wrong type: ") + e.what());
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return run_config_from_json(ss.str());
}

int cmd_generate(const std::string& kind, numkit::Index k, const std::string& out_dir,
                 std::ostream& out, std::ostream& err) {
  if (kind != "heat2d") {
    err << "error: unknown benchmark kind '" << kind << "'\n";
    return kExitUsage;
  }
  try {
    const auto bench = sysmodel::heat2d(k);
    sysmodel::save_model(out_dir, bench.model);
    const fs::path dir(out_dir);
    const auto partition = bench.partition_hint
                               ? *bench.partition_hint
                               : clustering::ClusterPartition::singletons(bench.model.order());
    clustering::save_partition((dir / "partition.json").string(), partition);
    out << "wrote heat2d K=" << k << " (n=" << bench.model.order() << ", "
        << partition.clusters() << " clusters) to " << out_dir << '\n';
    return kExitOk;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

int cmd_reduce(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    cfg.algo.validate();
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  if (cfg.system_dir.empty() || cfg.out_dir.empty()) {
    err << "error: system and output directories are required\n";
    return kExitUsage;
  }

  std::optional<sysmodel::StateSpaceModel> full;
  std::optional<clustering::ClusterPartition> partition;
  try {
    full = sysmodel::load_model(cfg.system_dir);
    const std::string partition_path =
        cfg.partition_path.empty() ? (fs::path(cfg.system_dir) / "partition.json").string()
                                   : cfg.partition_path;
    partition = clustering::load_partition(partition_path);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  const auto report = sysmodel::validate_aspn(*full);
  if (!report.ok()) {
    err << "error: input system is not admissible: " << report.describe() << '\n';
    return kExitInfeasible;
  }
  if (partition->nodes() != full->order()) {
    err << "error: partition covers " << partition->nodes() << " nodes but the system has "
        << full->order() << " states\n";
    return kExitUsage;
  }

  try {
    const auto pi = clustering::build_characteristic_matrix(*partition);
    const auto initial = clustering::initial_reduced_model(*full, pi, cfg.alpha);
    const numkit::DenseMatrix a0 = initial.model.a_dense();
    if (!feasible::check_irreducible(a0)) {
      err << "error: reduced state matrix is reducible; strongly connected components: "
          << feasible::format_components(feasible::strongly_connected_components(a0)) << '\n';
      return kExitInfeasible;
    }
    const auto pdata = feasible::perron(a0);
    const auto box = feasible::build_box(a0, pdata, cfg.algo.epsilon, cfg.algo.gamma);
    const auto pattern = clustering::reduced_graph_pattern(initial.model);

    const auto result = optimizer::run_algorithm1(*full, initial.model, box, pattern, cfg.algo);
    const auto reduced = result.reduced.to_model();

    const fs::path dir(cfg.out_dir);
    fs::create_directories(dir);
    sysmodel::save_model((dir / "reduced").string(), reduced);
    sysmodel::save_model((dir / "initial").string(), initial.model);
    optimizer::save_trace_csv((dir / "trace.csv").string(), result.trace);
    write_text(dir / "box.json", feasible::box_to_json(box));

    json summary = {{"status", optimizer::to_string(result.status)},
                    {"message", result.message},
                    {"iterations", result.iterations},
                    {"initial_f", result.initial_f},
                    {"final_f", result.final_f},
                    {"initial_residual", result.initial_residual},
                    {"final_residual", result.final_residual},
                    {"alpha", initial.alpha},
                    {"c1", result.c1},
                    {"c2", result.c2},
                    {"descent_violations", result.descent_violations},
                    {"warnings", result.warnings},
                    {"certificate", certificate_json(result.certificate)}};
    try {
      const double g2 = sysmodel::h2_norm_squared(*full);
      summary["full_h2_norm_squared"] = g2;
      summary["initial_h2_error"] =
          std::sqrt(sysmodel::h2_error_squared(*full, initial.model, g2));
      summary["final_h2_error"] = std::sqrt(sysmodel::h2_error_squared(*full, reduced, g2));
    } catch (const Error& e) {
      summary["full_h2_norm_squared"] = nullptr;
      summary["initial_h2_error"] = nullptr;
      summary["final_h2_error"] = nullptr;
      if (dynamic_cast<const SizeCapError*>(&e) == nullptr) summary["h2_report_error"] = e.what();
    }
    write_text(dir / "summary.json", summary.dump(2) + "\n");

    for (const auto& w : result.warnings) err << "warning: " << w << '\n';
    out << "status " << optimizer::to_string(result.status) << " after " << result.iterations
        << " iterations\n"
        << "initial f " << fmt(result.initial_f) << '\n'
        << "final f " << fmt(result.final_f) << '\n'
        << "final residual " << fmt(result.final_residual) << '\n';
    if (!result.ok()) {
      err << "error: " << result.message << '\n';
      return kExitSolver;
    }
    return kExitOk;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const SolverError& e) {
    err << "error: " << e.what() << '\n';
    return kExitSolver;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

int cmd_evaluate(const std::string& full_dir, const std::string& reduced_dir, std::ostream& out,
                 std::ostream& err, const sysmodel::H2Options& options) {
  try {
    const auto full = sysmodel::load_model(full_dir);
    const auto reduced = sysmodel::load_model(reduced_dir);
    if (reduced.inputs() != full.inputs() || reduced.outputs() != full.outputs()) {
      err << "error: reduced model input/output counts differ from the full model\n";
      return kExitUsage;
    }
    const double f = sysmodel::h2_cross_objective(full, reduced);
    out << "f " << fmt(f) << '\n';
    if (full.order() > options.gramian_size_cap) {
      err << "notice: full order " << full.order() << " exceeds the Gramian size cap "
          << options.gramian_size_cap << "; absolute H2 error not reported\n";
    } else {
      const double g2 = sysmodel::h2_norm_squared(full, options);
      const double e2 = sysmodel::h2_error_squared(full, reduced, g2);
      out << "h2_error_squared " << fmt(e2) << '\n'
          << "h2_error " << fmt(std::sqrt(e2)) << '\n'
          << "full_h2_norm " << fmt(std::sqrt(g2)) << '\n';
    }
    const auto report = sysmodel::validate_aspn(reduced);
    out << "reduced_abscissa " << fmt(report.abscissa) << '\n'
        << "reduced_min_off_diagonal " << fmt(numkit::min_off_diagonal(reduced.a_dense()))
        << '\n'
        << "reduced_admissible " << (report.ok() ? "true" : "false") << '\n';
    return kExitOk;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const SolverError& e) {
    err << "error: " << e.what() << '\n';
    return kExitSolver;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

int cmd_trace_plotdata(const std::string& trace_csv, const std::string& out_csv,
                       std::ostream& out, std::ostream& err) {
  try {
    const auto trace = optimizer::load_trace_csv(trace_csv);
    std::ofstream file(out_csv);
    if (!file) throw Error("cannot write " + out_csv);
    optimizer::write_plot_data(file, trace);
    if (!file) throw Error("write failed for " + out_csv);
    out << "wrote " << trace.size() << " rows to " << out_csv << '\n';
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Structure-preserving H2 reduction of positive networked systems"};
  app.require_subcommand(1);

  std::string kind = "heat2d";
  numkit::Index k = 0;
  std::string gen_out;
  auto* gen = app.add_subcommand("generate", "Write a benchmark system and its default partition");
  gen->add_option("--kind", kind, "Benchmark family")->capture_default_str();
  gen->add_option("-k,--grid", k, "Interior nodes per side")->required();
  gen->add_option("-o,--out", gen_out, "Output directory")->required();

  std::string config_path, system_dir, partition_path, red_out, alpha_text;
  double c = 0, c1 = 0, c2 = 0, epsilon = 0, gamma = 0, stat_tol = 0;
  numkit::Index max_iters = 0;
  std::uint64_t seed = 0;
  bool adaptive = false, no_trace = false;
  auto* red = app.add_subcommand("reduce", "Run the reduction pipeline");
  red->add_option("--config", config_path, "JSON config; flags override its values");
  auto* o_system = red->add_option("-s,--system", system_dir, "System directory");
  auto* o_part = red->add_option("-p,--partition", partition_path, "Partition JSON");
  auto* o_out = red->add_option("-o,--out", red_out, "Output directory");
  auto* o_c = red->add_option("--c", c, "Step factor");
  auto* o_c1 = red->add_option("--c1", c1);
  auto* o_c2 = red->add_option("--c2", c2);
  auto* o_eps = red->add_option("--epsilon", epsilon);
  auto* o_gamma = red->add_option("--gamma", gamma);
  auto* o_iters = red->add_option("--max-iters", max_iters);
  auto* o_tol = red->add_option("--stat-tol", stat_tol);
  auto* o_alpha = red->add_option("--alpha", alpha_text, "\"auto\" or a nonnegative shift");
  auto* o_seed = red->add_option("--seed", seed);
  auto* o_adaptive = red->add_flag("--adaptive", adaptive, "Double c1, c2 on a failed descent");
  auto* o_notrace = red->add_flag("--no-trace", no_trace, "Skip per-iteration records");

  std::string full_dir, reduced_dir;
  numkit::Index cap = sysmodel::H2Options{}.gramian_size_cap;
  auto* eval = app.add_subcommand("evaluate", "Report the H2 error of a reduced model");
  eval->add_option("--full", full_dir)->required();
  eval->add_option("--reduced", reduced_dir)->required();
  eval->add_option("--gramian-cap", cap)->capture_default_str();

  std::string trace_in, plot_out;
  auto* plot = app.add_subcommand("trace-plotdata", "Emit k,f,residual columns from a trace");
  plot->add_option("-i,--trace", trace_in)->required();
  plot->add_option("-o,--out", plot_out)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (gen->parsed()) return cmd_generate(kind, k, gen_out, out, err);
  if (eval->parsed()) {
    sysmodel::H2Options options;
    options.gramian_size_cap = cap;
    return cmd_evaluate(full_dir, reduced_dir, out, err, options);
  }
  if (plot->parsed()) return cmd_trace_plotdata(trace_in, plot_out, out, err);

  RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = load_run_config(config_path);
    if (o_alpha->count() > 0) {
      if (alpha_text == "auto") {
        cfg.alpha.reset();
      } else {
        std::size_t used = 0;
        cfg.alpha = std::stod(alpha_text, &used);
        if (used != alpha_text.size()) throw FormatError("bad --alpha value '" + alpha_text + "'");
      }
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  if (o_system->count() > 0) cfg.system_dir = system_dir;
  if (o_part->count() > 0) cfg.partition_path = partition_path;
  if (o_out->count() > 0) cfg.out_dir = red_out;
  if (o_c->count() > 0) cfg.algo.c = c;
  if (o_c1->count() > 0) cfg.algo.c1 = c1;
  if (o_c2->count() > 0) cfg.algo.c2 = c2;
  if (o_eps->count() > 0) cfg.algo.epsilon = epsilon;
  if (o_gamma->count() > 0) cfg.algo.gamma = gamma;
  if (o_iters->count() > 0) cfg.algo.max_iters = max_iters;
  if (o_tol->count() > 0) cfg.algo.stat_tol = stat_tol;
  if (o_seed->count() > 0) cfg.seed = seed;
  if (o_adaptive->count() > 0) cfg.algo.adaptive = adaptive;
  if (o_notrace->count() > 0) cfg.algo.trace = !no_trace;
  return cmd_reduce(cfg, out, err);
}

}  // namespace posred::cli
