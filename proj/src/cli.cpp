#include <CLI11.hpp>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "facet/io.hpp"

namespace facet {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file: " + path);
  out << content;
}

// Native documents are JSON objects; anything else is treated as MPS.
StandardFormLP load_instance(const std::string& path) {
  const std::string text = read_file(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    return read_native(text).lp;
  }
  return parse_mps(text);
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string fmt_vector(const Vector& v) {
  std::string s = "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += fmt(v(i));
  }
  return s + ")";
}

// Index sets print 1-based to match the usual textbook convention.
std::string fmt_set(const IndexSet& set) {
  std::string s = "{";
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(set[i] + 1);
  }
  return s + "}";
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("FACET_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return 1;
}

int run_analyze(const std::string& path, std::ostream& out) {
  const StandardFormLP lp = validate(load_instance(path));
  const auto cert = find_exposing_vector(lp);
  if (!cert) {
    out << "strictly feasible: yes\n";
    return 0;
  }
  out << "strictly feasible: no\n";
  out << "exposing support (1-based): " << fmt_set(cert->support) << "\n";
  out << "certificate y: " << fmt_vector(cert->y) << "\n";
  out << "certificate z = A'y: " << fmt_vector(cert->z) << "\n";
  out << "b'y: " << fmt(lp.b.dot(cert->y)) << "\n";
  return 0;
}

int run_enumerate(const std::string& path, std::ostream& out) {
  const StandardFormLP lp = validate(load_instance(path));
  const BfsEnumeration e = enumerate_bfs(lp);
  out << "feasible bases: " << e.entries.size()
      << "  distinct points: " << e.distinct_points.size()
      << "  all degenerate: " << (e.all_degenerate ? "yes" : "no") << "\n";
  for (const BasisPoint& p : e.entries) {
    out << "basis " << fmt_set(p.basis.indices) << "  degree "
        << p.degeneracy_degree << "  x = " << fmt_vector(p.x) << "\n";
  }
  return 0;
}

int run_reduce(const std::string& path, const std::string& out_path,
               std::ostream& out, std::ostream& err) {
  StandardFormLP lp = load_instance(path);
  try {
    lp = validate(lp);
  } catch (const RankDeficient&) {
    const RowSelection sel = remove_redundant_rows(lp.A, lp.b);
    err << "input has " << (lp.rows() - sel.M_kept.rows())
        << " redundant row(s); dropping them before reduction\n";
    lp.A = sel.M_kept;
    lp.b = sel.rhs_kept;
    lp = validate(lp);
  }

  const FacialReduction red = facially_reduce(lp);
  if (red.certificate) {
    out << "strictly feasible: no\n";
    out << "exposing support (1-based): " << fmt_set(red.certificate->support)
        << "\n";
  } else {
    out << "strictly feasible: yes (no reduction needed)\n";
  }
  out << "kept columns (1-based): " << fmt_set(red.kept_columns) << "\n";
  out << "kept rows (1-based): " << fmt_set(red.kept_rows) << "\n";
  out << "reduced size: " << red.A_reduced.rows() << " x "
      << red.A_reduced.cols() << ", rank " << red.kept_rows.size() << "\n";
  out << "reduction rounds: " << red.reduction_rounds << "\n";
  out << "slater verified: " << (red.slater_verified ? "yes" : "no") << "\n";
  if (red.slater_witness.size() > 0) {
    out << "interior witness (reduced space): " << fmt_vector(red.slater_witness)
        << "\n";
  }
  if (!out_path.empty()) {
    NativeInstanceDocument doc;
    doc.lp.A = red.A_reduced;
    doc.lp.b = red.b_reduced;
    doc.lp.c = reduce_objective(red, lp.c);
    write_file(out_path, write_native(doc));
    err << "wrote reduced instance to " << out_path << "\n";
  }
  return 0;
}

int run_generate(const std::string& kind, int m, int n, int r,
                 std::uint64_t seed, const std::string& out_path,
                 std::ostream& out, std::ostream& err) {
  GeneratorSpec spec;
  spec.m = m;
  spec.n = n;
  spec.r = r;
  spec.seed = seed;
  if (kind == "primal-no-slater") {
    spec.kind = InstanceKind::PrimalNoSlater;
  } else if (kind == "primal-slater") {
    spec.kind = InstanceKind::PrimalSlater;
  } else if (kind == "dual-no-slater") {
    spec.kind = InstanceKind::DualNoSlater;
  } else {
    throw Error("unknown kind: " + kind);
  }
  const PlantedInstance inst = generate(spec);
  const std::string text = write_native(to_document(inst));
  if (out_path.empty()) {
    out << text;
  } else {
    write_file(out_path, text);
    err << "wrote instance to " << out_path << "\n";
  }
  return 0;
}

int run_solve(const std::string& path, const std::string& method,
              const std::string& rule, const std::string& variant,
              std::ostream& out) {
  const StandardFormLP lp = validate(load_instance(path));
  if (method == "ipm") {
    const IpmResult res = solve_ipm(lp);
    out << "converged: " << (res.converged ? "yes" : "no") << "\n";
    out << "objective: " << fmt(lp.c.dot(res.x)) << "\n";
    out << "iterations: " << res.iterations << "\n";
    out << "kkt: (" << fmt(res.kkt.primal) << ", " << fmt(res.kkt.dual) << ", "
        << fmt(res.kkt.complementarity) << ")\n";
    out << "normal matrix condition: " << fmt(res.normal_condition) << "\n";
    return res.converged ? 0 : 2;
  }
  if (method != "simplex") throw Error("unknown method: " + method);
  SimplexOptions opts;
  opts.rule = rule == "dantzig" ? PivotRule::Dantzig : PivotRule::Bland;
  opts.variant =
      variant == "dual" ? SimplexVariant::Dual : SimplexVariant::Primal;
  const SimplexResult res = solve_simplex(lp, opts);
  const char* status = nullptr;
  switch (res.status) {
    case SimplexStatus::Optimal: status = "optimal"; break;
    case SimplexStatus::Unbounded: status = "unbounded"; break;
    case SimplexStatus::Infeasible: status = "infeasible"; break;
    case SimplexStatus::IterationLimit: status = "iteration_limit"; break;
  }
  out << "status: " << status << "\n";
  if (res.status == SimplexStatus::Optimal) {
    out << "objective: " << fmt(res.objective) << "\n";
    out << "basis (1-based): " << fmt_set(res.optimal_basis.indices) << "\n";
  }
  out << "pivots: " << res.total_pivots << "\n";
  out << "degenerate pivots: " << res.degenerate_pivots << "\n";
  out << "degiter percent: " << fmt(res.degiter_percent) << "\n";
  return res.status == SimplexStatus::Optimal ||
                 res.status == SimplexStatus::Infeasible ||
                 res.status == SimplexStatus::Unbounded
             ? 0
             : 2;
}

int run_experiment(const std::string& config_path, const std::string& out_path,
                   std::ostream& out, std::ostream& err) {
  ExperimentConfig cfg = load_experiment_config(read_file(config_path));
  std::vector<ReportRow> rows;
  switch (cfg.protocol) {
    case Protocol::Condition:
      rows = run_condition_experiment(cfg);
      break;
    case Protocol::Perturbation: {
      GeneratorSpec spec{cfg.m, cfg.n, cfg.r, cfg.base_seed,
                         InstanceKind::PrimalNoSlater};
      const PlantedInstance inst = generate_primal_no_slater(spec);
      const StandardFormLP lp = validate(inst.lp);
      const FacialReduction red = facially_reduce(lp);
      rows = run_perturbation_experiment(lp, red, cfg);
      break;
    }
    case Protocol::Degiter:
      rows = run_degeneracy_experiment(cfg);
      break;
    case Protocol::Theorems:
      rows = verify_theorem_suite(cfg);
      break;
  }

  const std::string target = out_path.empty() ? cfg.output_path : out_path;
  if (target.empty()) {
    write_csv(rows, out);
  } else {
    std::ostringstream buf;
    write_csv(rows, buf);
    write_file(target, buf.str());
    err << "wrote " << rows.size() << " rows to " << target << "\n";
  }

  if (cfg.protocol == Protocol::Theorems) {
    int failures = 0;
    for (const ReportRow& r : rows) {
      if (!r.passed()) ++failures;
    }
    if (failures > 0) {
      err << failures << " theorem-suite row(s) failed\n";
      return 3;
    }
  }
  return 0;
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out,
                 std::ostream& err) {
  CLI::App app{"facial reduction and degeneracy analysis for standard-form "
               "linear programs"};
  app.require_subcommand(1);

  std::string file, out_path, config_path;
  std::string kind = "primal-no-slater";
  std::string method = "ipm", rule = "bland", variant = "primal";
  int m = 2, n = 5, r = 2;
  std::uint64_t seed = default_seed();

  CLI::App* analyze = app.add_subcommand(
      "analyze", "strict-feasibility verdict and certificate");
  analyze->add_option("file", file)->required();

  CLI::App* enumerate = app.add_subcommand(
      "enumerate", "list all basic feasible solutions with degrees");
  enumerate->add_option("file", file)->required();

  CLI::App* reduce =
      app.add_subcommand("reduce", "two-step facial reduction summary");
  reduce->add_option("file", file)->required();
  reduce->add_option("--out", out_path, "write the reduced instance here");

  CLI::App* generate =
      app.add_subcommand("generate", "construct a planted instance");
  generate->add_option("--kind", kind,
                       "primal-no-slater | primal-slater | dual-no-slater");
  generate->add_option("--m", m)->required();
  generate->add_option("--n", n)->required();
  generate->add_option("--r", r)->required();
  generate->add_option("--seed", seed, "defaults to FACET_SEED or 1");
  generate->add_option("--out", out_path, "output path (stdout when absent)");

  CLI::App* solve = app.add_subcommand("solve", "run a solver on an instance");
  solve->add_option("file", file)->required();
  solve->add_option("--method", method, "ipm | simplex");
  solve->add_option("--rule", rule, "bland | dantzig");
  solve->add_option("--variant", variant, "primal | dual");

  CLI::App* experiment =
      app.add_subcommand("experiment", "run a protocol from a config file");
  experiment->add_option("--config", config_path)->required();
  experiment->add_option("--out", out_path, "CSV path (overrides config)");

  std::vector<char*> argv;
  std::vector<std::string> storage = args;
  storage.insert(storage.begin(), "facet");
  argv.reserve(storage.size());
  for (std::string& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 1;
  }

  try {
    if (*analyze) return run_analyze(file, out);
    if (*enumerate) return run_enumerate(file, out);
    if (*reduce) return run_reduce(file, out_path, out, err);
    if (*generate) return run_generate(kind, m, n, r, seed, out_path, out, err);
    if (*solve) return run_solve(file, method, rule, variant, out);
    if (*experiment) return run_experiment(config_path, out_path, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "unexpected error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace facet
