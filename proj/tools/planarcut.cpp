#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "planarcut/generators.hpp"
#include "planarcut/instance_io.hpp"
#include "planarcut/oracle.hpp"
#include "planarcut/rounding.hpp"
#include "planarcut/verify.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace planarcut;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kInternal = 1, kUsage = 2, kInvalidInstance = 3, kNoDemand = 4, kCap = 5, kLp = 6,
            kRounding = 7, kSuiteFailed = 8 };

int exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::ParseError:
    case ErrorCode::EulerViolation:
    case ErrorCode::Disconnected:
    case ErrorCode::NotSimple:
    case ErrorCode::TooLarge:
      return kInvalidInstance;
    case ErrorCode::InvalidParams:
      return kUsage;
    case ErrorCode::NoDemand:
      return kNoDemand;
    case ErrorCode::CapExceeded:
    case ErrorCode::CycleBudgetExceeded:
      return kCap;
    case ErrorCode::Infeasible:
    case ErrorCode::NumericalFailure:
    case ErrorCode::MissingProfiles:
      return kLp;
    case ErrorCode::DegenerateMass:
    case ErrorCode::AllInfinite:
      return kRounding;
    case ErrorCode::SuiteFailed:
      return kSuiteFailed;
    default:
      return kInternal;
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidParams, "cannot write " + path);
  f << text;
}

json cut_json(const CutResult& c) {
  json j;
  std::vector<int> side;
  c.side.for_each([&](VertexId v) { side.push_back(v); });
  j["side"] = side;
  j["cost"] = c.cost;
  j["demand"] = c.demand;
  j["sparsity"] = c.sparsity.to_string();
  return j;
}

double seconds(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparsest cut on planar graphs with non-uniform demands"};
  app.require_subcommand(1);
  int jobs = 0;
  app.add_option("--jobs", jobs, "OpenMP threads (0: all cores)")->check(CLI::NonNegativeNumber);

  // generate
  auto* gen = app.add_subcommand("generate", "write a random instance file");
  std::string family = "grid", gen_out;
  GeneratorParams gp;
  gen->add_option("family", family, "grid | wheel | random-planar")->required();
  gen->add_option("-o,--output", gen_out, "instance file (stdout when omitted)");
  gen->add_option("--rows", gp.rows);
  gen->add_option("--cols", gp.cols);
  gen->add_option("--spokes", gp.spokes);
  gen->add_option("--keep", gp.keep, "random-planar edge survival probability");
  gen->add_option("--pairs", gp.demand_pairs, "number of demand pairs");
  gen->add_option("--max-cost", gp.max_cost);
  gen->add_option("--max-demand", gp.max_demand);
  gen->add_option("--seed", gp.seed);

  // solve
  auto* solve = app.add_subcommand("solve", "run the approximation pipeline on an instance");
  std::string instance, solve_out, solve_json;
  PipelineConfig cfg;
  bool oracle = false, single = false, all_guesses = false;
  solve->add_option("instance", instance, "instance JSON file")->required();
  solve->add_option("--epsilon", cfg.epsilon);
  solve->add_option("--seed", cfg.seed);
  solve->add_option("--z", cfg.z, "crossing budget (0: default for n and epsilon)");
  solve->add_option("--cap-tree", cfg.max_nodes, "NDHC node cap");
  solve->add_option("--cap-kappa", cfg.max_kappa, "kappa subsets per sampled partition");
  solve->add_option("--cap-cycles", cfg.cycle_budget, "cycle budget for profile enumeration");
  solve->add_option("--cap-lp", cfg.max_lp_vars, "LP variable cap");
  solve->add_option("--alpha-min", cfg.alpha_min);
  solve->add_option("--alpha-max", cfg.alpha_max, "0: no upper limit beyond the grid");
  solve->add_option("--samples", cfg.samples, "rounding samples per LP");
  solve->add_flag("--oracle", oracle, "also run the exhaustive oracle and report the gap");
  auto* single_opt = solve->add_flag("--single-guess", single, "run one reduction guess");
  solve->add_flag("--all-guesses", all_guesses, "run every reduction guess")->excludes(single_opt);
  solve->add_flag("--exact-lp", cfg.exact_lp, "solve LPs in rational arithmetic");
  solve->add_option("--export-lp", cfg.export_lp, "write each LP with this path prefix");
  solve->add_option("-o,--output", solve_out, "also write the report here");
  solve->add_option("--json", solve_json, "write a machine-readable report here");

  // verify
  auto* ver = app.add_subcommand("verify", "run an invariant or statistical suite");
  std::string suite, ver_out, ver_json;
  VerifyParams vp;
  long long samples = 0;
  ver->add_option("suite", suite, "duality | decoupling | ldd | patch | lp-marginals")
      ->required()
      ->check(CLI::IsMember(suite_names()));
  ver->add_option("--seed", vp.seed);
  ver->add_option("--epsilon", vp.epsilon);
  ver->add_option("--samples", samples, "sample count of the suite (0: its default)");
  ver->add_option("--max-edges", vp.max_edges, "duality fixture edge limit");
  ver->add_option("--fixtures", vp.patch_fixtures, "patch fixture count");
  ver->add_option("-o,--output", ver_out, "also write the report here");
  ver->add_option("--json", ver_json, "write a machine-readable report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  }
#ifdef _OPENMP
  if (jobs > 0) omp_set_num_threads(jobs);
#endif

  try {
    if (*gen) {
      const std::string text = write_instance(generate_family(family, gp));
      if (gen_out.empty()) {
        std::cout << text;
      } else {
        write_file(gen_out, text);
      }
      return kOk;
    }

    if (*solve) {
      if (single) cfg.guesses = PipelineConfig::Guesses::Single;
      if (all_guesses) cfg.guesses = PipelineConfig::Guesses::All;
      const auto t0 = std::chrono::steady_clock::now();
      const auto g = EmbeddedPlanarGraph::build(read_instance_file(instance));
      const PipelineResult r = run_pipeline(g, cfg);
      std::string text = to_text(r);
      json doc;
      doc["cut"] = cut_json(r.cut);
      doc["zero_cost"] = r.zero_cost;
      doc["bridges"] = r.bridges;
      doc["guesses"] = r.guesses.size();
      doc["warnings"] = r.warnings;
      if (oracle) {
        const OracleResult o = brute_force_sparsest(g);
        const double gap = o.best.sparsity.to_double() > 0 ? r.cut.sparsity.to_double() / o.best.sparsity.to_double()
                                                          : (r.cut.sparsity.to_double() == 0 ? 1.0 : INFINITY);
        char buf[160];
        std::snprintf(buf, sizeof buf, "oracle sparsity=%s (%.9g) gap=%.9f\n", o.best.sparsity.to_string().c_str(),
                      o.best.sparsity.to_double(), gap);
        text += buf;
        doc["oracle"] = cut_json(o.best);
        doc["gap"] = gap;
      }
      std::cout << text;
      if (!solve_out.empty()) write_file(solve_out, text);
      if (!solve_json.empty()) write_file(solve_json, doc.dump(2) + "\n");
      std::fprintf(stderr, "time reduce=%.3fs ndhc=%.3fs profiles=%.3fs lp=%.3fs rounding=%.3fs total=%.3fs\n",
                   r.times.reduce, r.times.ndhc, r.times.profiles, r.times.lp, r.times.rounding, seconds(t0));
      return kOk;
    }

    if (*ver) {
      if (samples > 0) {
        vp.decoupling_samples = static_cast<std::size_t>(samples);
        vp.ldd_samples = static_cast<std::uint64_t>(samples);
        vp.marginal_samples = static_cast<int>(samples);
      }
      const auto t0 = std::chrono::steady_clock::now();
      const SuiteReport rep = run_suite(suite, vp);
      const std::string text = rep.to_text();
      std::cout << text;
      if (!ver_out.empty()) write_file(ver_out, text);
      if (!ver_json.empty()) {
        json doc;
        doc["suite"] = rep.suite;
        doc["passed"] = rep.passed;
        doc["statistics"] = rep.lines;
        if (!rep.passed) doc["failure"] = rep.failure;
        write_file(ver_json, doc.dump(2) + "\n");
      }
      std::fprintf(stderr, "time total=%.3fs\n", seconds(t0));
      if (!rep.passed) {
        std::fprintf(stderr, "error: %s\n", Error(ErrorCode::SuiteFailed, rep.failure).what());
        return kSuiteFailed;
      }
      return kOk;
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kInternal;
  }
  return kInternal;
}
