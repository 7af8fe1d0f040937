// Command-line front end: reduce, solve, verify, analyze, equivcheck, probe.
//
// Exit codes: 0 ok/solvable, 1 unsolvable/invalid, 2 usage/parse,
// 3 I/O, 4 bound exhausted, 5 resource limit, 6 probe finding.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "dimapf/dimapf.hpp"

namespace {

using namespace dimapf;

enum Exit : int {
  kOk = 0,
  kNegative = 1,
  kUsage = 2,
  kIo = 3,
  kBoundExhausted = 4,
  kResourceLimit = 5,
  kProbeFinding = 6,
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << content;
  if (!out.flush()) throw IoError("cannot write " + path);
}

MapfInstance load_instance(const std::string& path) {
  return parse_instance(read_file(path));
}

int cmd_reduce(const std::string& input, const std::string& output, bool pad) {
  const Cnf3Formula f = parse_dimacs(read_file(input), {pad});
  const ReductionArtifact art = build_reduction(f);
  write_file(output, serialize_instance(art.instance()));
  write_file(output + ".map", serialize_name_map(art));
  std::cout << "wrote " << output << ": " << art.instance().vertex_count() << " vertices, "
            << art.instance().digraph.arc_count() << " arcs, " << art.instance().agent_count() << " agents\n";
  return kOk;
}

struct SolveOptions {
  std::optional<std::size_t> depth_bound;
  bool dag_bound = false;
  std::optional<std::size_t> limit_states;
  std::optional<double> time_limit;
  bool no_prune = false;
  bool stats = false;
};

int cmd_solve(const std::string& path, const SolveOptions& opt) {
  const MapfInstance inst = load_instance(path);
  if (auto violations = validate_instance(inst); !violations.empty()) {
    for (const auto& v : violations) std::cerr << "invalid instance: " << v.message << "\n";
    return kUsage;
  }
  SearchLimits limits;
  limits.depth_bound = opt.depth_bound;
  if (opt.dag_bound) {
    try {
      limits.depth_bound = static_cast<std::size_t>(dag_move_bound(inst));
    } catch (const std::domain_error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kUsage;
    }
  }
  if (opt.limit_states) limits.max_states = *opt.limit_states;
  if (opt.time_limit) {
    limits.time_limit = std::chrono::milliseconds(static_cast<long long>(*opt.time_limit * 1000.0));
  }
  limits.prune_dead_ends = !opt.no_prune;

  const SearchResult r = solve_bfs(inst, limits);
  if (opt.stats) {
    std::cerr << "expanded " << r.stats.states_expanded << " generated " << r.stats.states_generated
              << " peak_frontier " << r.stats.peak_frontier << " elapsed_ms "
              << std::chrono::duration<double, std::milli>(r.stats.elapsed).count() << "\n";
  }
  if (r.solvable()) {
    std::cout << "SOLVABLE\n" << serialize_plan(inst, r.plan());
    return kOk;
  }
  if (r.unsolvable()) {
    std::cout << "UNSOLVABLE\n";
    return kNegative;
  }
  if (r.bound_exhausted()) {
    std::cout << "BOUND-EXHAUSTED " << std::get<outcome::BoundExhausted>(r.outcome).depth << "\n";
    return kBoundExhausted;
  }
  std::cout << "RESOURCE-LIMIT " << std::get<outcome::ResourceLimit>(r.outcome).reason << "\n";
  return kResourceLimit;
}

int cmd_verify(const std::string& instance_path, const std::string& plan_path) {
  const MapfInstance inst = load_instance(instance_path);
  const std::string text = read_file(plan_path);
  Plan plan;
  try {
    plan = parse_plan(text, inst);
  } catch (const PlanParseError& e) {
    std::cout << "INVALID move " << e.move_index() << ": " << e.what() << "\n";
    return kNegative;
  }
  const PlanCheck check = validate_plan(inst, plan);
  if (check) {
    std::cout << "VALID " << plan.size() << " moves\n";
    return kOk;
  }
  if (check.index) {
    std::cout << "INVALID move " << *check.index << ": " << check.reason << "\n";
  } else {
    std::cout << "INVALID: " << check.reason << "\n";
  }
  return kNegative;
}

int cmd_analyze(const std::string& path) {
  const MapfInstance inst = load_instance(path);
  const Digraph& d = inst.digraph;
  const SccPartition scc = strongly_connected_components(d);
  const std::size_t empty = d.vertex_count() - std::min(d.vertex_count(), inst.agent_count());

  std::cout << "vertices: " << d.vertex_count() << "\n";
  std::cout << "arcs: " << d.arc_count() << "\n";
  std::cout << "agents: " << inst.agent_count() << "\n";
  std::cout << "empty_vertices: " << empty << "\n";
  std::cout << "scc_count: " << scc.size() << "\n";
  std::cout << "scc_sizes:";
  for (const auto& c : scc.components) std::cout << " " << c.size();
  std::cout << "\n";
  std::cout << "is_dag: " << (is_dag(d) ? "true" : "false") << "\n";
  std::cout << "strongly_connected: " << (is_strongly_connected(d) ? "true" : "false") << "\n";
  std::cout << "strongly_biconnected: " << (is_strongly_biconnected(d) ? "true" : "false") << "\n";
  std::cout << "two_empty_vertices: " << (empty >= 2 ? "true" : "false") << "\n";
  if (auto violations = validate_instance(inst); !violations.empty()) {
    for (const auto& v : violations) std::cout << "violation: " << v.message << "\n";
  }
  return kOk;
}

int cmd_equivcheck(const EquivConfig& cfg) {
  const EquivReport r = run_equivcheck(cfg);
  std::cout << "formulas " << r.formulas << " satisfiable " << r.satisfiable << " bfs_checked " << r.bfs_checked
            << " constructive_checked " << r.constructive_checked << " unsat_unchecked " << r.unsat_unchecked
            << "\n";
  if (r.ok()) {
    std::cout << "PASS\n";
    return kOk;
  }
  std::cout << "FAIL: " << r.failure << "\n";
  std::cout << "counterexample: " << to_string(*r.counterexample) << "\n" << to_dimacs(*r.counterexample);
  return kNegative;
}

int cmd_probe(const ProbeConfig& cfg, const std::string& output, const std::string& records) {
  const ProbeReport r = hypothesis_probe(cfg);
  const std::string summary = probe_summary_tsv(r);
  if (output.empty()) {
    std::cout << summary;
  } else {
    write_file(output, summary);
  }
  if (!records.empty()) write_file(records, probe_records_tsv(r));
  std::cerr << "instances " << r.records.size() << " max_shortest " << r.max_shortest << " exceeding "
            << r.exceeding.size() << (r.exhaustive ? " (exhaustive)" : " (sampled)") << "\n";
  if (r.partial) {
    std::cerr << "partial report: " << *r.partial << "\n";
    return kResourceLimit;
  }
  return r.exceeding.empty() ? kOk : kProbeFinding;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-agent pathfinding on directed graphs"};
  app.require_subcommand(1);

  std::string cnf_path, out_path;
  bool pad = false;
  auto* reduce = app.add_subcommand("reduce", "Compile a 3-CNF DIMACS file into a diMAPF instance");
  reduce->add_option("input", cnf_path, "DIMACS CNF file")->required();
  reduce->add_option("output", out_path, "instance file to write (name map goes to <output>.map)")->required();
  reduce->add_flag("--pad", pad, "repeat the last literal of short clauses up to width 3");

  std::string instance_path, plan_path;
  SolveOptions solve_opt;
  auto* solve = app.add_subcommand("solve", "Decide solvability by breadth-first search");
  solve->add_option("instance", instance_path, "instance file")->required();
  auto* depth_opt = solve->add_option("--depth-bound", solve_opt.depth_bound, "maximum plan length");
  solve->add_flag("--dag-bound", solve_opt.dag_bound, "bound the depth by |V|^2 (DAGs only)")->excludes(depth_opt);
  solve->add_option("--limit-states", solve_opt.limit_states, "closed-set ceiling");
  solve->add_option("--time-limit", solve_opt.time_limit, "wall-clock ceiling in seconds");
  solve->add_flag("--no-prune", solve_opt.no_prune, "disable dead-end pruning");
  solve->add_flag("--stats", solve_opt.stats, "print search statistics to stderr");

  auto* verify = app.add_subcommand("verify", "Validate a plan against an instance");
  verify->add_option("instance", instance_path, "instance file")->required();
  verify->add_option("plan", plan_path, "plan file")->required();

  auto* analyze = app.add_subcommand("analyze", "Print structural properties of an instance");
  analyze->add_option("instance", instance_path, "instance file")->required();

  EquivConfig equiv;
  auto* equivcheck = app.add_subcommand("equivcheck", "Cross-check the 3SAT reduction against truth tables");
  equivcheck->add_option("--max-n", equiv.max_n, "variables (exhaustive: up to; sampled: exactly)");
  equivcheck->add_option("--max-k", equiv.max_k, "clauses (exhaustive: up to; sampled: exactly)");
  equivcheck->add_option("--samples", equiv.samples, "random formulas to draw; 0 enumerates exhaustively");
  equivcheck->add_option("--seed", equiv.seed, "sampling seed");
  equivcheck->add_option("--bfs-max-n", equiv.bfs_max_n, "largest n checked by BFS");
  equivcheck->add_option("--bfs-max-k", equiv.bfs_max_k, "largest k checked by BFS");
  equivcheck->add_flag("--mutate", equiv.mutate_clause_arcs, "sabotage clause arcs (self-test)");

  ProbeConfig probe_cfg;
  std::string probe_out, probe_records;
  std::optional<std::size_t> probe_samples;
  auto* probe = app.add_subcommand("probe", "Measure exact shortest plans on strongly connected digraphs");
  probe->add_option("--min-vertices", probe_cfg.min_vertices, "smallest digraph");
  probe->add_option("--max-vertices", probe_cfg.max_vertices, "largest digraph (at most 5)");
  probe->add_option("--agents", probe_cfg.agents, "fixed agent count (default 1..|V|-1)");
  probe->add_option("--samples", probe_samples, "seeded samples; 0 forces exhaustive enumeration");
  probe->add_option("--seed", probe_cfg.seed, "sampling seed");
  probe->add_option("--poly-degree", probe_cfg.poly_degree, "envelope degree");
  probe->add_option("--poly-coefficient", probe_cfg.poly_coefficient, "envelope coefficient");
  probe->add_option("--output", probe_out, "summary TSV (default stdout)");
  probe->add_option("--records", probe_records, "per-instance TSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*reduce) return cmd_reduce(cnf_path, out_path, pad);
    if (*solve) return cmd_solve(instance_path, solve_opt);
    if (*verify) return cmd_verify(instance_path, plan_path);
    if (*analyze) return cmd_analyze(instance_path);
    if (*equivcheck) return cmd_equivcheck(equiv);
    if (*probe) {
      probe_cfg.samples = probe_samples;
      return cmd_probe(probe_cfg, probe_out, probe_records);
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIo;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
