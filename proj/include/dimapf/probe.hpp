#pragma once

// Empirical probe of shortest plan lengths on strongly connected digraphs.
// Families are enumerated exhaustively when small enough, otherwise sampled
// with a seeded generator; every recorded length is an exact BFS distance.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "dimapf/graph.hpp"
#include "dimapf/mapf.hpp"
#include "dimapf/solver.hpp"

namespace dimapf {

struct ProbeConfig {
  std::size_t min_vertices = 1;
  std::size_t max_vertices = 5;
  // Fixed agent count; unset probes 1..|V|-1 agents.
  std::optional<std::size_t> agents;
  // Unset: exhaustive if the family has at most `exhaustive_limit`
  // instances, otherwise `default_samples` seeded samples. Zero forces
  // exhaustive enumeration.
  std::optional<std::size_t> samples;
  std::size_t exhaustive_limit = 1'000'000;
  std::size_t default_samples = 20'000;
  std::uint64_t seed = 1;
  // Envelope coefficient * |V|^degree.
  unsigned poly_degree = 3;
  double poly_coefficient = 1.0;
  // Hard ceiling on recorded instances.
  std::size_t max_instances = 5'000'000;
  SearchLimits limits;
};

struct ProbeRecord {
  std::size_t vertices;
  std::vector<Arc> arcs;
  State start;
  State goal;
  std::optional<std::size_t> shortest;  // nullopt: unsolvable

  std::size_t agents() const { return start.size(); }
};

struct ProbeGroup {
  std::size_t vertices;
  std::size_t arcs;
  std::size_t agents;
  std::size_t instances = 0;
  std::size_t solvable = 0;
  std::size_t max_shortest = 0;
  std::size_t exceeding = 0;
};

struct ProbeReport {
  std::string family;
  bool exhaustive = true;
  std::vector<ProbeRecord> records;
  // Keyed and ordered by (vertices, arcs, agents).
  std::vector<ProbeGroup> groups;
  std::size_t max_shortest = 0;
  // Indices into `records` whose shortest length exceeds the envelope.
  std::vector<std::size_t> exceeding;
  // Set when a limit stopped the probe before the family was covered.
  std::optional<std::string> partial;
  unsigned poly_degree = 3;
  double poly_coefficient = 1.0;

  double envelope(std::size_t vertices) const {
    return poly_coefficient * std::pow(static_cast<double>(vertices), static_cast<double>(poly_degree));
  }
  // 2|V|^2 * p(|V|): the length a per-component splice of short plans would
  // give if p were the envelope.
  double composite_bound(std::size_t vertices) const {
    return 2.0 * static_cast<double>(vertices) * static_cast<double>(vertices) * envelope(vertices);
  }
};

namespace detail {

// Ordered pairs (u, v), u != v, in lexicographic order; bit i of an arc mask
// selects pair i.
inline std::vector<Arc> all_arcs(std::size_t n) {
  std::vector<Arc> pairs;
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = 0; v < n; ++v) {
      if (u != v) pairs.push_back({u, v});
    }
  }
  return pairs;
}

inline std::vector<Arc> arcs_of_mask(const std::vector<Arc>& pairs, std::uint64_t mask) {
  std::vector<Arc> arcs;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (mask >> i & 1u) arcs.push_back(pairs[i]);
  }
  return arcs;
}

// All injective placements of `agents` agents on `n` vertices, in
// lexicographic order.
inline std::vector<State> injective_placements(std::size_t n, std::size_t agents) {
  std::vector<State> out;
  if (agents > n) return out;
  State cur;
  std::vector<char> used(n, 0);
  auto rec = [&](auto&& self) -> void {
    if (cur.size() == agents) {
      out.push_back(cur);
      return;
    }
    for (VertexId v = 0; v < n; ++v) {
      if (used[v]) continue;
      used[v] = 1;
      cur.placement.push_back(v);
      self(self);
      cur.placement.pop_back();
      used[v] = 0;
    }
  };
  rec(rec);
  return out;
}

inline std::vector<std::size_t> agent_counts(const ProbeConfig& cfg, std::size_t n) {
  std::vector<std::size_t> out;
  if (n == 0) return out;
  if (cfg.agents) {
    if (*cfg.agents >= 1 && *cfg.agents + 1 <= n) out.push_back(*cfg.agents);
  } else {
    for (std::size_t m = 1; m + 1 <= n; ++m) out.push_back(m);
  }
  return out;
}

inline std::uint64_t falling_factorial(std::size_t n, std::size_t k) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < k; ++i) r *= n - i;
  return r;
}

inline MapfInstance probe_instance(std::size_t n, const std::vector<Arc>& arcs, const State& start, const State& goal) {
  MapfInstance inst;
  inst.digraph = Digraph(n, arcs);
  for (std::size_t r = 0; r < start.size(); ++r) inst.agent_names.push_back("a" + std::to_string(r + 1));
  inst.start = start;
  inst.goal = goal;
  return inst;
}

class ProbeLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace detail

inline std::string describe_family(const ProbeConfig& cfg) {
  std::string agents = cfg.agents ? std::to_string(*cfg.agents) : std::string("1..|V|-1");
  return "strongly connected digraphs, |V| in " + std::to_string(cfg.min_vertices) + ".." +
         std::to_string(cfg.max_vertices) + ", agents " + agents;
}

inline ProbeReport hypothesis_probe(const ProbeConfig& cfg) {
  ProbeReport report;
  report.family = describe_family(cfg);
  report.poly_degree = cfg.poly_degree;
  report.poly_coefficient = cfg.poly_coefficient;
  // Strongly connected arc masks per vertex count.
  std::map<std::size_t, std::vector<std::uint64_t>> strong_masks;
  std::uint64_t family_size = 0;
  for (std::size_t n = std::max<std::size_t>(cfg.min_vertices, 1); n <= cfg.max_vertices; ++n) {
    const auto counts = detail::agent_counts(cfg, n);
    if (counts.empty()) continue;
    const auto pairs = detail::all_arcs(n);
    if (pairs.size() > 24) {
      report.partial = "arc subsets of " + std::to_string(n) + " vertices cannot be enumerated";
      return report;
    }
    auto& masks = strong_masks[n];
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << pairs.size()); ++mask) {
      if (is_strongly_connected(Digraph(n, detail::arcs_of_mask(pairs, mask)))) masks.push_back(mask);
    }
    for (std::size_t m : counts) {
      const std::uint64_t placements = detail::falling_factorial(n, m);
      family_size += masks.size() * placements * placements;
    }
  }

  const bool exhaustive =
      cfg.samples ? *cfg.samples == 0 : family_size <= static_cast<std::uint64_t>(cfg.exhaustive_limit);
  report.exhaustive = exhaustive;

  auto record = [&](ProbeRecord rec) {
    if (report.records.size() >= cfg.max_instances) {
      throw detail::ProbeLimit("instance ceiling of " + std::to_string(cfg.max_instances) + " reached");
    }
    report.records.push_back(std::move(rec));
  };

  try {
    if (exhaustive) {
      for (const auto& [n, masks] : strong_masks) {
        const auto pairs = detail::all_arcs(n);
        for (std::size_t m : detail::agent_counts(cfg, n)) {
          const auto placements = detail::injective_placements(n, m);
          std::map<std::vector<VertexId>, std::size_t> index_of;
          for (std::size_t i = 0; i < placements.size(); ++i) index_of.emplace(placements[i].placement, i);
          for (std::uint64_t mask : masks) {
            const auto arcs = detail::arcs_of_mask(pairs, mask);
            for (const State& start : placements) {
              std::vector<std::optional<std::size_t>> dist(placements.size());
              auto inst = detail::probe_instance(n, arcs, start, start);
              try {
                explore_reachable(inst, cfg.limits, [&](std::span<const VertexId> s, std::size_t depth) {
                  dist[index_of.at(std::vector<VertexId>(s.begin(), s.end()))] = depth;
                });
              } catch (const std::runtime_error& e) {
                throw detail::ProbeLimit(e.what());
              }
              for (std::size_t g = 0; g < placements.size(); ++g) {
                record({n, arcs, start, placements[g], dist[g]});
              }
            }
          }
        }
      }
    } else {
      std::mt19937_64 rng(cfg.seed);
      const std::size_t samples = cfg.samples.value_or(cfg.default_samples);
      std::vector<std::pair<std::size_t, std::size_t>> shapes;  // (n, m)
      for (const auto& [n, masks] : strong_masks) {
        if (masks.empty()) continue;
        for (std::size_t m : detail::agent_counts(cfg, n)) shapes.emplace_back(n, m);
      }
      for (std::size_t s = 0; s < samples && !shapes.empty(); ++s) {
        const auto [n, m] = shapes[std::uniform_int_distribution<std::size_t>(0, shapes.size() - 1)(rng)];
        const auto& masks = strong_masks.at(n);
        const std::uint64_t mask = masks[std::uniform_int_distribution<std::size_t>(0, masks.size() - 1)(rng)];
        const auto arcs = detail::arcs_of_mask(detail::all_arcs(n), mask);
        std::vector<VertexId> perm(n);
        std::iota(perm.begin(), perm.end(), VertexId{0});
        std::shuffle(perm.begin(), perm.end(), rng);
        State start{{perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(m)}};
        std::shuffle(perm.begin(), perm.end(), rng);
        State goal{{perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(m)}};
        const auto result = solve_bfs(detail::probe_instance(n, arcs, start, goal), cfg.limits);
        if (result.resource_limited()) {
          throw detail::ProbeLimit(std::get<outcome::ResourceLimit>(result.outcome).reason);
        }
        std::optional<std::size_t> len;
        if (result.solvable()) len = result.plan().size();
        record({n, arcs, std::move(start), std::move(goal), len});
      }
      std::sort(report.records.begin(), report.records.end(), [](const ProbeRecord& a, const ProbeRecord& b) {
        return std::tie(a.vertices, a.arcs, a.start.placement, a.goal.placement) <
               std::tie(b.vertices, b.arcs, b.start.placement, b.goal.placement);
      });
    }
  } catch (const detail::ProbeLimit& e) {
    report.partial = e.what();
  }

  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, ProbeGroup> groups;
  for (std::size_t i = 0; i < report.records.size(); ++i) {
    const ProbeRecord& rec = report.records[i];
    auto& g = groups[{rec.vertices, rec.arcs.size(), rec.agents()}];
    g.vertices = rec.vertices;
    g.arcs = rec.arcs.size();
    g.agents = rec.agents();
    ++g.instances;
    if (!rec.shortest) continue;
    ++g.solvable;
    g.max_shortest = std::max(g.max_shortest, *rec.shortest);
    report.max_shortest = std::max(report.max_shortest, *rec.shortest);
    if (static_cast<double>(*rec.shortest) > report.envelope(rec.vertices)) {
      ++g.exceeding;
      report.exceeding.push_back(i);
    }
  }
  for (auto& [key, g] : groups) report.groups.push_back(g);
  return report;
}

// Tab-separated summary: one row per (vertices, arcs, agents) group.
inline std::string probe_summary_tsv(const ProbeReport& r) {
  std::string out = "# family: " + r.family + "\n";
  out += std::string("# mode: ") + (r.exhaustive ? "exhaustive" : "sampled") + "\n";
  out += "# envelope: " + std::to_string(r.poly_coefficient) + " * |V|^" + std::to_string(r.poly_degree) + "\n";
  if (r.partial) out += "# partial: " + *r.partial + "\n";
  out += "vertices\tarcs\tagents\tinstances\tsolvable\tmax_shortest\tratio_to_cubic\tenvelope\tcomposite_bound\texceeding\n";
  for (const ProbeGroup& g : r.groups) {
    const double cubic = std::pow(static_cast<double>(g.vertices), 3.0);
    char ratio[32];
    std::snprintf(ratio, sizeof ratio, "%.4f", static_cast<double>(g.max_shortest) / cubic);
    char env[32];
    std::snprintf(env, sizeof env, "%.6g", r.envelope(g.vertices));
    char comp[32];
    std::snprintf(comp, sizeof comp, "%.6g", r.composite_bound(g.vertices));
    out += std::to_string(g.vertices) + "\t" + std::to_string(g.arcs) + "\t" + std::to_string(g.agents) + "\t" +
           std::to_string(g.instances) + "\t" + std::to_string(g.solvable) + "\t" + std::to_string(g.max_shortest) +
           "\t" + ratio + "\t" + env + "\t" + comp + "\t" + std::to_string(g.exceeding) + "\n";
  }
  return out;
}

// Tab-separated per-instance records.
inline std::string probe_records_tsv(const ProbeReport& r) {
  auto join = [](const std::vector<VertexId>& vs) {
    std::string s;
    for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? "," : "") + std::to_string(vs[i]);
    return s;
  };
  std::string out = "vertices\tarcs\tarc_list\tagents\tstart\tgoal\tshortest\n";
  for (const ProbeRecord& rec : r.records) {
    std::string arcs;
    for (std::size_t i = 0; i < rec.arcs.size(); ++i) {
      arcs += (i ? "," : "") + std::to_string(rec.arcs[i].from) + ">" + std::to_string(rec.arcs[i].to);
    }
    out += std::to_string(rec.vertices) + "\t" + std::to_string(rec.arcs.size()) + "\t" + arcs + "\t" +
           std::to_string(rec.agents()) + "\t" + join(rec.start.placement) + "\t" + join(rec.goal.placement) + "\t" +
           (rec.shortest ? std::to_string(*rec.shortest) : std::string("unsolvable")) + "\n";
  }
  return out;
}

}  // namespace dimapf
