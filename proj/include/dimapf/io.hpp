#pragma once

// Text formats: DIMACS CNF input, the line-oriented DIMAPF v1 instance
// format, plan documents, and the reduction's name-map sidecar.
//
//   dimapf 1
//   vertex <id> <name>
//   arc <name> <name>
//   agent <name> start <vertex-name> goal <vertex-name>
//
//   move <agent-name> <from-vertex> <to-vertex>
//
// '#' starts a comment in both instance and plan documents.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "dimapf/graph.hpp"
#include "dimapf/mapf.hpp"
#include "dimapf/reduction.hpp"

namespace dimapf {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

inline std::vector<std::string> tokenize(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  for (std::string tok; in >> tok;) out.push_back(std::move(tok));
  return out;
}

template <typename F>
void for_each_line(std::string_view text, F&& f) {
  std::size_t lineno = 0;
  while (!text.empty()) {
    ++lineno;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    f(lineno, line);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
}

inline std::optional<long long> parse_int(const std::string& s) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used != s.size()) return std::nullopt;
    return v;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace detail

struct DimacsOptions {
  // Repeat the last literal of short clauses up to width 3.
  bool pad = false;
};

inline Cnf3Formula parse_dimacs(std::string_view text, const DimacsOptions& options = {}) {
  Cnf3Formula f;
  std::optional<std::size_t> declared_clauses;
  std::vector<Literal> pending;
  std::size_t pending_line = 0;
  bool done = false;

  auto finish_clause = [&](std::size_t lineno) {
    if (pending.empty()) throw ParseError(lineno, "empty clause");
    if (pending.size() > 3) {
      throw ParseError(lineno, "clause has " + std::to_string(pending.size()) + " literals, expected 3");
    }
    if (pending.size() < 3 && !options.pad) {
      throw ParseError(lineno, "clause has " + std::to_string(pending.size()) +
                                   " literals, expected 3 (use padding to accept short clauses)");
    }
    while (pending.size() < 3) pending.push_back(pending.back());
    f.clauses.push_back({pending[0], pending[1], pending[2]});
    pending.clear();
  };

  std::size_t last_line = 0;
  detail::for_each_line(text, [&](std::size_t lineno, std::string_view line) {
    last_line = lineno;
    if (done) return;
    auto toks = detail::tokenize(line);
    if (toks.empty() || toks[0].front() == 'c') return;
    if (toks[0] == "%") {
      done = true;
      return;
    }
    if (toks[0] == "p") {
      if (declared_clauses) throw ParseError(lineno, "duplicate problem line");
      if (toks.size() != 4 || toks[1] != "cnf") throw ParseError(lineno, "malformed problem line");
      auto nv = detail::parse_int(toks[2]);
      auto nc = detail::parse_int(toks[3]);
      if (!nv || !nc || *nv < 0 || *nc < 0) throw ParseError(lineno, "malformed problem line");
      f.variable_count = static_cast<std::uint32_t>(*nv);
      declared_clauses = static_cast<std::size_t>(*nc);
      return;
    }
    if (!declared_clauses) throw ParseError(lineno, "clause before problem line");
    for (const auto& tok : toks) {
      auto v = detail::parse_int(tok);
      if (!v) throw ParseError(lineno, "malformed literal '" + tok + "'");
      if (*v == 0) {
        finish_clause(lineno);
        continue;
      }
      const long long var = *v < 0 ? -*v : *v;
      if (var > static_cast<long long>(f.variable_count)) {
        throw ParseError(lineno, "literal " + tok + " exceeds declared variable count");
      }
      if (pending.empty()) pending_line = lineno;
      pending.push_back({static_cast<std::uint32_t>(var), *v > 0});
    }
  });

  if (!declared_clauses) throw ParseError(last_line, "missing problem line");
  if (!pending.empty()) throw ParseError(pending_line, "clause not terminated by 0");
  if (f.clauses.size() != *declared_clauses) {
    throw ParseError(last_line, "problem line declares " + std::to_string(*declared_clauses) + " clauses, found " +
                                    std::to_string(f.clauses.size()));
  }
  return f;
}

inline std::string to_dimacs(const Cnf3Formula& f) {
  std::string out = "p cnf " + std::to_string(f.variable_count) + " " + std::to_string(f.clause_count()) + "\n";
  for (const Clause& c : f.clauses) {
    for (const Literal& l : c) out += (l.positive ? "" : "-") + std::to_string(l.variable) + " ";
    out += "0\n";
  }
  return out;
}

inline std::string serialize_instance(const MapfInstance& inst) {
  std::string out = "dimapf 1\n";
  const Digraph& d = inst.digraph;
  for (VertexId v = 0; v < d.vertex_count(); ++v) out += "vertex " + std::to_string(v) + " " + d.label(v) + "\n";
  for (const Arc& a : d.arcs()) out += "arc " + d.label(a.from) + " " + d.label(a.to) + "\n";
  for (AgentId r = 0; r < inst.agent_count(); ++r) {
    out += "agent " + inst.agent_names[r] + " start " + d.label(inst.start[r]) + " goal " + d.label(inst.goal[r]) +
           "\n";
  }
  return out;
}

inline MapfInstance parse_instance(std::string_view text) {
  bool saw_header = false;
  struct VertexLine {
    std::size_t lineno;
    std::size_t id;
    std::string name;
  };
  std::vector<VertexLine> vertices;
  std::vector<std::pair<std::size_t, std::vector<std::string>>> arc_lines;
  std::vector<std::pair<std::size_t, std::vector<std::string>>> agent_lines;

  detail::for_each_line(text, [&](std::size_t lineno, std::string_view line) {
    auto toks = detail::tokenize(line);
    if (toks.empty()) return;
    if (!saw_header) {
      if (toks.size() != 2 || toks[0] != "dimapf") throw ParseError(lineno, "expected header 'dimapf 1'");
      if (toks[1] != "1") throw ParseError(lineno, "unsupported format version " + toks[1]);
      saw_header = true;
      return;
    }
    if (toks[0] == "vertex") {
      if (toks.size() != 3) throw ParseError(lineno, "expected 'vertex <id> <name>'");
      auto id = detail::parse_int(toks[1]);
      if (!id || *id < 0) throw ParseError(lineno, "malformed vertex id '" + toks[1] + "'");
      vertices.push_back({lineno, static_cast<std::size_t>(*id), toks[2]});
    } else if (toks[0] == "arc") {
      if (toks.size() != 3) throw ParseError(lineno, "expected 'arc <name> <name>'");
      arc_lines.emplace_back(lineno, std::move(toks));
    } else if (toks[0] == "agent") {
      if (toks.size() != 6 || toks[2] != "start" || toks[4] != "goal") {
        throw ParseError(lineno, "expected 'agent <name> start <vertex> goal <vertex>'");
      }
      agent_lines.emplace_back(lineno, std::move(toks));
    } else {
      throw ParseError(lineno, "unknown record '" + toks[0] + "'");
    }
  });
  if (!saw_header) throw ParseError(1, "expected header 'dimapf 1'");

  const std::size_t n = vertices.size();
  std::vector<std::string> labels(n);
  std::vector<char> seen(n, 0);
  std::unordered_map<std::string, VertexId> by_name;
  for (const auto& [lineno, id, name] : vertices) {
    if (id >= n) throw ParseError(lineno, "vertex ids must be dense: 0.." + std::to_string(n - 1));
    if (seen[id]) throw ParseError(lineno, "duplicate vertex id " + std::to_string(id));
    if (!by_name.emplace(name, static_cast<VertexId>(id)).second) {
      throw ParseError(lineno, "duplicate vertex name " + name);
    }
    seen[id] = 1;
    labels[id] = name;
  }
  auto vertex = [&](std::size_t lineno, const std::string& name) {
    auto it = by_name.find(name);
    if (it == by_name.end()) throw ParseError(lineno, "unknown vertex '" + name + "'");
    return it->second;
  };

  std::vector<Arc> arcs;
  for (const auto& [lineno, toks] : arc_lines) {
    const Arc a{vertex(lineno, toks[1]), vertex(lineno, toks[2])};
    if (a.from == a.to) throw ParseError(lineno, "self-loop on " + toks[1]);
    arcs.push_back(a);
  }

  MapfInstance inst;
  inst.digraph = Digraph(n, std::move(arcs), std::move(labels));
  std::unordered_map<std::string, AgentId> agents;
  for (const auto& [lineno, toks] : agent_lines) {
    if (!agents.emplace(toks[1], static_cast<AgentId>(inst.agent_names.size())).second) {
      throw ParseError(lineno, "duplicate agent name " + toks[1]);
    }
    inst.agent_names.push_back(toks[1]);
    inst.start.placement.push_back(vertex(lineno, toks[3]));
    inst.goal.placement.push_back(vertex(lineno, toks[5]));
  }
  return inst;
}

inline std::string serialize_plan(const MapfInstance& inst, const Plan& p) {
  std::string out;
  for (const Move& m : p.moves) {
    out += "move " + inst.agent_names.at(m.agent) + " " + inst.digraph.label(m.from) + " " +
           inst.digraph.label(m.to) + "\n";
  }
  return out;
}

// A move line that cannot be resolved against the instance. `move_index` is
// the 0-based position the move would have had in the plan.
class PlanParseError : public ParseError {
 public:
  PlanParseError(std::size_t line, std::size_t move_index, const std::string& what)
      : ParseError(line, "move " + std::to_string(move_index) + ": " + what), move_index_(move_index) {}
  std::size_t move_index() const { return move_index_; }

 private:
  std::size_t move_index_;
};

inline Plan parse_plan(std::string_view text, const MapfInstance& inst) {
  std::unordered_map<std::string, AgentId> agents;
  for (AgentId r = 0; r < inst.agent_count(); ++r) agents.emplace(inst.agent_names[r], r);
  std::unordered_map<std::string, VertexId> vertices;
  for (VertexId v = 0; v < inst.vertex_count(); ++v) vertices.emplace(inst.digraph.label(v), v);

  Plan p;
  detail::for_each_line(text, [&](std::size_t lineno, std::string_view line) {
    auto toks = detail::tokenize(line);
    if (toks.empty()) return;
    const std::size_t index = p.moves.size();
    if (toks.size() != 4 || toks[0] != "move") {
      throw PlanParseError(lineno, index, "expected 'move <agent> <from> <to>'");
    }
    auto agent = agents.find(toks[1]);
    if (agent == agents.end()) throw PlanParseError(lineno, index, "unknown agent '" + toks[1] + "'");
    auto from = vertices.find(toks[2]);
    if (from == vertices.end()) throw PlanParseError(lineno, index, "unknown vertex '" + toks[2] + "'");
    auto to = vertices.find(toks[3]);
    if (to == vertices.end()) throw PlanParseError(lineno, index, "unknown vertex '" + toks[3] + "'");
    p.moves.push_back({agent->second, from->second, to->second});
  });
  return p;
}

// Tab-separated: kind, name, role, index.
inline std::string serialize_name_map(const ReductionArtifact& art) {
  std::string out = "# kind\tname\trole\tindex\n";
  for (const auto& row : art.name_table()) {
    out += row.kind + "\t" + row.name + "\t" + row.role + "\t" + std::to_string(row.index) + "\n";
  }
  return out;
}

}  // namespace dimapf
