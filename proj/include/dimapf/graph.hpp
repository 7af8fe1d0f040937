#pragma once

// Simple directed and undirected graphs over dense integer vertex ids, plus
// the structural analyses used throughout the toolkit: strongly connected
// components, condensation, acyclicity and (strong) biconnectivity.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dimapf {

using VertexId = std::uint32_t;

struct Arc {
  VertexId from;
  VertexId to;

  friend auto operator<=>(const Arc&, const Arc&) = default;
};

struct Edge {
  VertexId a;  // a < b
  VertexId b;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

namespace detail {

inline void check_endpoint(VertexId v, std::size_t n, const char* what) {
  if (v >= n) {
    throw std::invalid_argument(std::string(what) + " endpoint " + std::to_string(v) +
                                " is not a declared vertex");
  }
}

}  // namespace detail

// Immutable simple digraph. Vertices are 0..vertex_count()-1; labels are for
// presentation only and default to "v<id+1>".
class Digraph {
 public:
  Digraph() = default;

  // Duplicate arcs collapse; self-loops and undeclared endpoints throw.
  explicit Digraph(std::size_t vertex_count, std::vector<Arc> arcs = {},
                   std::vector<std::string> labels = {})
      : labels_(std::move(labels)), out_(vertex_count), in_(vertex_count) {
    if (!labels_.empty() && labels_.size() != vertex_count) {
      throw std::invalid_argument("label table size does not match vertex count");
    }
    if (labels_.empty()) {
      labels_.reserve(vertex_count);
      for (std::size_t v = 0; v < vertex_count; ++v) labels_.push_back("v" + std::to_string(v + 1));
    }
    for (const Arc& a : arcs) {
      detail::check_endpoint(a.from, vertex_count, "arc");
      detail::check_endpoint(a.to, vertex_count, "arc");
      if (a.from == a.to) {
        throw std::invalid_argument("self-loop on vertex " + std::to_string(a.from));
      }
    }
    std::sort(arcs.begin(), arcs.end());
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
    arcs_ = std::move(arcs);
    for (const Arc& a : arcs_) {
      out_[a.from].push_back(a.to);
      in_[a.to].push_back(a.from);
    }
    for (auto& preds : in_) std::sort(preds.begin(), preds.end());
  }

  std::size_t vertex_count() const { return out_.size(); }
  std::size_t arc_count() const { return arcs_.size(); }

  // Sorted by (from, to).
  const std::vector<Arc>& arcs() const { return arcs_; }
  // Ascending vertex ids.
  const std::vector<VertexId>& successors(VertexId v) const { return out_.at(v); }
  const std::vector<VertexId>& predecessors(VertexId v) const { return in_.at(v); }

  bool has_arc(VertexId u, VertexId v) const {
    if (u >= out_.size()) return false;
    const auto& succ = out_[u];
    return std::binary_search(succ.begin(), succ.end(), v);
  }

  const std::string& label(VertexId v) const { return labels_.at(v); }
  const std::vector<std::string>& labels() const { return labels_; }

  friend bool operator==(const Digraph& x, const Digraph& y) {
    return x.vertex_count() == y.vertex_count() && x.arcs_ == y.arcs_ && x.labels_ == y.labels_;
  }

 private:
  std::vector<std::string> labels_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<VertexId>> out_;
  std::vector<std::vector<VertexId>> in_;
};

// Immutable simple undirected graph.
class Graph {
 public:
  Graph() = default;

  explicit Graph(std::size_t vertex_count, std::vector<Edge> edges = {}) : adj_(vertex_count) {
    for (Edge& e : edges) {
      detail::check_endpoint(e.a, vertex_count, "edge");
      detail::check_endpoint(e.b, vertex_count, "edge");
      if (e.a == e.b) throw std::invalid_argument("self-loop on vertex " + std::to_string(e.a));
      if (e.a > e.b) std::swap(e.a, e.b);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edges_ = std::move(edges);
    for (const Edge& e : edges_) {
      adj_[e.a].push_back(e.b);
      adj_[e.b].push_back(e.a);
    }
    for (auto& nbrs : adj_) std::sort(nbrs.begin(), nbrs.end());
  }

  std::size_t vertex_count() const { return adj_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<VertexId>& neighbors(VertexId v) const { return adj_.at(v); }

  bool has_edge(VertexId u, VertexId v) const {
    if (u >= adj_.size()) return false;
    return std::binary_search(adj_[u].begin(), adj_[u].end(), v);
  }

  friend bool operator==(const Graph& x, const Graph& y) {
    return x.vertex_count() == y.vertex_count() && x.edges_ == y.edges_;
  }

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<VertexId>> adj_;
};

struct SccPartition {
  // Each component is sorted ascending; components are ordered by their
  // smallest member.
  std::vector<std::vector<VertexId>> components;
  std::vector<std::size_t> component_of;

  std::size_t size() const { return components.size(); }
};

inline Graph underlying_graph(const Digraph& d) {
  std::vector<Edge> edges;
  edges.reserve(d.arc_count());
  for (const Arc& a : d.arcs()) edges.push_back({std::min(a.from, a.to), std::max(a.from, a.to)});
  return Graph(d.vertex_count(), std::move(edges));
}

// Tarjan's algorithm with an explicit call stack, so deep chains (the
// reduction's sequencer) cannot overflow the native stack.
inline SccPartition strongly_connected_components(const Digraph& d) {
  const std::size_t n = d.vertex_count();
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnvisited);
  std::vector<std::size_t> lowlink(n, 0);
  std::vector<char> on_stack(n, 0);
  std::vector<VertexId> stack;
  std::vector<std::vector<VertexId>> components;
  std::size_t next_index = 0;

  struct Frame {
    VertexId v;
    std::size_t next_child;
  };
  std::vector<Frame> calls;

  for (VertexId root = 0; root < n; ++root) {
    if (index[root] != kUnvisited) continue;
    calls.push_back({root, 0});
    index[root] = lowlink[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = 1;

    while (!calls.empty()) {
      Frame& f = calls.back();
      const auto& succ = d.successors(f.v);
      if (f.next_child < succ.size()) {
        VertexId w = succ[f.next_child++];
        if (index[w] == kUnvisited) {
          index[w] = lowlink[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          calls.push_back({w, 0});
        } else if (on_stack[w]) {
          lowlink[f.v] = std::min(lowlink[f.v], index[w]);
        }
        continue;
      }
      VertexId v = f.v;
      calls.pop_back();
      if (!calls.empty()) {
        VertexId parent = calls.back().v;
        lowlink[parent] = std::min(lowlink[parent], lowlink[v]);
      }
      if (lowlink[v] == index[v]) {
        std::vector<VertexId> comp;
        VertexId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp.push_back(w);
        } while (w != v);
        std::sort(comp.begin(), comp.end());
        components.push_back(std::move(comp));
      }
    }
  }

  std::sort(components.begin(), components.end(),
            [](const auto& x, const auto& y) { return x.front() < y.front(); });
  SccPartition result;
  result.component_of.assign(n, 0);
  for (std::size_t c = 0; c < components.size(); ++c) {
    for (VertexId v : components[c]) result.component_of[v] = c;
  }
  result.components = std::move(components);
  return result;
}

inline bool is_strongly_connected(const Digraph& d) {
  // The empty digraph is not strongly connected; a single vertex is.
  return strongly_connected_components(d).size() == 1;
}

// Component c of the input becomes vertex c of the result, labelled with the
// component's smallest member.
inline Digraph condensation(const Digraph& d, const SccPartition& scc) {
  std::vector<Arc> arcs;
  for (const Arc& a : d.arcs()) {
    auto cu = static_cast<VertexId>(scc.component_of[a.from]);
    auto cv = static_cast<VertexId>(scc.component_of[a.to]);
    if (cu != cv) arcs.push_back({cu, cv});
  }
  std::vector<std::string> labels;
  labels.reserve(scc.size());
  for (const auto& comp : scc.components) labels.push_back(d.label(comp.front()));
  return Digraph(scc.size(), std::move(arcs), std::move(labels));
}

inline Digraph condensation(const Digraph& d) {
  return condensation(d, strongly_connected_components(d));
}

// Kahn's algorithm.
inline bool is_dag(const Digraph& d) {
  const std::size_t n = d.vertex_count();
  std::vector<std::size_t> indegree(n);
  for (VertexId v = 0; v < n; ++v) indegree[v] = d.predecessors(v).size();
  std::vector<VertexId> ready;
  for (VertexId v = 0; v < n; ++v) {
    if (indegree[v] == 0) ready.push_back(v);
  }
  std::size_t removed = 0;
  while (!ready.empty()) {
    VertexId v = ready.back();
    ready.pop_back();
    ++removed;
    for (VertexId w : d.successors(v)) {
      if (--indegree[w] == 0) ready.push_back(w);
    }
  }
  return removed == n;
}

inline bool is_connected(const Graph& g) {
  const std::size_t n = g.vertex_count();
  if (n == 0) return false;
  std::vector<char> seen(n, 0);
  std::vector<VertexId> todo{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!todo.empty()) {
    VertexId v = todo.back();
    todo.pop_back();
    for (VertexId w : g.neighbors(v)) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        todo.push_back(w);
      }
    }
  }
  return reached == n;
}

// Articulation points by DFS low-points (iterative). Result is ascending.
inline std::vector<VertexId> articulation_points(const Graph& g) {
  const std::size_t n = g.vertex_count();
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> disc(n, kUnvisited);
  std::vector<std::size_t> low(n, 0);
  std::vector<char> is_cut(n, 0);
  std::size_t timer = 0;

  struct Frame {
    VertexId v;
    VertexId parent;
    bool has_parent;
    std::size_t next_child;
    std::size_t tree_children;
  };
  std::vector<Frame> calls;

  for (VertexId root = 0; root < n; ++root) {
    if (disc[root] != kUnvisited) continue;
    disc[root] = low[root] = timer++;
    calls.push_back({root, 0, false, 0, 0});
    while (!calls.empty()) {
      Frame& f = calls.back();
      const auto& nbrs = g.neighbors(f.v);
      if (f.next_child < nbrs.size()) {
        VertexId w = nbrs[f.next_child++];
        if (disc[w] == kUnvisited) {
          ++f.tree_children;
          disc[w] = low[w] = timer++;
          calls.push_back({w, f.v, true, 0, 0});
        } else if (!f.has_parent || w != f.parent) {
          low[f.v] = std::min(low[f.v], disc[w]);
        }
        continue;
      }
      Frame done = f;
      calls.pop_back();
      if (!done.has_parent) {
        if (done.tree_children > 1) is_cut[done.v] = 1;
      } else {
        Frame& parent = calls.back();
        low[parent.v] = std::min(low[parent.v], low[done.v]);
        if (parent.has_parent && low[done.v] >= disc[parent.v]) is_cut[parent.v] = 1;
      }
    }
  }

  std::vector<VertexId> cuts;
  for (VertexId v = 0; v < n; ++v) {
    if (is_cut[v]) cuts.push_back(v);
  }
  return cuts;
}

// Connected and free of cut vertices. One vertex, and two adjacent
// vertices, count as biconnected; the empty graph does not.
inline bool is_biconnected(const Graph& g) {
  return is_connected(g) && articulation_points(g).empty();
}

inline bool is_strongly_biconnected(const Digraph& d) {
  return is_strongly_connected(d) && is_biconnected(underlying_graph(d));
}

// Adds the reverse of every arc.
inline Digraph bidirected(const Graph& g, std::vector<std::string> labels = {}) {
  std::vector<Arc> arcs;
  arcs.reserve(2 * g.edge_count());
  for (const Edge& e : g.edges()) {
    arcs.push_back({e.a, e.b});
    arcs.push_back({e.b, e.a});
  }
  return Digraph(g.vertex_count(), std::move(arcs), std::move(labels));
}

}  // namespace dimapf
