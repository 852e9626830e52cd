#include <algorithm>
#include <deque>
#include <limits>

#include "mbgame/errors.hpp"
#include "mbgame/graph.hpp"

namespace mbgame {

namespace {

constexpr int kInf = std::numeric_limits<int>::max() / 4;

// Dinic max-flow on small integer networks.
class FlowNetwork {
 public:
  explicit FlowNetwork(int nodes) : head_(nodes, -1), level_(nodes), iter_(nodes) {}

  void add_arc(int from, int to, int cap, int reverse_cap = 0) {
    arcs_.push_back({to, cap, head_[from]});
    head_[from] = static_cast<int>(arcs_.size()) - 1;
    arcs_.push_back({from, reverse_cap, head_[to]});
    head_[to] = static_cast<int>(arcs_.size()) - 1;
  }

  // Stops once `limit` units have been pushed.
  int max_flow(int s, int t, int limit) {
    int flow = 0;
    while (flow < limit && bfs(s, t)) {
      iter_ = head_;
      while (flow < limit) {
        int pushed = dfs(s, t, limit - flow);
        if (pushed == 0) break;
        flow += pushed;
      }
    }
    return flow;
  }

  std::vector<char> residual_reachable(int s) const {
    std::vector<char> seen(head_.size(), 0);
    std::vector<int> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int a = head_[x]; a >= 0; a = arcs_[a].next)
        if (arcs_[a].cap > 0 && !seen[arcs_[a].to]) {
          seen[arcs_[a].to] = 1;
          stack.push_back(arcs_[a].to);
        }
    }
    return seen;
  }

 private:
  struct Arc {
    int to;
    int cap;
    int next;
  };

  bool bfs(int s, int t) {
    std::fill(level_.begin(), level_.end(), -1);
    std::deque<int> queue{s};
    level_[s] = 0;
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop_front();
      for (int a = head_[x]; a >= 0; a = arcs_[a].next)
        if (arcs_[a].cap > 0 && level_[arcs_[a].to] < 0) {
          level_[arcs_[a].to] = level_[x] + 1;
          queue.push_back(arcs_[a].to);
        }
    }
    return level_[t] >= 0;
  }

  int dfs(int x, int t, int want) {
    if (x == t) return want;
    for (int& a = iter_[x]; a >= 0; a = arcs_[a].next) {
      Arc& arc = arcs_[a];
      if (arc.cap <= 0 || level_[arc.to] != level_[x] + 1) continue;
      int got = dfs(arc.to, t, std::min(want, arc.cap));
      if (got > 0) {
        arc.cap -= got;
        arcs_[a ^ 1].cap += got;
        return got;
      }
    }
    return 0;
  }

  std::vector<Arc> arcs_;
  std::vector<int> head_;
  std::vector<int> level_;
  std::vector<int> iter_;
};

FlowNetwork edge_network(const Graph& g) {
  FlowNetwork net(g.order());
  for (const Edge& e : g.edges()) net.add_arc(e.u, e.v, 1, 1);
  return net;
}

// Vertex v splits into in = 2v, out = 2v+1.
FlowNetwork split_network(const Graph& g, Vertex s, Vertex t) {
  FlowNetwork net(2 * g.order());
  for (Vertex v = 0; v < g.order(); ++v)
    net.add_arc(2 * v, 2 * v + 1, (v == s || v == t) ? kInf : 1);
  for (const Edge& e : g.edges()) {
    net.add_arc(2 * e.u + 1, 2 * e.v, kInf);
    net.add_arc(2 * e.v + 1, 2 * e.u, kInf);
  }
  return net;
}

void require_two_vertices(const Graph& g, const char* what) {
  if (g.order() < 2) throw DomainError(std::string(what) + " needs at least 2 vertices");
}

}  // namespace

int local_edge_connectivity(const Graph& g, Vertex s, Vertex t) {
  if (s == t || s < 0 || t < 0 || s >= g.order() || t >= g.order())
    throw DomainError("local_edge_connectivity: invalid terminals");
  FlowNetwork net = edge_network(g);
  return net.max_flow(s, t, kInf);
}

EdgeCut min_edge_cut(const Graph& g) {
  require_two_vertices(g, "edge_connectivity");
  auto comps = connected_components(g);
  if (comps.size() > 1) return EdgeCut{0, comps.front()};
  Vertex lightest = 0;
  for (Vertex v = 1; v < g.order(); ++v)
    if (g.degree(v) < g.degree(lightest)) lightest = v;
  EdgeCut best{g.degree(lightest), {lightest}};
  for (Vertex t = 1; t < g.order() && best.value > 0; ++t) {
    FlowNetwork net = edge_network(g);
    int flow = net.max_flow(0, t, best.value);
    if (flow < best.value) {
      auto reach = net.residual_reachable(0);
      best.value = flow;
      best.side.clear();
      for (Vertex v = 0; v < g.order(); ++v)
        if (reach[v]) best.side.push_back(v);
    }
  }
  return best;
}

int edge_connectivity(const Graph& g) { return min_edge_cut(g).value; }

int local_vertex_connectivity(const Graph& g, Vertex s, Vertex t) {
  if (s == t || s < 0 || t < 0 || s >= g.order() || t >= g.order())
    throw DomainError("local_vertex_connectivity: invalid terminals");
  if (g.adjacent(s, t)) throw DomainError("local_vertex_connectivity: terminals are adjacent");
  FlowNetwork net = split_network(g, s, t);
  return net.max_flow(2 * s + 1, 2 * t, kInf);
}

VertexCut min_vertex_cut(const Graph& g) {
  require_two_vertices(g, "vertex_connectivity");
  const int n = g.order();
  if (g.size() == static_cast<std::size_t>(n) * (n - 1) / 2) return VertexCut{n - 1, {}};
  if (!is_connected(g)) return VertexCut{0, {}};
  Vertex lightest = 0;
  for (Vertex v = 1; v < n; ++v)
    if (g.degree(v) < g.degree(lightest)) lightest = v;
  auto nb = g.neighbors(lightest);
  VertexCut best{g.degree(lightest), std::vector<Vertex>(nb.begin(), nb.end())};
  // Some vertex among the first best+1 lies outside every minimum separator.
  for (Vertex i = 0; i < n && i <= best.value; ++i) {
    for (Vertex j = i + 1; j < n; ++j) {
      if (g.adjacent(i, j)) continue;
      FlowNetwork net = split_network(g, i, j);
      int flow = net.max_flow(2 * i + 1, 2 * j, best.value);
      if (flow < best.value) {
        auto reach = net.residual_reachable(2 * i + 1);
        best.value = flow;
        best.separator.clear();
        for (Vertex v = 0; v < n; ++v)
          if (v != i && v != j && reach[2 * v] && !reach[2 * v + 1]) best.separator.push_back(v);
      }
    }
  }
  return best;
}

int vertex_connectivity(const Graph& g) { return min_vertex_cut(g).value; }

}  // namespace mbgame
