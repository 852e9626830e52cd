#include <algorithm>
#include <set>

#include "mbgame/graph.hpp"

namespace mbgame {

namespace {

class MaderSearch {
 public:
  MaderSearch(const Graph& g, int target) : g_(g), target_(target) {}

  std::optional<std::vector<Vertex>> run(std::vector<Vertex> s) {
    peel(s);
    if (static_cast<int>(s.size()) < target_ + 1) return std::nullopt;
    if (!visited_.insert(s).second) return std::nullopt;

    Subgraph sub = induced_subgraph(g_, VertexSet(g_.order(), s));
    VertexCut cut = min_vertex_cut(sub.graph);
    if (cut.value >= target_) return s;

    std::vector<std::vector<Vertex>> sides;
    if (cut.value == 0) {
      for (auto& comp : connected_components(sub.graph)) sides.push_back(lift(sub, comp));
    } else {
      std::vector<char> removed(sub.graph.order(), 0);
      for (Vertex x : cut.separator) removed[x] = 1;
      std::vector<Vertex> rest;
      for (Vertex x = 0; x < sub.graph.order(); ++x)
        if (!removed[x]) rest.push_back(x);
      Subgraph remainder = induced_subgraph(sub.graph, VertexSet(sub.graph.order(), rest));
      for (auto& comp : connected_components(remainder.graph)) {
        std::vector<Vertex> side;
        for (Vertex x : comp) side.push_back(remainder.to_parent[x]);
        side.insert(side.end(), cut.separator.begin(), cut.separator.end());
        std::sort(side.begin(), side.end());
        sides.push_back(lift(sub, side));
      }
    }

    // Denser side first; ties to the larger side, then the lower minimum label.
    std::vector<std::pair<std::size_t, std::size_t>> keyed;  // (edges, index)
    for (std::size_t i = 0; i < sides.size(); ++i) keyed.emplace_back(edges_within(sides[i]), i);
    std::sort(keyed.begin(), keyed.end(), [&](const auto& x, const auto& y) {
      const auto& a = sides[x.second];
      const auto& b = sides[y.second];
      std::size_t lhs = x.first * b.size();
      std::size_t rhs = y.first * a.size();
      if (lhs != rhs) return lhs > rhs;
      if (a.size() != b.size()) return a.size() > b.size();
      return a.front() < b.front();
    });
    for (const auto& [edges, idx] : keyed) {
      if (auto found = run(sides[idx])) return found;
    }
    return std::nullopt;
  }

 private:
  static std::vector<Vertex> lift(const Subgraph& sub, const std::vector<Vertex>& local) {
    std::vector<Vertex> out;
    out.reserve(local.size());
    for (Vertex x : local) out.push_back(sub.to_parent[x]);
    std::sort(out.begin(), out.end());
    return out;
  }

  std::size_t edges_within(const std::vector<Vertex>& s) const {
    std::vector<char> in(g_.order(), 0);
    for (Vertex v : s) in[v] = 1;
    std::size_t twice = 0;
    for (Vertex v : s) twice += degree_into(g_, v, in);
    return twice / 2;
  }

  // A vertex of degree below the target cannot belong to a target-connected
  // subgraph of this set.
  void peel(std::vector<Vertex>& s) const {
    std::vector<char> in(g_.order(), 0);
    for (Vertex v : s) in[v] = 1;
    bool changed = true;
    while (changed) {
      changed = false;
      for (Vertex v : s)
        if (in[v] && degree_into(g_, v, in) < target_) {
          in[v] = 0;
          changed = true;
        }
    }
    std::erase_if(s, [&](Vertex v) { return !in[v]; });
  }

  const Graph& g_;
  int target_;
  std::set<std::vector<Vertex>> visited_;
};

}  // namespace

std::optional<VertexSet> mader_subgraph(const Graph& g, const Rational& k) {
  if (g.order() == 0) return std::nullopt;
  int target = static_cast<int>(std::max<std::int64_t>(1, ceil_int(k / 4)));
  MaderSearch search(g, target);
  auto found = search.run(VertexSet::all(g.order()).members());
  if (!found) return std::nullopt;
  VertexSet result(g.order(), std::move(*found));
  // Self-certifying: re-check before returning.
  Subgraph sub = induced_subgraph(g, result);
  if (sub.graph.order() < 2 || vertex_connectivity(sub.graph) < target) return std::nullopt;
  return result;
}

}  // namespace mbgame
