#include "mbgame/graph_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "mbgame/errors.hpp"

namespace mbgame {

Graph parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_graph(in);
}

Graph read_graph(std::istream& in) {
  std::string line;
  int line_no = 0;
  long long n = -1, m = -1;
  std::vector<Edge> edges;
  std::set<Edge> seen;
  auto fail = [&](const std::string& why) {
    return ParseError("graph line " + std::to_string(line_no) + ": " + why);
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string tag;
    if (!(fields >> tag) || tag[0] == 'c') continue;
    if (tag == "p") {
      if (n >= 0) throw fail("second header line");
      if (!(fields >> n >> m) || n < 0 || m < 0) throw fail("malformed header");
    } else if (tag == "e") {
      if (n < 0) throw fail("edge before header");
      long long u, v;
      if (!(fields >> u >> v)) throw fail("malformed edge");
      if (u < 0 || v < 0 || u >= n || v >= n) throw fail("endpoint out of range");
      if (u == v) throw fail("loop at vertex " + std::to_string(u));
      Edge e = make_edge(static_cast<Vertex>(u), static_cast<Vertex>(v));
      if (!seen.insert(e).second) throw fail("duplicate edge");
      edges.push_back(e);
    } else {
      throw fail("unknown line tag '" + tag + "'");
    }
    std::string extra;
    if (fields >> extra) throw fail("trailing tokens");
  }
  if (n < 0) throw ParseError("graph: missing 'p' header");
  if (static_cast<long long>(edges.size()) != m)
    throw ParseError("graph: header declares " + std::to_string(m) + " edges, found " +
                     std::to_string(edges.size()));
  return Graph(static_cast<int>(n), edges);
}

Graph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open graph file " + path.string());
  return read_graph(in);
}

std::string format_graph(const Graph& g) {
  std::ostringstream out;
  write_graph(out, g);
  return out.str();
}

void write_graph(std::ostream& out, const Graph& g) {
  out << "p " << g.order() << ' ' << g.size() << '\n';
  for (const Edge& e : g.edges()) out << "e " << e.u << ' ' << e.v << '\n';
}

}  // namespace mbgame
