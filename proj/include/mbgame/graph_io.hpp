#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "mbgame/graph.hpp"

namespace mbgame {

// Text format: "p <n> <m>" then m lines "e <u> <v>", 0-based endpoints.
// Blank lines and lines starting with 'c' are ignored.
Graph parse_graph(std::string_view text);
Graph read_graph(std::istream& in);
Graph load_graph(const std::filesystem::path& path);

std::string format_graph(const Graph& g);
void write_graph(std::ostream& out, const Graph& g);

}  // namespace mbgame
