#include <charconv>
#include <sstream>

#include <fmt/format.h>

#include "mbgame/engine.hpp"
#include "mbgame/errors.hpp"

namespace mbgame {

namespace {

constexpr std::string_view kMagic = "game-v1";

std::string element_token(BoardKind board, int e) {
  return fmt::format("{}{}", board == BoardKind::Edge ? 'e' : 'v', e);
}

std::string turn_text(BoardKind board, const Turn& t) {
  std::string out(1, t.player == Player::Maker ? 'M' : 'B');
  for (int e : t.elements) out += " " + element_token(board, e);
  return out;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t end = s.find(sep, start);
    if (end == std::string_view::npos) end = s.size();
    if (end > start) out.push_back(s.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

template <typename T>
T number(std::string_view s, int base = 10) {
  T value{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value, base);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw ParseError("bad number '" + std::string(s) + "' in transcript");
  return value;
}

class Lines {
 public:
  explicit Lines(std::string_view text) : text_(text) {}

  std::string_view next() {
    if (pos_ >= text_.size()) throw ParseError("transcript ends early");
    std::size_t end = text_.find('\n', pos_);
    if (end == std::string_view::npos) throw ParseError("transcript lines must end with a newline");
    std::string_view line = text_.substr(pos_, end - pos_);
    pos_ = end + 1;
    return line;
  }

  // Value after "key ".
  std::string_view field(std::string_view key) {
    std::string_view line = next();
    if (!line.starts_with(key) || line.size() < key.size() + 1 || line[key.size()] != ' ')
      throw ParseError("expected '" + std::string(key) + "' line, got '" + std::string(line) + "'");
    return line.substr(key.size() + 1);
  }

  bool done() const { return pos_ == text_.size(); }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

Turn parse_turn(BoardKind board, std::string_view text) {
  auto tokens = split(text, ' ');
  if (tokens.empty() || tokens[0].size() != 1) throw ParseError("bad turn '" + std::string(text) + "'");
  Turn t;
  if (tokens[0] == "M")
    t.player = Player::Maker;
  else if (tokens[0] == "B")
    t.player = Player::Breaker;
  else
    throw ParseError("bad player tag in turn '" + std::string(text) + "'");
  const char tag = board == BoardKind::Edge ? 'e' : 'v';
  for (std::size_t i = 1; i < tokens.size(); ++i) {
    if (tokens[i].size() < 2 || tokens[i][0] != tag) throw ParseError("bad element '" + std::string(tokens[i]) + "'");
    t.elements.push_back(number<int>(tokens[i].substr(1)));
  }
  if (t.elements.empty()) throw ParseError("empty turn");
  return t;
}

Vertex parse_vertex(std::string_view s) { return number<int>(s); }

}  // namespace

TranscriptRecord make_record(const GameSpec& spec, const GameResult& result, const std::string& maker_id,
                             const std::string& breaker_id, std::uint64_t seed) {
  TranscriptRecord r;
  r.board = spec.board;
  r.maker_bias = spec.maker_bias;
  r.breaker_bias = spec.breaker_bias;
  r.first = spec.first;
  r.objective = spec.objective.describe();
  r.host_hash = spec.host->hash();
  r.host_order = spec.host->order();
  r.host_size = spec.host->size();
  r.maker_id = maker_id;
  r.breaker_id = breaker_id;
  r.seed = seed;
  r.turns = result.transcript;
  r.winner = result.winner;
  r.rounds = result.rounds;
  r.forfeit = result.forfeit;
  r.witness = result.witness;
  return r;
}

std::string format_transcript(const TranscriptRecord& r) {
  std::string out;
  auto line = [&](const std::string& s) {
    out += s;
    out += '\n';
  };
  line(std::string(kMagic));
  line(fmt::format("board {}", to_string(r.board)));
  line(fmt::format("bias {} {}", r.maker_bias, r.breaker_bias));
  line(fmt::format("first {}", to_string(r.first)));
  line(fmt::format("objective {}", r.objective));
  line(fmt::format("host {:016x} {} {}", r.host_hash, r.host_order, r.host_size));
  line(fmt::format("maker {}", r.maker_id));
  line(fmt::format("breaker {}", r.breaker_id));
  line(fmt::format("seed {}", r.seed));
  line(fmt::format("turns {}", r.turns.size()));
  for (std::size_t i = 0; i < r.turns.size(); ++i) {
    std::string text = turn_text(r.board, r.turns[i]);
    if (i + 1 < r.turns.size() && r.turns[i].player == r.first && r.turns[i + 1].player != r.first) {
      text += " | " + turn_text(r.board, r.turns[i + 1]);
      ++i;
    }
    line(text);
  }
  line(fmt::format("result {}", to_string(r.winner)));
  line(fmt::format("rounds {}", r.rounds));
  line(fmt::format("forfeit {}", r.forfeit ? std::string(to_string(*r.forfeit)) : "none"));
  std::string w = "witness";
  if (!r.witness) {
    w += " none";
  } else if (r.witness->kind == Witness::Kind::Edges) {
    w += " edges";
    for (const Edge& e : r.witness->edges) w += fmt::format(" {}-{}", e.u, e.v);
  } else {
    w += r.witness->kind == Witness::Kind::OddCycle ? " cycle" : " vertices";
    for (Vertex v : r.witness->vertices) w += fmt::format(" {}", v);
  }
  line(w);
  std::string stages = "stages";
  for (const Turn& t : r.turns) stages += fmt::format(" {}", t.stage);
  line(stages);
  line("end");
  return out;
}

TranscriptRecord parse_transcript(std::string_view text) {
  Lines in(text);
  if (in.next() != kMagic) throw ParseError("not a game-v1 transcript");
  TranscriptRecord r;
  r.board = parse_board(in.field("board"));
  {
    auto b = split(in.field("bias"), ' ');
    if (b.size() != 2) throw ParseError("bias line needs two values");
    r.maker_bias = number<int>(b[0]);
    r.breaker_bias = number<int>(b[1]);
  }
  r.first = parse_player(in.field("first"));
  r.objective = std::string(in.field("objective"));
  {
    auto h = split(in.field("host"), ' ');
    if (h.size() != 3 || h[0].size() != 16) throw ParseError("host line needs hash, order and size");
    r.host_hash = number<std::uint64_t>(h[0], 16);
    r.host_order = number<int>(h[1]);
    r.host_size = number<std::size_t>(h[2]);
  }
  r.maker_id = std::string(in.field("maker"));
  r.breaker_id = std::string(in.field("breaker"));
  r.seed = number<std::uint64_t>(in.field("seed"));
  const auto turn_count = number<std::size_t>(in.field("turns"));
  while (r.turns.size() < turn_count) {
    std::string_view line = in.next();
    std::size_t bar = line.find(" | ");
    if (bar == std::string_view::npos) {
      r.turns.push_back(parse_turn(r.board, line));
    } else {
      r.turns.push_back(parse_turn(r.board, line.substr(0, bar)));
      r.turns.push_back(parse_turn(r.board, line.substr(bar + 3)));
    }
  }
  if (r.turns.size() != turn_count) throw ParseError("turn count mismatch");
  r.winner = parse_player(in.field("result"));
  r.rounds = number<int>(in.field("rounds"));
  {
    std::string_view f = in.field("forfeit");
    if (f != "none") r.forfeit = parse_player(f);
  }
  {
    auto w = split(in.field("witness"), ' ');
    if (w.empty()) throw ParseError("empty witness line");
    if (w[0] == "none") {
      if (w.size() != 1) throw ParseError("trailing data after 'witness none'");
    } else {
      Witness wit;
      if (w[0] == "edges") {
        wit.kind = Witness::Kind::Edges;
        for (std::size_t i = 1; i < w.size(); ++i) {
          std::size_t dash = w[i].find('-');
          if (dash == std::string_view::npos) throw ParseError("bad witness edge");
          wit.edges.push_back(Edge{parse_vertex(w[i].substr(0, dash)), parse_vertex(w[i].substr(dash + 1))});
        }
      } else if (w[0] == "cycle" || w[0] == "vertices") {
        wit.kind = w[0] == "cycle" ? Witness::Kind::OddCycle : Witness::Kind::Vertices;
        for (std::size_t i = 1; i < w.size(); ++i) wit.vertices.push_back(parse_vertex(w[i]));
      } else {
        throw ParseError("unknown witness kind '" + std::string(w[0]) + "'");
      }
      r.witness = std::move(wit);
    }
  }
  {
    std::string_view line = in.next();
    if (!line.starts_with("stages")) throw ParseError("expected stages line");
    auto s = split(line.substr(6), ' ');
    if (s.size() != r.turns.size()) throw ParseError("stage count mismatch");
    for (std::size_t i = 0; i < s.size(); ++i) r.turns[i].stage = number<int>(s[i]);
  }
  if (in.next() != "end" || !in.done()) throw ParseError("expected 'end' as the last line");
  if (format_transcript(r) != text) throw ParseError("transcript is not in canonical form");
  return r;
}

}  // namespace mbgame
