#include "erm/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "erm/error.hpp"

namespace erm {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const auto start = s.find_first_not_of(" \t", pos);
    if (start == std::string_view::npos) break;
    auto end = s.find_first_of(" \t", start);
    if (end == std::string_view::npos) end = s.size();
    out.push_back(s.substr(start, end - start));
    pos = end;
  }
  return out;
}

std::size_t to_index(std::string_view field, std::size_t line, const char* what) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ParseError(line, std::string("invalid ") + what + " '" + std::string(field) + "'");
  }
  return v;
}

double to_real(std::string_view field, std::size_t line) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ParseError(line, "invalid conductance '" + std::string(field) + "'");
  }
  return v;
}

}  // namespace

WeightedGraph parse_edge_list(std::string_view text) {
  std::size_t line_no = 0;
  std::optional<std::size_t> n;
  std::vector<Edge> edges;
  std::vector<std::size_t> edge_lines;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const auto line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') {
      if (end == text.size()) break;
      continue;
    }
    const auto fields = split_fields(line);
    if (!n) {
      if (fields.size() != 2 || fields[0] != "n") {
        throw ParseError(line_no, "expected header 'n <count>'");
      }
      n = to_index(fields[1], line_no, "vertex count");
      if (*n < 2) throw ParseError(line_no, "vertex count must be at least 2");
    } else {
      if (fields.size() != 3) {
        throw ParseError(line_no, "expected 'i j c', got " + std::to_string(fields.size()) +
                                      " fields");
      }
      Edge e{to_index(fields[0], line_no, "vertex index"),
             to_index(fields[1], line_no, "vertex index"), to_real(fields[2], line_no)};
      // Validate per line so the error can point at it.
      try {
        (void)WeightedGraph(*n, {e});
      } catch (const InvalidArgument& err) {
        throw ParseError(line_no, err.what());
      }
      edges.push_back(e);
      edge_lines.push_back(line_no);
    }
    if (end == text.size()) break;
  }
  if (!n) throw ParseError(0, "missing header 'n <count>'");

  try {
    return WeightedGraph(*n, edges);
  } catch (const InvalidArgument& err) {
    // Only duplicates can fail here; find the second occurrence.
    for (std::size_t a = 0; a < edges.size(); ++a) {
      for (std::size_t b = 0; b < a; ++b) {
        const bool same = (edges[a].i == edges[b].i && edges[a].j == edges[b].j) ||
                          (edges[a].i == edges[b].j && edges[a].j == edges[b].i);
        if (same) {
          throw ParseError(edge_lines[a], "duplicate edge (first given on line " +
                                              std::to_string(edge_lines[b]) + ")");
        }
      }
    }
    throw ParseError(line_no, err.what());
  }
}

WeightedGraph read_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_edge_list(buf.str());
}

void write_edge_list(std::ostream& os, const WeightedGraph& g) {
  char buf[64];
  os << "n " << g.vertex_count() << '\n';
  for (const auto& e : g.edges()) {
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, e.conductance);
    os << e.i << ' ' << e.j << ' ' << std::string_view(buf, ptr - buf) << '\n';
  }
}

}  // namespace erm
