#include "nullmodel/graph.hpp"

#include "nullmodel/errors.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <unordered_map>

namespace nullmodel {

std::vector<std::int64_t> SimpleGraph::degrees() const {
  std::vector<std::int64_t> d(num_vertices());
  for (std::size_t v = 0; v < d.size(); ++v) d[v] = degree(static_cast<Vertex>(v));
  return d;
}

std::int64_t SimpleGraph::max_degree() const noexcept {
  std::int64_t m = 0;
  for (std::size_t v = 0; v < num_vertices(); ++v) m = std::max(m, degree(static_cast<Vertex>(v)));
  return m;
}

bool SimpleGraph::has_edge(Vertex u, Vertex v) const noexcept {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

EdgeList SimpleGraph::edge_list() const {
  EdgeList out;
  out.reserve(num_edges());
  for (std::size_t u = 0; u < num_vertices(); ++u) {
    for (Vertex v : neighbors(static_cast<Vertex>(u))) {
      if (u < v) out.emplace_back(static_cast<Vertex>(u), v);
    }
  }
  return out;
}

SimpleGraph build_simple_graph(std::size_t n, EdgeList raw_edges) {
  std::size_t kept = 0;
  for (auto [u, v] : raw_edges) {
    if (u >= n || v >= n) {
      throw StructuralError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                            ") references a vertex >= n=" + std::to_string(n));
    }
    if (u == v) continue;
    raw_edges[kept++] = {std::min(u, v), std::max(u, v)};
  }
  raw_edges.resize(kept);
  std::sort(raw_edges.begin(), raw_edges.end());
  raw_edges.erase(std::unique(raw_edges.begin(), raw_edges.end()), raw_edges.end());

  SimpleGraph g;
  g.offsets_.assign(n + 1, 0);
  for (auto [u, v] : raw_edges) {
    ++g.offsets_[u + 1];
    ++g.offsets_[v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
  g.neighbors_.resize(2 * raw_edges.size());
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  // Lexicographic edge order fills every list ascending: pairs (u,x) with
  // u < x precede pairs (x,v).
  for (auto [u, v] : raw_edges) {
    g.neighbors_[cursor[u]++] = v;
    g.neighbors_[cursor[v]++] = u;
  }
  return g;
}

namespace {

bool parse_int(std::string_view tok, std::int64_t& out) {
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && ptr == tok.data() + tok.size();
}

} // namespace

EdgeListFile parse_edge_list(std::istream& in) {
  EdgeListFile result;
  std::unordered_map<std::int64_t, Vertex> ids;
  auto intern = [&](std::int64_t label) {
    auto [it, inserted] = ids.try_emplace(label, static_cast<Vertex>(result.labels.size()));
    if (inserted) result.labels.push_back(label);
    return it->second;
  };

  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view s(line);
    auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || s[first] == '#') continue;
    s.remove_prefix(first);

    std::string_view toks[3];
    int count = 0;
    while (!s.empty() && count < 3) {
      auto end = s.find_first_of(" \t\r");
      toks[count++] = s.substr(0, end);
      if (end == std::string_view::npos) break;
      s.remove_prefix(end);
      auto next = s.find_first_not_of(" \t\r");
      if (next == std::string_view::npos) break;
      s.remove_prefix(next);
    }
    std::int64_t a = 0, b = 0;
    if (count != 2 || !parse_int(toks[0], a) || !parse_int(toks[1], b) || a < 0 || b < 0) {
      throw ParseError("expected two non-negative integer ids, got '" + line + "'", lineno);
    }
    Vertex u = intern(a);
    Vertex v = intern(b);
    result.edges.emplace_back(u, v);
  }
  result.n = result.labels.size();
  return result;
}

EdgeListFile read_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open edge list " + path.string());
  return parse_edge_list(in);
}

void write_edge_list(const SimpleGraph& g, std::ostream& out) {
  for (auto [u, v] : g.edge_list()) out << u << '\t' << v << '\n';
}

void write_edge_list(const SimpleGraph& g, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  write_edge_list(g, out);
  if (!out) throw IoError("write failed for " + path.string());
}

std::map<std::int64_t, std::int64_t> degree_histogram(const SimpleGraph& g) {
  std::map<std::int64_t, std::int64_t> h;
  for (std::size_t v = 0; v < g.num_vertices(); ++v) ++h[g.degree(static_cast<Vertex>(v))];
  return h;
}

} // namespace nullmodel
