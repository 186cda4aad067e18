#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <utility>
#include <vector>

namespace nullmodel {

using Vertex = std::uint32_t;
using Edge = std::pair<Vertex, Vertex>;
using EdgeList = std::vector<Edge>;

// Immutable simple undirected graph in compressed sparse row form.
// Neighbor lists are sorted ascending; no self-loops, no parallel edges.
class SimpleGraph {
public:
  SimpleGraph() = default;

  std::size_t num_vertices() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t num_edges() const noexcept { return neighbors_.size() / 2; }

  std::span<const Vertex> neighbors(Vertex v) const noexcept {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }
  std::int64_t degree(Vertex v) const noexcept {
    return static_cast<std::int64_t>(offsets_[v + 1] - offsets_[v]);
  }
  std::vector<std::int64_t> degrees() const;
  std::int64_t max_degree() const noexcept;
  bool has_edge(Vertex u, Vertex v) const noexcept;

  // Edges with u < v, lexicographically sorted.
  EdgeList edge_list() const;

  bool operator==(const SimpleGraph&) const = default;

private:
  friend SimpleGraph build_simple_graph(std::size_t n, EdgeList raw_edges);

  std::vector<std::size_t> offsets_;
  std::vector<Vertex> neighbors_;
};

// Drops self-loops and merges parallel edges. Throws StructuralError if an id >= n.
SimpleGraph build_simple_graph(std::size_t n, EdgeList raw_edges);

struct EdgeListFile {
  std::size_t n = 0;
  EdgeList edges;
  // original label of each dense id
  std::vector<std::int64_t> labels;
};

// SNAP-style text: "u<ws>v" per line, '#' comment lines, blank lines ignored.
// Labels are remapped to 0..n-1 in order of first appearance.
EdgeListFile read_edge_list(const std::filesystem::path& path);
EdgeListFile parse_edge_list(std::istream& in);

// Writes "u\tv\n" with u < v, sorted.
void write_edge_list(const SimpleGraph& g, const std::filesystem::path& path);
void write_edge_list(const SimpleGraph& g, std::ostream& out);

// k -> N_k
std::map<std::int64_t, std::int64_t> degree_histogram(const SimpleGraph& g);

} // namespace nullmodel
