#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace profin {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

/// Finite symmetric irreflexive graph on the vertices 0..n-1.
///
/// Edges are stored once, in canonical orientation r < s, and kept sorted.
/// A dense adjacency matrix is kept alongside for O(1) queries.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n_vertices);
  Graph(int n_vertices, const std::vector<Edge>& edges);

  int n_vertices() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t n_edges() const { return edges_.size(); }

  // Throws RangeError for out-of-range or equal endpoints, and
  // std::invalid_argument if the edge is already present.
  void add_edge(Vertex u, Vertex v);
  void remove_edge(Vertex u, Vertex v);

  bool has_edge(Vertex r, Vertex s) const;
  int degree(Vertex v) const;
  std::vector<Vertex> neighbors(Vertex v) const;

  bool operator==(const Graph& other) const {
    return n_ == other.n_ && edges_ == other.edges_;
  }

 private:
  bool adjacent(Vertex r, Vertex s) const {
    return adj_[static_cast<std::size_t>(r) * n_ + s] != 0;
  }
  void check_vertex(Vertex v) const;

  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::uint8_t> adj_;
};

// Named graphs used throughout tests and examples.
Graph cycle_graph(int n);
Graph path_graph(int n);
Graph complete_graph(int n);
Graph petersen_graph();

/// Induced subgraph on {0..n-1}.
Graph restrict(const Graph& g, int n);

/// Induced subgraph on the listed vertices, relabelled by their position.
Graph induced_subgraph(const Graph& g, const std::vector<Vertex>& vertices);

/// Image of g under the vertex map v -> perm[v].
Graph relabel(const Graph& g, const std::vector<Vertex>& perm);

struct Triangle {
  Vertex a, b, c;
  bool operator==(const Triangle&) const = default;
};
/// 4-cycle a-b-c-d-a.
struct Square {
  Vertex a, b, c, d;
  bool operator==(const Square&) const = default;
};
/// No z outside {x, y} is joined to x but not to y.
struct SeparationFailure {
  Vertex x, y;
  bool operator==(const SeparationFailure&) const = default;
};

using NicenessViolation = std::variant<Triangle, Square, SeparationFailure>;

struct NicenessReport {
  bool is_nice = false;
  std::optional<NicenessViolation> violation;
};

std::string to_string(const NicenessViolation& v);

/// No triangles, no squares, and every ordered pair (x, y) of distinct
/// vertices has a third vertex z with zx and not zy. Violations are searched
/// in that order and the lexicographically first one is reported.
NicenessReport is_nice(const Graph& g);

/// Exact isomorphism test by backtracking with degree pruning. The returned
/// map pi satisfies edge(r, s) in g1 <=> edge(pi[r], pi[s]) in g2.
std::optional<std::vector<Vertex>> are_isomorphic(const Graph& g1, const Graph& g2);

/// Randomised search for a nice graph on n >= 5 vertices: greedy maximal
/// triangle- and square-free graph, then local repair of vertices of degree
/// below two, with bounded restarts. Same seed, same output.
std::optional<Graph> generate_nice(int n, std::uint64_t seed, int max_restarts = 500);

// Text format: "graph <n>" followed by one "e <u> <v>" line per edge.
Graph parse_graph(std::string_view text);
Graph read_graph_file(const std::string& path);
std::string format_graph(const Graph& g);

}  // namespace profin
