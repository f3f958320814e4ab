#include "profin/graph.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <queue>
#include <random>
#include <sstream>

#include "profin/errors.hpp"

namespace profin {

Graph::Graph(int n_vertices) : n_(n_vertices) {
  if (n_vertices < 0) throw RangeError("graph: negative vertex count");
  adj_.assign(static_cast<std::size_t>(n_) * n_, 0);
}

Graph::Graph(int n_vertices, const std::vector<Edge>& edges) : Graph(n_vertices) {
  for (auto [u, v] : edges) add_edge(u, v);
}

void Graph::check_vertex(Vertex v) const {
  if (v < 0 || v >= n_) {
    throw RangeError("vertex " + std::to_string(v) + " out of range for graph on " +
                     std::to_string(n_) + " vertices");
  }
}

void Graph::add_edge(Vertex u, Vertex v) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw RangeError("self-loop at vertex " + std::to_string(u));
  if (adjacent(u, v)) {
    throw std::invalid_argument("duplicate edge " + std::to_string(u) + " " + std::to_string(v));
  }
  Edge e{std::min(u, v), std::max(u, v)};
  edges_.insert(std::lower_bound(edges_.begin(), edges_.end(), e), e);
  adj_[static_cast<std::size_t>(u) * n_ + v] = 1;
  adj_[static_cast<std::size_t>(v) * n_ + u] = 1;
}

void Graph::remove_edge(Vertex u, Vertex v) {
  check_vertex(u);
  check_vertex(v);
  Edge e{std::min(u, v), std::max(u, v)};
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) return;
  edges_.erase(it);
  adj_[static_cast<std::size_t>(u) * n_ + v] = 0;
  adj_[static_cast<std::size_t>(v) * n_ + u] = 0;
}

bool Graph::has_edge(Vertex r, Vertex s) const {
  check_vertex(r);
  check_vertex(s);
  return adjacent(r, s);
}

int Graph::degree(Vertex v) const {
  check_vertex(v);
  int d = 0;
  for (Vertex u = 0; u < n_; ++u) d += adjacent(v, u);
  return d;
}

std::vector<Vertex> Graph::neighbors(Vertex v) const {
  check_vertex(v);
  std::vector<Vertex> out;
  for (Vertex u = 0; u < n_; ++u) {
    if (adjacent(v, u)) out.push_back(u);
  }
  return out;
}

Graph cycle_graph(int n) {
  Graph g(n);
  for (int i = 0; i < n && n >= 3; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

Graph path_graph(int n) {
  Graph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph complete_graph(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  }
  return g;
}

Graph petersen_graph() {
  Graph g(10);
  for (int i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);          // outer cycle
    g.add_edge(i, i + 5);                // spokes
    g.add_edge(5 + i, 5 + (i + 2) % 5);  // inner pentagram
  }
  return g;
}

Graph restrict(const Graph& g, int n) {
  if (n < 0 || n > g.n_vertices()) {
    throw RangeError("restrict: level " + std::to_string(n) + " exceeds " +
                     std::to_string(g.n_vertices()) + " vertices");
  }
  Graph out(n);
  for (auto [r, s] : g.edges()) {
    if (s < n) out.add_edge(r, s);
  }
  return out;
}

Graph induced_subgraph(const Graph& g, const std::vector<Vertex>& vertices) {
  Graph out(static_cast<int>(vertices.size()));
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices.size(); ++j) {
      if (g.has_edge(vertices[i], vertices[j])) out.add_edge(static_cast<int>(i), static_cast<int>(j));
    }
  }
  return out;
}

Graph relabel(const Graph& g, const std::vector<Vertex>& perm) {
  if (static_cast<int>(perm.size()) != g.n_vertices()) {
    throw RangeError("relabel: permutation size does not match vertex count");
  }
  Graph out(g.n_vertices());
  for (auto [r, s] : g.edges()) out.add_edge(perm[r], perm[s]);
  return out;
}

std::string to_string(const NicenessViolation& v) {
  struct Visitor {
    std::string operator()(const Triangle& t) const {
      return "Triangle(" + std::to_string(t.a) + "," + std::to_string(t.b) + "," + std::to_string(t.c) + ")";
    }
    std::string operator()(const Square& s) const {
      return "Square(" + std::to_string(s.a) + "," + std::to_string(s.b) + "," + std::to_string(s.c) + "," +
             std::to_string(s.d) + ")";
    }
    std::string operator()(const SeparationFailure& f) const {
      return "SeparationFailure(" + std::to_string(f.x) + "," + std::to_string(f.y) + ")";
    }
  };
  return std::visit(Visitor{}, v);
}

NicenessReport is_nice(const Graph& g) {
  const int n = g.n_vertices();
  auto e = [&](int a, int b) { return g.has_edge(a, b); };

  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (!e(a, b)) continue;
      for (int c = b + 1; c < n; ++c) {
        if (e(b, c) && e(a, c)) return {false, Triangle{a, b, c}};
      }
    }
  }

  // Canonical orientation of a 4-cycle: start at its least vertex a, walk
  // towards the smaller of a's two cycle neighbours (b < d).
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (!e(a, b)) continue;
      for (int c = a + 1; c < n; ++c) {
        if (c == b || !e(b, c)) continue;
        for (int d = b + 1; d < n; ++d) {
          if (d == c || !e(c, d) || !e(d, a)) continue;
          return {false, Square{a, b, c, d}};
        }
      }
    }
  }

  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (x == y) continue;
      bool separated = false;
      for (int z = 0; z < n && !separated; ++z) {
        separated = z != x && z != y && e(z, x) && !e(z, y);
      }
      if (!separated) return {false, SeparationFailure{x, y}};
    }
  }
  return {true, std::nullopt};
}

namespace {

class IsoSearch {
 public:
  IsoSearch(const Graph& g1, const Graph& g2) : g1_(g1), g2_(g2), n_(g1.n_vertices()) {
    deg1_.resize(n_);
    deg2_.resize(n_);
    for (int v = 0; v < n_; ++v) {
      deg1_[v] = g1.degree(v);
      deg2_[v] = g2.degree(v);
    }
    // Place high-degree vertices first; ties broken by connectivity to
    // already placed vertices so that adjacency constraints bite early.
    std::vector<bool> placed(n_, false);
    for (int step = 0; step < n_; ++step) {
      int best = -1;
      int best_links = -1;
      for (int v = 0; v < n_; ++v) {
        if (placed[v]) continue;
        int links = 0;
        for (int u : order_) links += g1.has_edge(u, v);
        if (best == -1 || links > best_links || (links == best_links && deg1_[v] > deg1_[best])) {
          best = v;
          best_links = links;
        }
      }
      placed[best] = true;
      order_.push_back(best);
    }
    map_.assign(n_, -1);
    used_.assign(n_, false);
  }

  std::optional<std::vector<Vertex>> run() {
    if (extend(0)) return map_;
    return std::nullopt;
  }

 private:
  bool extend(int k) {
    if (k == n_) return true;
    const int v = order_[k];
    for (int w = 0; w < n_; ++w) {
      if (used_[w] || deg2_[w] != deg1_[v]) continue;
      bool ok = true;
      for (int j = 0; j < k && ok; ++j) {
        const int u = order_[j];
        ok = g1_.has_edge(u, v) == g2_.has_edge(map_[u], w);
      }
      if (!ok) continue;
      map_[v] = w;
      used_[w] = true;
      if (extend(k + 1)) return true;
      used_[w] = false;
      map_[v] = -1;
    }
    return false;
  }

  const Graph& g1_;
  const Graph& g2_;
  int n_;
  std::vector<int> deg1_, deg2_, order_, map_;
  std::vector<bool> used_;
};

}  // namespace

std::optional<std::vector<Vertex>> are_isomorphic(const Graph& g1, const Graph& g2) {
  if (g1.n_vertices() != g2.n_vertices() || g1.n_edges() != g2.n_edges()) return std::nullopt;
  std::vector<int> d1, d2;
  for (int v = 0; v < g1.n_vertices(); ++v) {
    d1.push_back(g1.degree(v));
    d2.push_back(g2.degree(v));
  }
  std::sort(d1.begin(), d1.end());
  std::sort(d2.begin(), d2.end());
  if (d1 != d2) return std::nullopt;
  return IsoSearch(g1, g2).run();
}

namespace {

// Distances up to `limit`; farther vertices report limit + 1.
std::vector<int> bounded_distances(const Graph& g, Vertex src, int limit) {
  std::vector<int> dist(g.n_vertices(), limit + 1);
  dist[src] = 0;
  std::queue<Vertex> q;
  q.push(src);
  while (!q.empty()) {
    Vertex u = q.front();
    q.pop();
    if (dist[u] == limit) continue;
    for (Vertex w : g.neighbors(u)) {
      if (dist[w] > dist[u] + 1) {
        dist[w] = dist[u] + 1;
        q.push(w);
      }
    }
  }
  return dist;
}

// Adding uv closes a cycle of length dist(u, v) + 1; girth >= 5 needs dist >= 4.
bool can_add(const Graph& g, Vertex u, Vertex v) {
  return u != v && bounded_distances(g, u, 3)[v] > 3;
}

void greedy_fill(Graph& g, std::vector<Edge> pairs, std::mt19937_64& rng) {
  std::shuffle(pairs.begin(), pairs.end(), rng);
  for (auto [u, v] : pairs) {
    if (can_add(g, u, v)) g.add_edge(u, v);
  }
}

}  // namespace

std::optional<Graph> generate_nice(int n, std::uint64_t seed, int max_restarts) {
  if (n < 5) throw PreconditionError("generate_nice: no nice graph has fewer than 5 vertices");
  std::mt19937_64 rng(seed);
  std::vector<Edge> pairs;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  }
  const int repair_budget = 4 * n;

  // Girth >= 5 plus minimum degree >= 2 is equivalent to niceness, so repair
  // only has to lift low-degree vertices.
  for (int restart = 0; restart < max_restarts; ++restart) {
    Graph g(n);
    greedy_fill(g, pairs, rng);
    for (int iter = 0; iter < repair_budget; ++iter) {
      std::vector<Vertex> deficient;
      for (int v = 0; v < n; ++v) {
        if (g.degree(v) < 2) deficient.push_back(v);
      }
      if (deficient.empty()) {
        if (is_nice(g).is_nice) return g;
        break;
      }
      Vertex v = deficient[std::uniform_int_distribution<std::size_t>(0, deficient.size() - 1)(rng)];
      auto dist = bounded_distances(g, v, 3);
      std::vector<Vertex> far;
      for (int w = 0; w < n; ++w) {
        if (w != v && dist[w] > 3) far.push_back(w);
      }
      if (!far.empty()) {
        g.add_edge(v, far[std::uniform_int_distribution<std::size_t>(0, far.size() - 1)(rng)]);
        continue;
      }
      // Every vertex is within distance 3 of v: drop an edge near v that does
      // not touch v, then refill greedily.
      std::vector<Edge> near;
      for (auto [a, b] : g.edges()) {
        if (a != v && b != v && (dist[a] <= 2 || dist[b] <= 2)) near.emplace_back(a, b);
      }
      if (near.empty()) break;
      auto [a, b] = near[std::uniform_int_distribution<std::size_t>(0, near.size() - 1)(rng)];
      g.remove_edge(a, b);
      greedy_fill(g, pairs, rng);
    }
  }
  return std::nullopt;
}

Graph parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::optional<Graph> g;
  int line_no = 0;
  auto fail = [&](const std::string& what) {
    throw ParseError("graph line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "graph") {
      if (g) fail("repeated header");
      long n = -1;
      if (!(ls >> n) || n < 0) fail("expected 'graph <n>'");
      g.emplace(static_cast<int>(n));
    } else if (tag == "e") {
      if (!g) fail("edge before 'graph <n>' header");
      long u = -1, v = -1;
      if (!(ls >> u >> v)) fail("expected 'e <u> <v>'");
      if (u < 0 || v < 0 || u >= g->n_vertices() || v >= g->n_vertices()) fail("vertex out of range");
      if (u == v) fail("self-loop");
      if (g->has_edge(static_cast<int>(u), static_cast<int>(v))) fail("duplicate edge");
      g->add_edge(static_cast<int>(u), static_cast<int>(v));
    } else {
      fail("unknown record '" + tag + "'");
    }
    std::string extra;
    if (ls >> extra) fail("trailing token '" + extra + "'");
  }
  if (!g) throw ParseError("graph: missing 'graph <n>' header");
  return *g;
}

Graph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open graph file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

std::string format_graph(const Graph& g) {
  std::string out = "graph " + std::to_string(g.n_vertices()) + "\n";
  for (auto [u, v] : g.edges()) out += "e " + std::to_string(u) + " " + std::to_string(v) + "\n";
  return out;
}

}  // namespace profin
