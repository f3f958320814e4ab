#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "profin/graph.hpp"
#include "profin/mekler.hpp"
#include "profin/quotient.hpp"

namespace profin::test {

// Uniform element of G(A)/R_n with the standard order, built straight from
// exponents so that it does not depend on any multiplication routine.
inline GroupElement random_element(const GraphPtr& g, Prime p, int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> digit(0, p.value() - 1);
  CentralWord central;
  VectorWord vector;
  for (int s = 0; s < n; ++s) {
    for (int r = 0; r < s; ++r) {
      if (!g->has_edge(r, s)) central[{r, s}] = digit(rng);
    }
  }
  for (int i = 0; i < n; ++i) vector[i] = digit(rng);
  return GroupElement(g, p, central, vector);
}

inline GroupElement random_element(const GraphPtr& g, Prime p, std::mt19937_64& rng) {
  return random_element(g, p, g->n_vertices(), rng);
}

// Every graph on n labelled vertices, edges taken in lexicographic order.
inline std::vector<Graph> all_graphs(int n) {
  std::vector<Edge> pairs;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  }
  std::vector<Graph> out;
  for (unsigned mask = 0; mask < (1u << pairs.size()); ++mask) {
    Graph g(n);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      if (mask >> k & 1u) g.add_edge(pairs[k].first, pairs[k].second);
    }
    out.push_back(g);
  }
  return out;
}

// Isomorphism by trying every bijection.
inline bool isomorphic_by_permutations(const Graph& a, const Graph& b) {
  if (a.n_vertices() != b.n_vertices() || a.n_edges() != b.n_edges()) return false;
  std::vector<Vertex> perm(a.n_vertices());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool ok = true;
    for (auto [u, v] : a.edges()) {
      if (!b.has_edge(perm[u], perm[v])) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

inline GraphPtr c5() { return share(cycle_graph(5)); }
inline GraphPtr petersen() { return share(petersen_graph()); }

}  // namespace profin::test
