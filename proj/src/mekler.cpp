#include "profin/mekler.hpp"

#include <algorithm>

#include "profin/errors.hpp"

namespace profin {

namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; static_cast<long long>(d) * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

void require_compatible(const GroupElement& a, const GroupElement& b) {
  if (a.prime() != b.prime()) throw IncompatibleError("elements over different primes");
  if (a.graph_ptr() != b.graph_ptr() && !(a.graph() == b.graph())) {
    throw IncompatibleError("elements over different graphs");
  }
}

void add_central(CentralWord& c, Edge key, long long e, Prime p) {
  int r = p.reduce(e);
  if (r == 0) return;
  auto [it, inserted] = c.emplace(key, r);
  if (!inserted) {
    it->second = p.reduce(it->second + r);
    if (it->second == 0) c.erase(it);
  }
}

bool has_universal_vertex(const Graph& g) {
  for (int v = 0; v < g.n_vertices(); ++v) {
    if (g.degree(v) == g.n_vertices() - 1) return true;
  }
  return false;
}

}  // namespace

Prime::Prime(int p) : p_(p) {
  if (p < 3 || !is_prime(p)) throw std::invalid_argument("not an odd prime: " + std::to_string(p));
}

GroupElement::GroupElement(GraphPtr graph, Prime p, CentralWord central, VectorWord vector)
    : graph_(std::move(graph)), p_(p) {
  if (!graph_) throw std::invalid_argument("GroupElement: null graph");
  const int n = graph_->n_vertices();
  for (auto [key, e] : central) {
    auto [r, s] = key;
    if (!(0 <= r && r < s && s < n)) {
      throw RangeError("central pair (" + std::to_string(r) + "," + std::to_string(s) + ") invalid");
    }
    if (graph_->has_edge(r, s)) {
      throw std::invalid_argument("central pair (" + std::to_string(r) + "," + std::to_string(s) +
                                  ") is an edge; x_{r,s} is trivial there");
    }
    int reduced = p.reduce(e);
    if (reduced != 0) central_.emplace(key, reduced);
  }
  for (auto [i, e] : vector) {
    if (i < 0 || i >= n) throw RangeError("generator index " + std::to_string(i) + " out of range");
    int reduced = p.reduce(e);
    if (reduced != 0) vector_.emplace(i, reduced);
  }
}

int GroupElement::alpha(Vertex i) const {
  auto it = vector_.find(i);
  return it == vector_.end() ? 0 : it->second;
}

int GroupElement::beta(Vertex r, Vertex s) const {
  auto it = central_.find({r, s});
  return it == central_.end() ? 0 : it->second;
}

bool GroupElement::operator==(const GroupElement& other) const {
  return p_ == other.p_ && (graph_ == other.graph_ || *graph_ == *other.graph_) &&
         vector_ == other.vector_ && central_ == other.central_;
}

GroupElement identity(GraphPtr graph, Prime p) { return GroupElement(std::move(graph), p, {}, {}); }

GroupElement generator(GraphPtr graph, Prime p, Vertex i) {
  if (i < 0 || i >= graph->n_vertices()) {
    throw RangeError("generator x_" + std::to_string(i) + " out of range");
  }
  return GroupElement(std::move(graph), p, {}, {{i, 1}});
}

GroupElement multiply(const GroupElement& a, const GroupElement& b) {
  require_compatible(a, b);
  const Prime p = a.p_;
  const Graph& g = *a.graph_;

  CentralWord central = a.central_;
  for (auto [key, e] : b.central_) add_central(central, key, e, p);

  for (auto [s, alpha_s] : a.vector_) {
    for (auto [r, beta_r] : b.vector_) {
      if (r >= s) break;
      if (g.has_edge(r, s)) continue;
      add_central(central, {r, s}, -static_cast<long long>(alpha_s) * beta_r, p);
    }
  }

  VectorWord vector = a.vector_;
  for (auto [i, e] : b.vector_) {
    auto [it, inserted] = vector.emplace(i, e);
    if (!inserted) {
      it->second = p.reduce(it->second + e);
      if (it->second == 0) vector.erase(it);
    }
  }
  return GroupElement(GroupElement::Trusted{}, a.graph_, p, std::move(central), std::move(vector));
}

GroupElement inverse(const GroupElement& a) {
  const Prime p = a.p_;
  const Graph& g = *a.graph_;
  CentralWord central;
  for (auto [key, e] : a.central_) central.emplace(key, p.reduce(-e));
  for (auto it = a.vector_.begin(); it != a.vector_.end(); ++it) {
    for (auto jt = std::next(it); jt != a.vector_.end(); ++jt) {
      if (g.has_edge(it->first, jt->first)) continue;
      add_central(central, {it->first, jt->first}, -static_cast<long long>(it->second) * jt->second, p);
    }
  }
  VectorWord vector;
  for (auto [i, e] : a.vector_) vector.emplace(i, p.reduce(-e));
  return GroupElement(GroupElement::Trusted{}, a.graph_, p, std::move(central), std::move(vector));
}

GroupElement power(const GroupElement& a, long long k) {
  const int reps = a.prime().reduce(k);
  GroupElement out = identity(a.graph_ptr(), a.prime());
  for (int i = 0; i < reps; ++i) out = multiply(out, a);
  return out;
}

GroupElement commutator(const GroupElement& a, const GroupElement& b) {
  require_compatible(a, b);
  const Prime p = a.p_;
  const Graph& g = *a.graph_;
  // Only pairs with at least one endpoint in each support can contribute.
  std::vector<Vertex> support;
  for (auto [i, e] : a.vector_) support.push_back(i);
  for (auto [i, e] : b.vector_) support.push_back(i);
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());

  CentralWord central;
  for (std::size_t x = 0; x < support.size(); ++x) {
    for (std::size_t y = x + 1; y < support.size(); ++y) {
      const Vertex r = support[x], s = support[y];
      if (g.has_edge(r, s)) continue;
      long long e = static_cast<long long>(a.alpha(r)) * b.alpha(s) - static_cast<long long>(a.alpha(s)) * b.alpha(r);
      add_central(central, {r, s}, e, p);
    }
  }
  return GroupElement(GroupElement::Trusted{}, a.graph_, p, std::move(central), {});
}

bool commutes(const GroupElement& a, const GroupElement& b) { return commutator(a, b).is_identity(); }

bool is_central(const GroupElement& a) {
  if (has_universal_vertex(a.graph())) {
    throw UnsupportedGraphError("is_central: graph has a vertex adjacent to all others");
  }
  return a.vector().empty();
}

namespace detail {

int rank_mod_p(std::vector<std::vector<int>>& rows, Prime p) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  int rank = 0;
  for (std::size_t c = 0; c < cols && rank < static_cast<int>(rows.size()); ++c) {
    auto pivot = std::find_if(rows.begin() + rank, rows.end(), [c](const auto& r) { return r[c] != 0; });
    if (pivot == rows.end()) continue;
    std::iter_swap(rows.begin() + rank, pivot);
    auto& prow = rows[rank];
    // Inverse of the pivot by Fermat.
    long long inv = 1, base = prow[c];
    for (int e = p - 2; e > 0; e >>= 1) {
      if (e & 1) inv = inv * base % p;
      base = base * base % p;
    }
    for (auto& x : prow) x = static_cast<int>(x * inv % p);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == static_cast<std::size_t>(rank) || rows[r][c] == 0) continue;
      const long long f = rows[r][c];
      for (std::size_t k = c; k < cols; ++k) rows[r][k] = p.reduce(rows[r][k] - f * prow[k]);
    }
    ++rank;
  }
  return rank;
}

}  // namespace detail

namespace {

// Rows u_r e_s - u_s e_r for every non-edge r < s where the row is non-zero.
void centralizer_constraints(const GroupElement& u, std::vector<std::vector<int>>& rows) {
  const Graph& g = u.graph();
  const int n = g.n_vertices();
  const Prime p = u.prime();
  for (auto [r, ur] : u.vector()) {
    for (int s = 0; s < n; ++s) {
      if (s == r || g.has_edge(r, s)) continue;
      const int us = u.alpha(s);
      if (s < r && us != 0) continue;  // row already emitted from s's side
      std::vector<int> row(n, 0);
      const int lo = std::min(r, s), hi = std::max(r, s);
      row[hi] = u.alpha(lo);
      row[lo] = p.reduce(-u.alpha(hi));
      rows.push_back(std::move(row));
    }
  }
}

}  // namespace

bool centralizer_equal(const GroupElement& u, const GroupElement& v) {
  require_compatible(u, v);
  std::vector<std::vector<int>> ru, rv;
  centralizer_constraints(u, ru);
  centralizer_constraints(v, rv);
  std::vector<std::vector<int>> both = ru;
  both.insert(both.end(), rv.begin(), rv.end());
  const int rank_u = detail::rank_mod_p(ru, u.prime());
  const int rank_v = detail::rank_mod_p(rv, u.prime());
  if (rank_u != rank_v) return false;
  return detail::rank_mod_p(both, u.prime()) == rank_u;
}

GroupElement truncate(const GroupElement& a, int n) {
  CentralWord central;
  for (auto [key, e] : a.central_) {
    if (key.second < n) central.emplace(key, e);
  }
  VectorWord vector;
  for (auto [i, e] : a.vector_) {
    if (i < n) vector.emplace(i, e);
  }
  return GroupElement(GroupElement::Trusted{}, a.graph_, a.p_, std::move(central), std::move(vector));
}

GroupElement restrict_support(const GroupElement& a, std::span<const Vertex> kept) {
  auto keep = [&](Vertex v) { return std::binary_search(kept.begin(), kept.end(), v); };
  CentralWord central;
  for (auto [key, e] : a.central_) {
    if (keep(key.first) && keep(key.second)) central.emplace(key, e);
  }
  VectorWord vector;
  for (auto [i, e] : a.vector_) {
    if (keep(i)) vector.emplace(i, e);
  }
  return GroupElement(GroupElement::Trusted{}, a.graph_, a.p_, std::move(central), std::move(vector));
}

GroupElement relabel(const GroupElement& a, const std::vector<Vertex>& perm, GraphPtr target) {
  if (static_cast<int>(perm.size()) < a.graph().n_vertices()) {
    throw RangeError("relabel: permutation shorter than vertex count");
  }
  const Prime p = a.prime();
  GroupElement out = identity(target, p);
  for (auto [key, e] : a.central()) {
    auto z = commutator(generator(target, p, perm[key.first]), generator(target, p, perm[key.second]));
    out = multiply(out, power(z, e));
  }
  for (auto [i, e] : a.vector()) out = multiply(out, power(generator(target, p, perm[i]), e));
  return out;
}

}  // namespace profin
