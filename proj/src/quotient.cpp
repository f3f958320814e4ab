#include "profin/quotient.hpp"

#include <algorithm>
#include <numeric>

#include "profin/errors.hpp"

namespace profin {

QuotientLevel::QuotientLevel(GraphPtr graph, Prime p, std::vector<Vertex> vertices)
    : graph_(std::move(graph)), p_(p), vertices_(std::move(vertices)) {
  std::sort(vertices_.begin(), vertices_.end());
  if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end()) {
    throw std::invalid_argument("QuotientLevel: repeated vertex");
  }
  for (Vertex v : vertices_) {
    if (v < 0 || v >= graph_->n_vertices()) throw RangeError("QuotientLevel: vertex out of range");
  }
  for (std::size_t a = 0; a < vertices_.size(); ++a) {
    for (std::size_t b = a + 1; b < vertices_.size(); ++b) {
      if (!graph_->has_edge(vertices_[a], vertices_[b])) central_pairs_.emplace_back(vertices_[a], vertices_[b]);
    }
  }
}

QuotientLevel QuotientLevel::standard(GraphPtr graph, Prime p, int n) {
  if (n < 0 || n > graph->n_vertices()) throw RangeError("level " + std::to_string(n) + " out of range");
  std::vector<Vertex> vs(n);
  std::iota(vs.begin(), vs.end(), 0);
  return QuotientLevel(std::move(graph), p, std::move(vs));
}

bool QuotientLevel::contains_vertex(Vertex v) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

std::uint64_t QuotientLevel::order() const {
  std::uint64_t out = 1;
  for (int k = 0; k < log_order(); ++k) {
    if (out > UINT64_MAX / static_cast<std::uint64_t>(p_.value())) {
      throw ResourceError("quotient order p^" + std::to_string(log_order()) + " overflows 64 bits");
    }
    out *= static_cast<std::uint64_t>(p_.value());
  }
  return out;
}

bool QuotientLevel::holds(const GroupElement& a) const {
  if (a.prime() != p_) return false;
  for (auto [i, e] : a.vector()) {
    if (!contains_vertex(i)) return false;
  }
  for (auto [key, e] : a.central()) {
    if (!contains_vertex(key.first) || !contains_vertex(key.second)) return false;
  }
  return true;
}

InverseSystem::InverseSystem(GraphPtr graph, Prime p, int depth, std::vector<Vertex> order)
    : graph_(std::move(graph)), p_(p), order_(std::move(order)) {
  const int n = graph_->n_vertices();
  if (order_.empty()) {
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), 0);
  }
  std::vector<Vertex> sorted = order_;
  std::sort(sorted.begin(), sorted.end());
  std::vector<Vertex> all(n);
  std::iota(all.begin(), all.end(), 0);
  if (sorted != all) throw std::invalid_argument("InverseSystem: order must be a permutation of the vertices");
  if (depth < 0 || depth > n) throw RangeError("InverseSystem: depth " + std::to_string(depth) + " out of range");
  for (int k = 0; k <= depth; ++k) {
    levels_.emplace_back(graph_, p_, std::vector<Vertex>(order_.begin(), order_.begin() + k));
  }
}

const QuotientLevel& InverseSystem::level(int n) const {
  if (n < 0 || n > depth()) throw RangeError("level " + std::to_string(n) + " beyond depth");
  return levels_[n];
}

GroupElement InverseSystem::project(const GroupElement& a, int source, int target) const {
  if (target > source) throw RangeError("project: target level above source level");
  if (!level(source).holds(a)) throw RangeError("project: element does not live at the source level");
  return level(target).project(a);
}

Word to_word(const GroupElement& a) {
  Word w;
  for (auto [key, e] : a.central()) w.push_back(Letter::z(key.first, key.second, e));
  for (auto [i, e] : a.vector()) w.push_back(Letter::x(i, e));
  return w;
}

GroupElement oracle_normal_form(const Word& w, const QuotientLevel& level) {
  const Prime p = level.prime();
  const Graph& g = *level.ambient();
  auto check = [&](Vertex v) {
    if (!level.contains_vertex(v)) {
      throw RangeError("oracle: generator x_" + std::to_string(v) + " is not below the level");
    }
  };

  std::map<Edge, long long> central;
  std::vector<Vertex> letters;
  for (const Letter& l : w) {
    if (l.kind == Letter::Kind::Central) {
      check(l.i);
      check(l.j);
      if (l.i == l.j) throw std::invalid_argument("oracle: z(r,r) is not a letter");
      if (g.has_edge(l.i, l.j)) continue;  // deleted commutator
      if (l.i < l.j) {
        central[{l.i, l.j}] += l.exponent;
      } else {
        central[{l.j, l.i}] -= l.exponent;
      }
    } else {
      check(l.i);
      for (int k = p.reduce(l.exponent); k > 0; --k) letters.push_back(l.i);
    }
  }

  // Bubble sort by single-letter swaps; each swap kills exactly one inversion.
  const std::size_t len = letters.size();
  const std::size_t bound = static_cast<std::size_t>(std::max(level.n(), 1)) * len * len;
  std::size_t swaps = 0;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t k = 0; k + 1 < len; ++k) {
      const Vertex s = letters[k], r = letters[k + 1];
      if (s <= r) continue;
      letters[k] = r;
      letters[k + 1] = s;
      if (!g.has_edge(r, s)) central[{r, s}] += p.value() - 1;
      changed = true;
      if (++swaps > bound) throw std::logic_error("oracle: rewriting exceeded its step bound");
    }
  }

  CentralWord c;
  for (auto [key, e] : central) c.emplace(key, p.reduce(e));
  VectorWord v;
  for (std::size_t k = 0; k < len;) {
    std::size_t run = k;
    while (run < len && letters[run] == letters[k]) ++run;
    v.emplace(letters[k], p.reduce(static_cast<long long>(run - k)));
    k = run;
  }
  return GroupElement(level.ambient(), p, std::move(c), std::move(v));
}

GroupElement oracle_multiply(const Word& w1, const Word& w2, const QuotientLevel& level) {
  Word w = w1;
  w.insert(w.end(), w2.begin(), w2.end());
  return oracle_normal_form(w, level);
}

GroupElement oracle_multiply(const GroupElement& a, const GroupElement& b, const QuotientLevel& level) {
  return oracle_multiply(to_word(a), to_word(b), level);
}

ElementCodec::ElementCodec(const QuotientLevel& level) : level_(level), size_(level.order()) {}

std::uint64_t ElementCodec::index(const GroupElement& a) const {
  if (!level_.holds(a)) throw RangeError("codec: element does not live at this level");
  const std::uint64_t p = static_cast<std::uint64_t>(level_.prime().value());
  std::uint64_t idx = 0, place = 1;
  for (Vertex v : level_.vertices()) {
    idx += place * static_cast<std::uint64_t>(a.alpha(v));
    place *= p;
  }
  for (auto [r, s] : level_.central_pairs()) {
    idx += place * static_cast<std::uint64_t>(a.beta(r, s));
    place *= p;
  }
  return idx;
}

GroupElement ElementCodec::element(std::uint64_t index) const {
  if (index >= size_) throw RangeError("codec: index out of range");
  const std::uint64_t p = static_cast<std::uint64_t>(level_.prime().value());
  VectorWord v;
  for (Vertex vert : level_.vertices()) {
    if (int d = static_cast<int>(index % p)) v.emplace(vert, d);
    index /= p;
  }
  CentralWord c;
  for (Edge pair : level_.central_pairs()) {
    if (int d = static_cast<int>(index % p)) c.emplace(pair, d);
    index /= p;
  }
  return GroupElement(level_.ambient(), level_.prime(), std::move(c), std::move(v));
}

void for_each_element(const QuotientLevel& level, const std::function<void(const GroupElement&)>& visit,
                      std::uint64_t cap) {
  const std::uint64_t order = level.order();
  if (order > cap) {
    throw ResourceError("enumeration of " + std::to_string(order) + " elements exceeds cap " + std::to_string(cap));
  }
  ElementCodec codec(level);
  for (std::uint64_t i = 0; i < order; ++i) visit(codec.element(i));
}

std::vector<GroupElement> enumerate(const QuotientLevel& level, std::uint64_t cap) {
  std::vector<GroupElement> out;
  for_each_element(level, [&](const GroupElement& a) { out.push_back(a); }, cap);
  return out;
}

FiniteGroup::FiniteGroup(QuotientLevel level, Arithmetic arithmetic, std::uint64_t cap)
    : level_(std::move(level)), arithmetic_(arithmetic), codec_(level_) {
  if (codec_.size() > UINT32_MAX) throw ResourceError("FiniteGroup: order exceeds index range");
  elements_ = enumerate(level_, cap);
  const std::size_t n = elements_.size();
  if (n <= kTableLimit) {
    table_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        table_[a * n + b] = static_cast<Index>(codec_.index(product(elements_[a], elements_[b])));
      }
    }
  }
  inverses_.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    inverses_[a] = pow(static_cast<Index>(a), level_.prime().value() - 1);
  }
}

GroupElement FiniteGroup::product(const GroupElement& a, const GroupElement& b) const {
  return arithmetic_ == Arithmetic::ClosedForm ? multiply(a, b) : oracle_multiply(a, b, level_);
}

FiniteGroup::Index FiniteGroup::index_of(const GroupElement& a) const {
  return static_cast<Index>(codec_.index(a));
}

FiniteGroup::Index FiniteGroup::mul(Index a, Index b) const {
  if (!table_.empty()) return table_[static_cast<std::size_t>(a) * elements_.size() + b];
  return index_of(product(elements_[a], elements_[b]));
}

FiniteGroup::Index FiniteGroup::pow(Index a, long long k) const {
  Index out = identity();
  for (long long i = 0; i < k; ++i) out = mul(out, a);
  return out;
}

std::vector<FiniteGroup::Index> FiniteGroup::generators() const {
  std::vector<Index> out;
  for (Vertex v : level_.vertices()) out.push_back(index_of(generator(level_.ambient(), level_.prime(), v)));
  return out;
}

std::vector<FiniteGroup::Index> FiniteGroup::subgroup(const std::vector<Index>& gens) const {
  std::vector<char> seen(size(), 0);
  std::vector<Index> members{identity()};
  seen[identity()] = 1;
  for (std::size_t k = 0; k < members.size(); ++k) {
    for (Index g : gens) {
      Index y = mul(members[k], g);
      if (!seen[y]) {
        seen[y] = 1;
        members.push_back(y);
      }
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

namespace {

GroupElement oracle_inverse(const GroupElement& a, const QuotientLevel& level) {
  GroupElement out = identity(level.ambient(), level.prime());
  for (int k = 1; k < level.prime().value(); ++k) out = oracle_multiply(out, a, level);
  return out;
}

}  // namespace

std::vector<GroupElement> center_brute(const QuotientLevel& level, std::uint64_t cap) {
  const auto all = enumerate(level, cap);
  std::vector<GroupElement> out;
  for (const auto& z : all) {
    bool central = std::all_of(all.begin(), all.end(), [&](const GroupElement& g) {
      return oracle_multiply(z, g, level) == oracle_multiply(g, z, level);
    });
    if (central) out.push_back(z);
  }
  return out;
}

std::vector<GroupElement> centralizer_brute(const QuotientLevel& level, const GroupElement& g, std::uint64_t cap) {
  if (!level.holds(g)) throw RangeError("centralizer_brute: element does not live at this level");
  std::vector<GroupElement> out;
  for_each_element(
      level,
      [&](const GroupElement& w) {
        if (oracle_multiply(g, w, level) == oracle_multiply(w, g, level)) out.push_back(w);
      },
      cap);
  return out;
}

std::vector<GroupElement> conjugacy_class_brute(const QuotientLevel& level, const GroupElement& g,
                                                std::uint64_t cap) {
  if (!level.holds(g)) throw RangeError("conjugacy_class_brute: element does not live at this level");
  ElementCodec codec(level);
  std::vector<std::uint64_t> seen;
  std::vector<GroupElement> out;
  for_each_element(
      level,
      [&](const GroupElement& x) {
        GroupElement c = oracle_multiply(oracle_multiply(oracle_inverse(x, level), g, level), x, level);
        std::uint64_t idx = codec.index(c);
        if (std::find(seen.begin(), seen.end(), idx) == seen.end()) {
          seen.push_back(idx);
          out.push_back(std::move(c));
        }
      },
      cap);
  return out;
}

}  // namespace profin
