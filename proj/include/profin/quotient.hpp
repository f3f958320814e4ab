#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "profin/mekler.hpp"

namespace profin {

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;
inline constexpr std::uint64_t kDefaultIsomorphismCap = 10'000;

/// The finite quotient of G(A) by the normal closure of every generator whose
/// vertex is not listed. With vertices {0..n-1} this is G(A)/R_n, which is
/// G(restrict(A, n)).
class QuotientLevel {
 public:
  QuotientLevel(GraphPtr graph, Prime p, std::vector<Vertex> vertices);
  static QuotientLevel standard(GraphPtr graph, Prime p, int n);

  const GraphPtr& ambient() const { return graph_; }
  Prime prime() const { return p_; }
  int n() const { return static_cast<int>(vertices_.size()); }
  const std::vector<Vertex>& vertices() const { return vertices_; }
  bool contains_vertex(Vertex v) const;
  /// Non-edge pairs r < s among the level's vertices, sorted.
  const std::vector<Edge>& central_pairs() const { return central_pairs_; }

  /// Induced graph on the level's vertices, relabelled by position.
  Graph graph() const { return induced_subgraph(*graph_, vertices_); }

  /// log_p of the order: n plus the number of non-edge pairs.
  int log_order() const { return n() + static_cast<int>(central_pairs_.size()); }
  /// p^(n+m); throws ResourceError if it does not fit in 64 bits.
  std::uint64_t order() const;

  /// Canonical representative of a's image in this quotient.
  GroupElement project(const GroupElement& a) const { return restrict_support(a, vertices_); }
  /// True iff a's normal form is supported on this level's vertices.
  bool holds(const GroupElement& a) const;

 private:
  GraphPtr graph_;
  Prime p_;
  std::vector<Vertex> vertices_;
  std::vector<Edge> central_pairs_;
};

/// The tower of quotients for levels 0..depth. Level n keeps the first n
/// vertices of `order`; the default order 0, 1, 2, ... gives the basis {R_n}.
/// A permuted order describes the transported basis {pi(R_n)}.
class InverseSystem {
 public:
  InverseSystem(GraphPtr graph, Prime p, int depth, std::vector<Vertex> order = {});

  int depth() const { return static_cast<int>(levels_.size()) - 1; }
  const QuotientLevel& level(int n) const;
  const std::vector<Vertex>& order() const { return order_; }
  const GraphPtr& graph() const { return graph_; }
  Prime prime() const { return p_; }

  /// Image of a level-`source` element at level `target` <= source.
  GroupElement project(const GroupElement& a, int source, int target) const;

 private:
  GraphPtr graph_;
  Prime p_;
  std::vector<Vertex> order_;
  std::vector<QuotientLevel> levels_;
};

/// A letter of a raw word: x_i^e or z(r,s)^e with z(r,s) = [x_r, x_s].
struct Letter {
  enum class Kind { Generator, Central };
  Kind kind = Kind::Generator;
  Vertex i = 0;
  Vertex j = 0;  // second index of a central letter
  long long exponent = 1;

  static Letter x(Vertex i, long long e = 1) { return {Kind::Generator, i, 0, e}; }
  static Letter z(Vertex r, Vertex s, long long e = 1) { return {Kind::Central, r, s, e}; }
};
using Word = std::vector<Letter>;

/// Spells out a normal form as a word: central letters, then x_i^alpha_i.
Word to_word(const GroupElement& a);

/// Normal form of a word by term rewriting, independent of the closed-form
/// product: x_s x_r -> x_r x_s z(r,s)^(p-1) for a non-edge r < s,
/// x_s x_r -> x_r x_s for an edge, central letters move to the front and
/// exponents reduce mod p. Every swap removes one inversion.
GroupElement oracle_normal_form(const Word& w, const QuotientLevel& level);
GroupElement oracle_multiply(const Word& w1, const Word& w2, const QuotientLevel& level);
GroupElement oracle_multiply(const GroupElement& a, const GroupElement& b, const QuotientLevel& level);

/// Bijection between the level's elements and 0..order-1 (mixed radix over
/// the vertex exponents, then the central exponents).
class ElementCodec {
 public:
  explicit ElementCodec(const QuotientLevel& level);
  std::uint64_t size() const { return size_; }
  std::uint64_t index(const GroupElement& a) const;
  GroupElement element(std::uint64_t index) const;

 private:
  QuotientLevel level_;
  std::uint64_t size_ = 1;
};

/// Visits every element of the level exactly once, in codec order.
void for_each_element(const QuotientLevel& level, const std::function<void(const GroupElement&)>& visit,
                      std::uint64_t cap = kDefaultEnumerationCap);
std::vector<GroupElement> enumerate(const QuotientLevel& level, std::uint64_t cap = kDefaultEnumerationCap);

enum class Arithmetic { ClosedForm, Rewriting };

/// A level materialised as an explicit finite group on indices 0..size-1.
/// Products come either from the closed form or from the rewriting oracle;
/// a full multiplication table is kept when size <= table_limit.
class FiniteGroup {
 public:
  using Index = std::uint32_t;
  static constexpr std::uint64_t kTableLimit = 4096;

  FiniteGroup(QuotientLevel level, Arithmetic arithmetic, std::uint64_t cap = kDefaultEnumerationCap);

  const QuotientLevel& level() const { return level_; }
  std::size_t size() const { return elements_.size(); }
  const GroupElement& element(Index i) const { return elements_[i]; }
  Index index_of(const GroupElement& a) const;
  Index identity() const { return 0; }
  Index mul(Index a, Index b) const;
  Index inv(Index a) const { return inverses_[a]; }
  Index pow(Index a, long long k) const;
  Index commutator(Index a, Index b) const { return mul(mul(inv(a), inv(b)), mul(a, b)); }
  /// Indices of the generators x_v, v in the level's vertices.
  std::vector<Index> generators() const;
  /// Closure of the given set under products (a subgroup, since finite).
  std::vector<Index> subgroup(const std::vector<Index>& gens) const;

 private:
  GroupElement product(const GroupElement& a, const GroupElement& b) const;

  QuotientLevel level_;
  Arithmetic arithmetic_;
  ElementCodec codec_;
  std::vector<GroupElement> elements_;
  std::vector<Index> inverses_;
  std::vector<Index> table_;
};

/// Centre by enumeration: every z with zg = gz for all g.
std::vector<GroupElement> center_brute(const QuotientLevel& level, std::uint64_t cap = kDefaultEnumerationCap);
/// Centraliser of g by enumeration.
std::vector<GroupElement> centralizer_brute(const QuotientLevel& level, const GroupElement& g,
                                            std::uint64_t cap = kDefaultEnumerationCap);
/// Conjugacy class of g by enumeration.
std::vector<GroupElement> conjugacy_class_brute(const QuotientLevel& level, const GroupElement& g,
                                                std::uint64_t cap = kDefaultEnumerationCap);

/// Isomorphism invariants of one finite quotient.
struct LevelFingerprint {
  int level = 0;
  std::uint64_t order = 0;
  std::uint64_t exponent = 0;
  int nilpotency_class = 0;
  /// Elementary divisors of the abelianisation, ascending.
  std::vector<std::uint64_t> abelianization;
  std::uint64_t conjugacy_classes = 0;

  bool operator==(const LevelFingerprint&) const = default;
};

struct Fingerprint {
  std::vector<LevelFingerprint> levels;
  bool operator==(const Fingerprint&) const = default;
};

LevelFingerprint fingerprint_level(const FiniteGroup& group, int level);
Fingerprint fingerprint(const InverseSystem& system, std::uint64_t cap = kDefaultEnumerationCap);

/// One record per level with keys in sorted order, e.g.
/// "abelianization=[3,3] class=1 conj_classes=9 exponent=3 level=2 order=9".
std::string format_fingerprint(const Fingerprint& f);

/// Exact isomorphism test by backtracking over generator images, pruned by
/// element order, centraliser size and the orders of partial subgroups.
bool is_isomorphic_finite(const QuotientLevel& a, const QuotientLevel& b,
                          std::uint64_t cap = kDefaultIsomorphismCap);

}  // namespace profin
