#pragma once

#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "profin/graph.hpp"

namespace profin {

/// An odd prime, validated at construction.
class Prime {
 public:
  explicit Prime(int p);
  int value() const { return p_; }
  operator int() const { return p_; }
  bool operator==(const Prime&) const = default;

  // Representative in [0, p).
  int reduce(long long x) const {
    long long r = x % p_;
    return static_cast<int>(r < 0 ? r + p_ : r);
  }

 private:
  int p_;
};

/// Exponents of the central generators x_{r,s} = [x_r, x_s], keyed by (r, s)
/// with r < s and rs a non-edge. Stored exponents lie in 1..p-1.
using CentralWord = std::map<Edge, int>;

/// Exponents alpha_i of the vertex generators, in 1..p-1; the product is read
/// along ascending i.
using VectorWord = std::map<Vertex, int>;

using GraphPtr = std::shared_ptr<const Graph>;

inline GraphPtr share(Graph g) { return std::make_shared<const Graph>(std::move(g)); }

/// Element of the Mekler group G(A) in normal form c * v.
///
/// G(A) is the free nilpotent-class-2 exponent-p group on x_0, x_1, ...
/// modulo the commutators [x_r, x_s] for edges rs of A. Every element has a
/// unique normal form, so equality is equality of the two exponent maps.
class GroupElement {
 public:
  /// Validates the invariants: central keys are non-edge pairs r < s,
  /// vector keys are vertices. Exponents are reduced mod p and zeros dropped.
  GroupElement(GraphPtr graph, Prime p, CentralWord central, VectorWord vector);

  const Graph& graph() const { return *graph_; }
  const GraphPtr& graph_ptr() const { return graph_; }
  Prime prime() const { return p_; }
  const CentralWord& central() const { return central_; }
  const VectorWord& vector() const { return vector_; }

  // Exponent at a vertex or pair, 0 when absent.
  int alpha(Vertex i) const;
  int beta(Vertex r, Vertex s) const;

  bool is_identity() const { return central_.empty() && vector_.empty(); }

  bool operator==(const GroupElement& other) const;

 private:
  struct Trusted {};
  GroupElement(Trusted, GraphPtr graph, Prime p, CentralWord central, VectorWord vector)
      : graph_(std::move(graph)), p_(p), central_(std::move(central)), vector_(std::move(vector)) {}

  friend GroupElement multiply(const GroupElement&, const GroupElement&);
  friend GroupElement inverse(const GroupElement&);
  friend GroupElement commutator(const GroupElement&, const GroupElement&);
  friend GroupElement truncate(const GroupElement&, int);
  friend GroupElement restrict_support(const GroupElement&, std::span<const Vertex>);

  GraphPtr graph_;
  Prime p_;
  CentralWord central_;
  VectorWord vector_;
};

GroupElement identity(GraphPtr graph, Prime p);

/// x_i. Throws RangeError when i is not a vertex.
GroupElement generator(GraphPtr graph, Prime p, Vertex i);

/// Normal form of ab. The vector parts add; moving x_r^{beta_r} of b left
/// past x_s^{alpha_s} of a (r < s) contributes x_{r,s}^{-alpha_s beta_r}.
GroupElement multiply(const GroupElement& a, const GroupElement& b);

GroupElement inverse(const GroupElement& a);

/// a^k for any integer k (a^p = 1).
GroupElement power(const GroupElement& a, long long k);

/// [a, b] = a^-1 b^-1 a b, evaluated in closed form:
/// prod over non-edges r < s of x_{r,s}^{alpha_r beta_s - alpha_s beta_r}.
GroupElement commutator(const GroupElement& a, const GroupElement& b);

/// [a, b] = 1. Only the vector parts matter.
bool commutes(const GroupElement& a, const GroupElement& b);

/// True iff the vector part is empty. Throws UnsupportedGraphError when some
/// vertex is adjacent to all others, since then x_i itself is central.
bool is_central(const GroupElement& a);

/// C(u) = C(v). Each non-edge r < s imposes u_r w_s - u_s w_r = 0 on the
/// exponent vector w, so C(u) is the kernel of a constraint matrix over F_p;
/// two kernels agree iff the row spaces agree.
bool centralizer_equal(const GroupElement& u, const GroupElement& v);

/// Canonical representative of a R_n: keep vector entries i < n and central
/// entries (r, s) with s < n.
GroupElement truncate(const GroupElement& a, int n);

/// Generalised truncation: keep only the listed vertices (sorted) and the
/// central pairs with both ends among them.
GroupElement restrict_support(const GroupElement& a, std::span<const Vertex> kept);

/// Image of a under the homomorphism x_i -> x_{perm[i]} into G(target).
/// Only a homomorphism when perm maps edges of a's graph to edges of target.
GroupElement relabel(const GroupElement& a, const std::vector<Vertex>& perm, GraphPtr target);

inline GroupElement operator*(const GroupElement& a, const GroupElement& b) { return multiply(a, b); }

/// Literal grammar: "1", or terms joined by '*', each term one of x<i>,
/// x<i>^<e>, z(<r>,<s>), z(<r>,<s>)^<e>. z(r,s) denotes [x_r, x_s].
GroupElement parse_element(std::string_view text, GraphPtr graph, Prime p);

/// Central terms sorted by (r, s), then vector terms sorted by i.
std::string format_element(const GroupElement& a);

namespace detail {

/// Rank over F_p of the given rows; the rows are reduced in place.
int rank_mod_p(std::vector<std::vector<int>>& rows, Prime p);

}  // namespace detail

}  // namespace profin
