#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "profin/graph.hpp"
#include "profin/mekler.hpp"
#include "profin/quotient.hpp"

namespace profin {

/// The coset aZ, determined by the vector part of a.
struct BarElement {
  VectorWord vector;
  bool operator==(const BarElement&) const = default;
};

BarElement bar(const GroupElement& a);

struct Case1 {
  Vertex r;
  bool operator==(const Case1&) const = default;
};
struct Case2 {
  Vertex r, s;
  bool operator==(const Case2&) const = default;
};
struct Case3 {
  Vertex ell;
  bool operator==(const Case3&) const = default;
};
struct Case4 {
  bool operator==(const Case4&) const = default;
};
using CaseTag = std::variant<Case1, Case2, Case3, Case4>;

std::string to_string(const CaseTag& tag);

/// The ~ class of a non-central bar element on a nice graph:
///   Case1  support {r}                              size p-1
///   Case2  support {r, s} with rs an edge           size (p-1)^2
///   Case3  some ell adjacent to all other support   size p(p-1)
///   Case4  otherwise                                size p-1
struct ClassDescriptor {
  BarElement representative;
  CaseTag case_tag;
  std::uint64_t size = 0;
};

/// C(u) = C(v) for non-central u, v.
bool sim(const GroupElement& u, const GroupElement& v);

/// Throws PreconditionError for central input.
ClassDescriptor classify(const GroupElement& v);

/// A non-central w with [v, w] = 1 in a different ~ class, searched among
/// single generator powers and two-generator products x_i^a x_j^b.
std::optional<GroupElement> find_witness(const GroupElement& v);
bool witness_exists(const GroupElement& v);

/// Gamma(G(A)) computed with the closed forms. Vertex [x_i] is labelled i;
/// [x_r] R [x_s] iff the classes differ and x_r, x_s commute. Throws
/// PreconditionError with the niceness diagnostic when A is not nice.
Graph gamma_symbolic(const GraphPtr& graph, Prime p);

inline constexpr std::uint64_t kDefaultBruteCap = 729;

/// The ~ partition of G/Z computed by exhaustive commutation tests.
/// Coset k is the bar element with codec index k over the level's vertices;
/// coset 0 is Z itself and gets class -1.
struct BruteClasses {
  std::vector<BarElement> cosets;
  std::vector<int> class_of;
  std::vector<std::uint64_t> class_sizes;
  std::vector<std::vector<char>> commutes;  // [u][w]
};

BruteClasses brute_classes(const QuotientLevel& level, std::uint64_t cap = kDefaultBruteCap);

/// Size of v's ~ class by enumeration.
std::uint64_t class_size_brute(const QuotientLevel& level, const GroupElement& v,
                               std::uint64_t cap = kDefaultBruteCap);

/// Gamma evaluated literally over the finite quotient: classes of size p-1
/// with a commuting witness in another class become vertices, ordered by
/// their least coset. Vertex k of the result is reported in `labels[k]`
/// as the vertex r whose generator x_r lies in the class (or -1 if none).
struct GammaBruteResult {
  Graph graph;
  std::vector<Vertex> labels;
};

GammaBruteResult gamma_brute(const QuotientLevel& level, std::uint64_t cap = kDefaultBruteCap);

struct RoundtripVerdict {
  bool graphs_isomorphic = false;
  std::optional<std::vector<Vertex>> witness;
  // Isomorphic branch.
  int depth = 0;
  Fingerprint fingerprint_a, fingerprint_b;
  bool fingerprints_match = false;
  bool homomorphism_verified = false;
  // Non-isomorphic branch.
  bool gamma_recovers_a = false, gamma_recovers_b = false, gamma_separates = false;

  bool verified() const {
    return graphs_isomorphic ? fingerprints_match && homomorphism_verified
                             : gamma_recovers_a && gamma_recovers_b && gamma_separates;
  }
  std::string summary() const;
};

/// A iso B iff G^(A) iso G^(B), checked in both directions. When pi : A -> B
/// exists, x_i -> x_{pi(i)} is checked to be an isomorphism on the level
/// `depth` quotients and the fingerprints of {R_n} for A and of the
/// transported basis {pi(R_n)} for B are compared. Otherwise Gamma must
/// recover both graphs. depth < 0 picks the largest depth whose top
/// quotient has at most `cap` elements.
RoundtripVerdict roundtrip(const GraphPtr& a, const GraphPtr& b, Prime p, int depth = -1,
                           std::uint64_t cap = 729);

}  // namespace profin
