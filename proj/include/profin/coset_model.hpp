#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "profin/quotient.hpp"

namespace profin {

/// Both means the set is a left and a right coset; since every R_n is
/// normal this is what a finite quotient of G(A) always produces, but the
/// universe is built setwise and does not assume it.
enum class Side { Left, Right, Both };

std::string to_string(Side side);

struct Coset {
  int level = 0;
  Side side = Side::Left;
  /// Truncated normal form: the image of the coset in G/R_level.
  GroupElement rep;
};

/// The coset structure of an inverse system cut off at `depth`: every left
/// and right coset of R_0 .. R_depth, each stored once per distinct set,
/// with the ternary relation R(A, B, C) iff AB is a subset of C.
///
/// Cosets are realised as subsets of G/R_depth, multiplied there with the
/// rewriting oracle.
class CosetStructure {
 public:
  using Index = std::size_t;

  CosetStructure(const InverseSystem& system, int depth, std::uint64_t cap = 10'000);

  const InverseSystem& system() const { return system_; }
  int depth() const { return depth_; }
  std::size_t size() const { return cosets_.size(); }
  const Coset& coset(Index i) const { return cosets_[i]; }
  const std::vector<Coset>& cosets() const { return cosets_; }

  /// Index of g R_level (or R_level g for Side::Right), g any element of G.
  Index coset_of(const GroupElement& g, int level, Side side = Side::Left) const;
  /// Index of R_level itself.
  Index subgroup(int level) const { return coset_of(identity(system_.graph(), system_.prime()), level); }

  /// R(A, B, C) from the setwise table.
  bool related(Index a, Index b, Index c) const { return relation_[(a * size() + b) * size() + c]; }

  /// R(A, B, C) by coset arithmetic on representatives:
  /// aR_i bR_j = abR_min(i,j), contained in cR_k iff k <= min(i,j) and
  /// ab R_k = c R_k.
  bool related_by_arithmetic(Index a, Index b, Index c) const;

  /// Members of the coset as a subset of G/R_depth (indexed by the codec).
  const boost::dynamic_bitset<>& members(Index i) const { return members_[i]; }
  const ElementCodec& top_codec() const { return top_codec_; }

  /// All triples in the relation, lexicographically.
  std::vector<std::array<Index, 3>> triples() const;

 private:
  InverseSystem system_;
  int depth_;
  std::vector<Coset> cosets_;
  std::vector<boost::dynamic_bitset<>> members_;
  // Per level: codec index of the representative -> coset, for each side.
  std::vector<std::map<std::uint64_t, Index>> left_of_, right_of_;
  std::vector<ElementCodec> codecs_;
  ElementCodec top_codec_;
  std::vector<bool> relation_;
};

// Predicates defined from R alone.

/// R(A, A, A).
bool is_subgroup_def(const CosetStructure& m, CosetStructure::Index a);
/// R(U, V, V) for subgroups U, V.
bool subgroup_included(const CosetStructure& m, CosetStructure::Index u, CosetStructure::Index v);
/// The subgroup contained in every other subgroup of the universe.
CosetStructure::Index smallest_subgroup(const CosetStructure& m);
/// The largest subgroup U with AU contained in A.
CosetStructure::Index left_coset_of(const CosetStructure& m, CosetStructure::Index a);
/// The largest subgroup U with UA contained in A.
CosetStructure::Index right_coset_of(const CosetStructure& m, CosetStructure::Index a);
/// A U_min contained in B, U_min the smallest subgroup.
bool coset_included(const CosetStructure& m, CosetStructure::Index a, CosetStructure::Index b);

struct Filters {
  std::vector<CosetStructure::Index> left, right;
};

/// L_g = {g R_n}, R_g = {R_n g} for n <= depth.
Filters filters(const GroupElement& g, const CosetStructure& m);

/// The three filter properties: (1) L and R are downward directed,
/// (2) every A in L and B in R contain a common C in L, (3) every R_n has
/// exactly one left coset in L and one right coset in R.
struct FilterCheck {
  bool directed = false;
  bool common_refinement = false;
  bool one_per_subgroup = false;
  bool ok() const { return directed && common_refinement && one_per_subgroup; }
};

FilterCheck check_filter_properties(const Filters& f, const CosetStructure& m);

/// g with L_g = f.left, read off the finest left coset; throws
/// ConsistencyError when the coarser cosets disagree with it.
GroupElement element_from_left(const Filters& f, const CosetStructure& m);
/// g* = g^-1 read off the right cosets: R_n s contains g, so g* = s^-1.
GroupElement inverse_from_right(const Filters& f, const CosetStructure& m);

/// element_from_left, after checking the filter properties and that the
/// left and right readings are mutually inverse. Throws ConsistencyError.
GroupElement reconstruct_element(const Filters& f, const CosetStructure& m);

/// A map between universes, rho[i] = index in the target structure.
using StructureMap = std::vector<CosetStructure::Index>;

/// Bijective and R(A,B,C) iff R(rho A, rho B, rho C).
bool is_structure_isomorphism(const StructureMap& rho, const CosetStructure& g, const CosetStructure& h);

/// theta(g) for every g in G/R_depth, listed in codec order. Throws
/// PreconditionError if rho is not a structure isomorphism.
std::vector<GroupElement> reconstruct_isomorphism(const StructureMap& rho, const CosetStructure& g,
                                                  const CosetStructure& h);

struct ThetaCheck {
  bool preserves_identity = false;
  bool multiplicative = false;
  bool bijective = false;
  bool ok() const { return preserves_identity && multiplicative && bijective; }
};

/// Checks theta (as returned by reconstruct_isomorphism) is an isomorphism
/// G/R_depth -> H/R'_depth.
ThetaCheck check_theta(const std::vector<GroupElement>& theta, const CosetStructure& g, const CosetStructure& h);

/// rho induced by the generator relabelling x_i -> x_{perm[i]}, which must
/// carry each level of g's system onto the same level of h's.
StructureMap induced_structure_map(const std::vector<Vertex>& perm, const CosetStructure& g,
                                   const CosetStructure& h);

/// Every structure isomorphism g -> h, by backtracking (tiny universes).
std::vector<StructureMap> find_structure_isomorphisms(const CosetStructure& g, const CosetStructure& h,
                                                      std::size_t limit = 1'000'000);

/// Left translation of the cosets: permutations[k][i] is the index of
/// g_k A_i, g_k the k-th element of G/R_depth in codec order. Cosets that
/// are only right cosets are left fixed.
struct ThetaAction {
  std::vector<std::vector<CosetStructure::Index>> permutations;
};

ThetaAction theta_action(const CosetStructure& m);

/// No two elements act alike.
bool theta_is_injective(const ThetaAction& theta);

/// For phi : G -> H given on G/R_depth in codec order and rho the induced
/// structure map: rho o Theta_G(g) o rho^-1 = Theta_H(phi(g)) for all g.
bool theta_conjugacy_holds(const ThetaAction& theta_g, const ThetaAction& theta_h, const StructureMap& rho,
                           const std::vector<GroupElement>& phi, const CosetStructure& h);

}  // namespace profin
