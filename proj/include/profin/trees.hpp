#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace profin {

/// Injective map on an initial segment {0..k-1}, written as its value list.
using PartialInjection = std::vector<int>;

bool is_partial_injection(const PartialInjection& s);

/// s2 o s1 as far as it is defined: i -> s2(s1(i)) for i = 0, 1, ... until
/// s1(i) falls outside the domain of s2.
PartialInjection compose_partial(const PartialInjection& s2, const PartialInjection& s1);

/// j -> s^-1(j) for j = 0, 1, ... until j is not a value of s.
PartialInjection invert_partial(const PartialInjection& s);

/// "(7,4,3,1,0)"; the empty injection prints as "()".
std::string format_partial(const PartialInjection& s);

/// Permutation of the naturals moving only points below size(); (f*g)(i) =
/// f(g(i)).
class Permutation {
 public:
  Permutation() = default;
  /// images[i] for i < images.size(); must be a permutation of that range.
  explicit Permutation(std::vector<int> images);

  int operator()(int i) const { return i < static_cast<int>(images_.size()) ? images_[i] : i; }
  /// The first n values.
  PartialInjection prefix(int n) const;
  Permutation inverse() const;
  bool is_identity() const;
  /// Images padded to at least n points.
  std::vector<int> images(int n) const;

  friend Permutation operator*(const Permutation& f, const Permutation& g);
  bool operator==(const Permutation& other) const;
  bool operator<(const Permutation& other) const;

 private:
  std::vector<int> images_;  // trailing fixed points trimmed
};

/// Cycle notation, e.g. "(0 1 2)(3 4)"; "()" or "" is the identity.
Permutation parse_cycles(std::string_view text);
std::string format_cycles(const Permutation& f);

/// Closure of the generators under composition; throws ResourceError past cap.
std::vector<Permutation> generate_group(const std::vector<Permutation>& generators, std::uint64_t cap = 1'000'000);

/// A tree of partial injections cut at `depth`; levels[k] holds the nodes
/// of length k.
struct GroupTree {
  int depth = 0;
  std::vector<std::set<PartialInjection>> levels;

  bool contains(const PartialInjection& s) const;
  std::vector<std::size_t> level_sizes() const;
  bool is_prefix_closed() const;
};

/// Prefixes of length 0..depth of the given permutations.
GroupTree tree_of_elements(const std::vector<Permutation>& elements, int depth);
/// Tree of the (finite) group generated by the generators.
GroupTree tree_of_group(const std::vector<Permutation>& generators, int depth, std::uint64_t cap = 1'000'000);

/// The three subgroup conditions checked on the represented levels: the
/// identity prefixes are present, and the tree is closed under partial
/// inversion and composition. A necessary condition only: a truncated tree
/// can pass while the closed set it describes is not a group.
struct SubgroupAxiomReport {
  bool identity = true;
  bool inverses = true;
  bool compositions = true;
  std::string failure;  // first failing instance, empty when all hold
  bool ok() const { return identity && inverses && compositions; }
};

SubgroupAxiomReport subgroup_axioms_check(const GroupTree& tree);

/// For all beta in T_B and alpha in T_A with |alpha| > max beta,
/// alpha o beta is in T_C.
bool product_subset_check(const GroupTree& a, const GroupTree& b, const GroupTree& c, int depth);

enum class Certainty { Exact, LowerBound, Unbounded };
std::string to_string(Certainty c);

/// A count over a bounded universe and what the structure says about it:
/// Exact when the bound provably realises every class, Unbounded when the
/// structure has infinitely many classes.
struct CountResult {
  std::uint64_t count = 0;
  Certainty certainty = Certainty::LowerBound;
  bool infinite() const { return certainty == Certainty::Unbounded; }
};

std::string format_count(const CountResult& r);

/// One-step extensions of a node: the values v with s^v in the tree.
struct Extensions {
  bool infinite = false;
  std::vector<int> values;
};

/// A closed subgroup of S_infinity given intensionally.
class StructureOracle {
 public:
  virtual ~StructureOracle() = default;
  virtual std::string name() const = 0;
  /// Some group element maps the tuple a onto the tuple b.
  virtual bool same_orbit(const std::vector<int>& a, const std::vector<int>& b) const = 0;
  virtual Extensions extensions(const PartialInjection& s) const = 0;
  /// Whether the n-tuples over {0..bound-1} meet every orbit on n-tuples;
  /// Unbounded if there are infinitely many orbits.
  virtual Certainty orbit_coverage(int n, int bound) const = 0;
  /// The same for the double cosets of the stabiliser of 0..n-1, i.e. for
  /// the tuples b over the bound in the orbit of (0..n-1).
  virtual Certainty double_coset_coverage(int n, int bound) const = 0;
  /// Points of a finite domain; tuples never leave it.
  virtual std::optional<int> domain_size() const { return std::nullopt; }
  /// Known compactness of the group, if the oracle can vouch for it.
  virtual std::optional<bool> known_compact() const { return std::nullopt; }
};

/// A finite permutation group acting on {0..m-1}.
class FiniteGroupOracle : public StructureOracle {
 public:
  FiniteGroupOracle(const std::vector<Permutation>& generators, int m, std::uint64_t cap = 1'000'000);
  std::string name() const override { return "finite"; }
  bool same_orbit(const std::vector<int>& a, const std::vector<int>& b) const override;
  Extensions extensions(const PartialInjection& s) const override;
  Certainty orbit_coverage(int n, int bound) const override;
  Certainty double_coset_coverage(int n, int bound) const override;
  std::optional<int> domain_size() const override { return m_; }
  std::optional<bool> known_compact() const override { return true; }
  const std::vector<Permutation>& elements() const { return elements_; }

 private:
  int m_;
  std::vector<Permutation> elements_;
};

/// All of S_infinity: orbits are equality patterns.
class SymmetricGroupOracle : public StructureOracle {
 public:
  std::string name() const override { return "sym"; }
  bool same_orbit(const std::vector<int>& a, const std::vector<int>& b) const override;
  Extensions extensions(const PartialInjection& s) const override;
  Certainty orbit_coverage(int n, int bound) const override;
  Certainty double_coset_coverage(int n, int bound) const override;
};

/// The trivial group on the naturals.
class TrivialGroupOracle : public StructureOracle {
 public:
  std::string name() const override { return "trivial"; }
  bool same_orbit(const std::vector<int>& a, const std::vector<int>& b) const override { return a == b; }
  Extensions extensions(const PartialInjection& s) const override;
  Certainty orbit_coverage(int n, int bound) const override;
  Certainty double_coset_coverage(int n, int bound) const override;
  std::optional<bool> known_compact() const override { return true; }
};

/// Automorphisms of (Q, <), with point k standing for the k-th rational
/// of the enumeration 0, 1, -1, 1/2, -1/2, 2, -2, ... (Calkin-Wilf order on
/// the positive rationals, each followed by its negative).
class DLOOracle : public StructureOracle {
 public:
  std::string name() const override { return "dlo"; }
  bool same_orbit(const std::vector<int>& a, const std::vector<int>& b) const override;
  Extensions extensions(const PartialInjection& s) const override;
  Certainty orbit_coverage(int n, int bound) const override;
  Certainty double_coset_coverage(int n, int bound) const override;
  /// Sign of q(i) - q(j).
  int compare(int i, int j) const;
  /// q(k) as "num/den".
  std::string rational(int k) const;
};

/// Z acting on itself by translation, with point k standing for the k-th
/// integer of 0, 1, -1, 2, -2, ...
class TranslationOracle : public StructureOracle {
 public:
  std::string name() const override { return "translation"; }
  bool same_orbit(const std::vector<int>& a, const std::vector<int>& b) const override;
  Extensions extensions(const PartialInjection& s) const override;
  Certainty orbit_coverage(int n, int bound) const override;
  Certainty double_coset_coverage(int n, int bound) const override;
  static long long integer(int k);
  static int point(long long z);
};

std::unique_ptr<StructureOracle> make_oracle(const std::string& name);

struct CompactnessResult {
  bool compact = false;
  /// False when only the levels up to the checked depth were found finite.
  bool exact = false;
};

/// Always compact: the levels of an explicit tree are finite sets.
CompactnessResult is_compact(const GroupTree& tree);
/// Walks the tree below the root to `depth`; an infinitely branching node
/// refutes compactness outright.
CompactnessResult is_compact(const StructureOracle& oracle, int depth);
/// The same walk from the node tau.
CompactnessResult is_locally_compact(const StructureOracle& oracle, const PartialInjection& tau, int depth);

/// Orbits on n-tuples over {0..bound-1}.
CountResult orbit_count(const StructureOracle& oracle, int n, int universe_bound);

/// Double cosets U x U for U the pointwise stabiliser of 0..n-1. They
/// correspond to the orbits of the tuples (0..n-1, b) with b in the orbit of
/// (0..n-1): x ~ y iff x(0..n-1) and y(0..n-1) lie in the same U-orbit.
CountResult roelcke_check(const StructureOracle& oracle, int n, int universe_bound);

/// Predicates P^n_i: the i-th lexicographically least orbit representative
/// among n-tuples over the bound, with its orbit inside the bound.
struct OrbitPredicate {
  std::vector<int> least;
  std::vector<std::vector<int>> members;
};

struct CanonicalStructure {
  /// by_arity[n - 1] lists P^n_0, P^n_1, ...
  std::vector<std::vector<OrbitPredicate>> by_arity;
};

CanonicalStructure canonical_structure(const StructureOracle& oracle, int n_max, int universe_bound);

}  // namespace profin
