#include <doctest.h>

#include <algorithm>
#include <set>

#include "profin/errors.hpp"
#include "profin/trees.hpp"

using namespace profin;

namespace {

std::vector<Permutation> all_permutations(int n) {
  std::vector<int> images(n);
  for (int i = 0; i < n; ++i) images[i] = i;
  std::vector<Permutation> out;
  do out.emplace_back(images);
  while (std::next_permutation(images.begin(), images.end()));
  return out;
}

// Every subgroup of Sym(4) is generated by at most two elements.
std::vector<std::vector<Permutation>> subgroups_of_sym4() {
  const auto all = all_permutations(4);
  std::set<std::vector<Permutation>> found;
  for (const auto& a : all) {
    for (const auto& b : all) {
      auto h = generate_group({a, b});
      std::sort(h.begin(), h.end());
      found.insert(h);
    }
  }
  return {found.begin(), found.end()};
}

bool product_contained(const std::vector<Permutation>& a, const std::vector<Permutation>& b,
                       const std::vector<Permutation>& c) {
  for (const auto& x : a) {
    for (const auto& y : b) {
      if (!std::binary_search(c.begin(), c.end(), x * y)) return false;
    }
  }
  return true;
}

std::uint64_t binomial(int n, int k) {
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Weak orderings of n points (the orbits of DLO on n-tuples).
std::uint64_t ordered_bell(int n) {
  std::vector<std::uint64_t> a(n + 1, 0);
  a[0] = 1;
  for (int m = 1; m <= n; ++m)
    for (int k = 1; k <= m; ++k) a[m] += binomial(m, k) * a[m - k];
  return a[n];
}

std::uint64_t bell(int n) {
  std::vector<std::uint64_t> b(n + 1, 0);
  b[0] = 1;
  for (int m = 1; m <= n; ++m)
    for (int k = 0; k < m; ++k) b[m] += binomial(m - 1, k) * b[k];
  return b[n];
}

std::uint64_t delannoy(int m, int n) {
  if (m == 0 || n == 0) return 1;
  return delannoy(m - 1, n) + delannoy(m, n - 1) + delannoy(m - 1, n - 1);
}

// Orbits of a finite permutation group on n-tuples over {0..m-1}, by
// explicit orbit sweeping.
std::uint64_t orbits_by_sweep(const std::vector<Permutation>& group, int n, int m) {
  std::set<std::vector<int>> seen;
  std::uint64_t count = 0;
  std::vector<int> t(n, 0);
  while (true) {
    if (!seen.count(t)) {
      ++count;
      for (const auto& g : group) {
        std::vector<int> image(n);
        for (int i = 0; i < n; ++i) image[i] = g(t[i]);
        seen.insert(image);
      }
    }
    int i = n - 1;
    while (i >= 0 && ++t[i] == m) t[i--] = 0;
    if (i < 0) break;
  }
  return count;
}

}  // namespace

TEST_CASE("partial injections") {
  CHECK(compose_partial({7, 4, 3, 1, 0}, {3, 4, 6}) == PartialInjection{1, 0});
  CHECK(format_partial(compose_partial({7, 4, 3, 1, 0}, {3, 4, 6})) == "(1,0)");
  CHECK(format_partial({}) == "()");
  CHECK(is_partial_injection({2, 0, 5}));
  CHECK_FALSE(is_partial_injection({2, 0, 2}));
  CHECK_FALSE(is_partial_injection({-1}));
  CHECK(invert_partial({1, 0, 3}) == PartialInjection{1, 0});
  CHECK(invert_partial({2, 1}) == PartialInjection{});
  CHECK(compose_partial({0, 1, 2}, {}) == PartialInjection{});
}

TEST_CASE("composition of prefixes is a prefix of the composition") {
  const auto all = all_permutations(5);
  for (std::size_t i = 0; i < all.size(); i += 7) {
    for (std::size_t j = 0; j < all.size(); j += 11) {
      const auto& f = all[i];
      const auto& g = all[j];
      for (int k = 0; k <= 5; ++k) {
        // f's prefix covers every value of g's, so nothing is cut off.
        const auto composed = compose_partial(f.prefix(5), g.prefix(k));
        CHECK(composed == (f * g).prefix(k));
      }
      CHECK(compose_partial(invert_partial(f.prefix(5)), f.prefix(5)) == Permutation().prefix(5));
    }
  }
}

TEST_CASE("permutations and cycle notation") {
  const auto f = parse_cycles("(0 1 2)(3 4)");
  CHECK(f(0) == 1);
  CHECK(f(2) == 0);
  CHECK(f(4) == 3);
  CHECK(f(9) == 9);
  CHECK(format_cycles(f) == "(0 1 2)(3 4)");
  CHECK(format_cycles(Permutation()) == "()");
  CHECK((f * f.inverse()).is_identity());
  CHECK(parse_cycles("") == Permutation());
  CHECK(Permutation({1, 0, 2, 3}) == Permutation({1, 0}));
  CHECK_THROWS_AS(parse_cycles("(0 1 0)"), ParseError);
  CHECK_THROWS_AS(parse_cycles("(0 1"), ParseError);
  CHECK_THROWS_AS(parse_cycles("(0 -1)"), ParseError);
  CHECK_THROWS(Permutation({0, 0}));
}

TEST_CASE("generated groups and their trees") {
  CHECK(generate_group({parse_cycles("(0 1 2)")}).size() == 3);
  CHECK(generate_group({parse_cycles("(0 1)"), parse_cycles("(0 1 2 3)")}).size() == 24);
  CHECK_THROWS_AS(generate_group({parse_cycles("(0 1)"), parse_cycles("(0 1 2 3 4 5)")}, 100), ResourceError);

  const auto c3 = tree_of_group({parse_cycles("(0 1 2)")}, 3);
  CHECK(c3.level_sizes() == std::vector<std::size_t>{1, 3, 3, 3});
  const auto s4 = tree_of_group({parse_cycles("(0 1)"), parse_cycles("(0 1 2 3)")}, 5);
  CHECK(s4.level_sizes() == std::vector<std::size_t>{1, 4, 12, 24, 24, 24});
  CHECK(s4.is_prefix_closed());
  CHECK(s4.contains({3, 2, 1}));
  CHECK_FALSE(s4.contains({4}));
  CHECK(subgroup_axioms_check(s4).ok());
  CHECK(is_compact(s4).compact);
}

TEST_CASE("sub-group axioms catch a missing composition") {
  auto tree = tree_of_group({parse_cycles("(0 1 2)"), parse_cycles("(0 1)")}, 2);
  REQUIRE(tree.levels[2].size() == 6);
  tree.levels[2].erase({1, 2});
  CHECK(tree.is_prefix_closed());
  const auto report = subgroup_axioms_check(tree);
  CHECK_FALSE(report.ok());
  CHECK_FALSE(report.failure.empty());

  auto no_identity = tree_of_group({parse_cycles("(0 1)")}, 2);
  no_identity.levels[2].erase({0, 1});
  CHECK_FALSE(subgroup_axioms_check(no_identity).identity);

  // A set of permutations that is not a group: its tree is not closed.
  const auto odd = tree_of_elements({parse_cycles("(0 1)"), parse_cycles("(1 2)")}, 3);
  CHECK_FALSE(subgroup_axioms_check(odd).ok());
}

TEST_CASE("tree products agree with setwise products on subgroups of Sym(4)") {
  const auto subgroups = subgroups_of_sym4();
  CHECK(subgroups.size() == 30);
  std::vector<GroupTree> trees;
  for (const auto& h : subgroups) trees.push_back(tree_of_elements(h, 4));
  std::size_t mismatches = 0, contained = 0;
  for (std::size_t a = 0; a < subgroups.size(); ++a) {
    for (std::size_t b = 0; b < subgroups.size(); ++b) {
      for (std::size_t c = 0; c < subgroups.size(); ++c) {
        const bool expected = product_contained(subgroups[a], subgroups[b], subgroups[c]);
        mismatches += product_subset_check(trees[a], trees[b], trees[c], 4) != expected;
        contained += expected;
      }
    }
  }
  CHECK(mismatches == 0);
  CHECK(contained > 0);
}

TEST_CASE("orbit counts against closed formulas") {
  const DLOOracle dlo;
  const SymmetricGroupOracle sym;
  for (int n = 1; n <= 4; ++n) {
    const auto d = orbit_count(dlo, n, 8);
    CHECK(d.count == ordered_bell(n));
    CHECK(d.certainty == Certainty::Exact);
    const auto s = orbit_count(sym, n, 8);
    CHECK(s.count == bell(n));
    CHECK(s.certainty == Certainty::Exact);
  }
  CHECK(orbit_count(dlo, 3, 2).certainty == Certainty::LowerBound);
  CHECK(orbit_count(TranslationOracle(), 2, 10).infinite());
  CHECK(orbit_count(TrivialGroupOracle(), 1, 10).infinite());
}

TEST_CASE("double coset counts") {
  const DLOOracle dlo;
  for (int n = 1; n <= 2; ++n) {
    const auto r = roelcke_check(dlo, n, 24);
    CHECK(r.count == delannoy(n, n));
    CHECK(r.certainty == Certainty::Exact);
  }
  CHECK(delannoy(2, 2) == 13);
  // Partial matchings between two n-sets.
  CHECK(roelcke_check(SymmetricGroupOracle(), 1, 8).count == 2);
  CHECK(roelcke_check(SymmetricGroupOracle(), 2, 8).count == 7);
  CHECK(roelcke_check(TranslationOracle(), 1, 10).infinite());
  CHECK(roelcke_check(TrivialGroupOracle(), 2, 10).count == 1);
}

TEST_CASE("finite group oracle matches orbit sweeping") {
  const std::vector<Permutation> gens{parse_cycles("(0 1 2 3)"), parse_cycles("(0 2)")};
  const FiniteGroupOracle dihedral(gens, 4);
  const auto group = generate_group(gens);
  CHECK(group.size() == 8);
  for (int n = 1; n <= 3; ++n) {
    const auto r = orbit_count(dihedral, n, 10);
    CHECK(r.count == orbits_by_sweep(group, n, 4));
    CHECK(r.certainty == Certainty::Exact);
  }
  CHECK(is_compact(dihedral, 3).compact);
  CHECK(is_compact(dihedral, 3).exact);
}

TEST_CASE("compactness from the tree walk") {
  CHECK_FALSE(is_compact(DLOOracle(), 2).compact);
  CHECK(is_compact(DLOOracle(), 2).exact);
  CHECK_FALSE(is_compact(SymmetricGroupOracle(), 2).compact);
  CHECK(is_compact(TrivialGroupOracle(), 3).compact);
  CHECK(is_compact(TrivialGroupOracle(), 3).exact);
  CHECK_FALSE(is_locally_compact(DLOOracle(), {0}, 2).compact);
  CHECK(is_locally_compact(TrivialGroupOracle(), {0, 1}, 2).compact);
  CHECK_FALSE(is_locally_compact(TrivialGroupOracle(), {1}, 2).compact);
  CHECK_THROWS_AS(make_oracle("nope"), std::invalid_argument);
  CHECK(make_oracle("dlo")->name() == "dlo");
}

TEST_CASE("same_orbit on DLO is order type") {
  const DLOOracle dlo;
  // Point 0 is 0, 1 is 1, 2 is -1.
  CHECK(dlo.compare(2, 0) < 0);
  CHECK(dlo.compare(1, 0) > 0);
  CHECK(dlo.rational(0) == "0");
  CHECK(dlo.same_orbit({2, 0, 1}, {0, 1, 5}) == (dlo.compare(0, 1) < 0 && dlo.compare(1, 5) < 0));
  CHECK_FALSE(dlo.same_orbit({0, 1}, {1, 0}));
  CHECK(dlo.same_orbit({3, 3}, {7, 7}));
}

TEST_CASE("canonical structure lists each orbit once") {
  const auto cs = canonical_structure(DLOOracle(), 3, 6);
  REQUIRE(cs.by_arity.size() == 3);
  for (int n = 1; n <= 3; ++n) {
    CHECK(cs.by_arity[n - 1].size() == ordered_bell(n));
    std::size_t total = 0;
    for (const auto& pred : cs.by_arity[n - 1]) {
      CHECK(std::find(pred.members.begin(), pred.members.end(), pred.least) != pred.members.end());
      total += pred.members.size();
    }
    std::size_t tuples = 1;
    for (int i = 0; i < n; ++i) tuples *= 6;
    CHECK(total == tuples);
  }
}
