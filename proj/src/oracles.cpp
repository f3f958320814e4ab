#include <algorithm>
#include <mutex>
#include <numeric>

#include "profin/errors.hpp"
#include "profin/trees.hpp"

namespace profin {

std::string to_string(Certainty c) {
  switch (c) {
    case Certainty::Exact: return "exact";
    case Certainty::LowerBound: return "lower-bound";
    case Certainty::Unbounded: return "unbounded";
  }
  return "?";
}

std::string format_count(const CountResult& r) {
  if (r.infinite()) return "Infinite";
  return std::to_string(r.count) + (r.certainty == Certainty::Exact ? "" : " (lower bound)");
}

// ---- finite groups

FiniteGroupOracle::FiniteGroupOracle(const std::vector<Permutation>& generators, int m, std::uint64_t cap)
    : m_(m), elements_(generate_group(generators, cap)) {
  for (const auto& g : elements_) {
    const auto images = g.images(0);
    if (static_cast<int>(images.size()) > m_) {
      throw std::invalid_argument("FiniteGroupOracle: a generator moves a point outside 0.." + std::to_string(m_ - 1));
    }
  }
}

bool FiniteGroupOracle::same_orbit(const std::vector<int>& a, const std::vector<int>& b) const {
  if (a.size() != b.size()) return false;
  return std::any_of(elements_.begin(), elements_.end(), [&](const Permutation& g) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (g(a[i]) != b[i]) return false;
    }
    return true;
  });
}

Extensions FiniteGroupOracle::extensions(const PartialInjection& s) const {
  std::set<int> values;
  const int k = static_cast<int>(s.size());
  for (const auto& g : elements_) {
    if (g.prefix(k) == s) values.insert(g(k));
  }
  return {false, {values.begin(), values.end()}};
}

Certainty FiniteGroupOracle::orbit_coverage(int, int bound) const {
  return bound >= m_ ? Certainty::Exact : Certainty::LowerBound;
}

Certainty FiniteGroupOracle::double_coset_coverage(int, int bound) const {
  return bound >= m_ ? Certainty::Exact : Certainty::LowerBound;
}

// ---- S_infinity

namespace {

std::vector<int> equality_pattern(const std::vector<int>& a) {
  std::vector<int> out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    out.push_back(static_cast<int>(std::find(a.begin(), a.end(), a[i]) - a.begin()));
  }
  return out;
}

}  // namespace

bool SymmetricGroupOracle::same_orbit(const std::vector<int>& a, const std::vector<int>& b) const {
  return a.size() == b.size() && equality_pattern(a) == equality_pattern(b);
}

Extensions SymmetricGroupOracle::extensions(const PartialInjection&) const { return {true, {}}; }

// A pattern of n entries uses at most n distinct points.
Certainty SymmetricGroupOracle::orbit_coverage(int n, int bound) const {
  return bound >= n ? Certainty::Exact : Certainty::LowerBound;
}

// b is a tuple of distinct points, each either one of 0..n-1 or new.
Certainty SymmetricGroupOracle::double_coset_coverage(int n, int bound) const {
  return bound >= 2 * n ? Certainty::Exact : Certainty::LowerBound;
}

// ---- trivial group

Extensions TrivialGroupOracle::extensions(const PartialInjection& s) const {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != static_cast<int>(i)) return {};
  }
  return {false, {static_cast<int>(s.size())}};
}

Certainty TrivialGroupOracle::orbit_coverage(int n, int) const {
  return n == 0 ? Certainty::Exact : Certainty::Unbounded;
}

Certainty TrivialGroupOracle::double_coset_coverage(int, int) const { return Certainty::Exact; }

// ---- dense linear order

namespace {

struct Rational {
  long long num, den;  // den > 0
};

// q(0) = 0, q(2j-1) = c_j, q(2j) = -c_j with c_1, c_2, ... the Calkin-Wilf
// sequence 1, 1/2, 2, 1/3, 3/2, ...
Rational dlo_point(int k) {
  static std::mutex lock;
  static std::vector<Rational> cw{{1, 1}};
  if (k == 0) return {0, 1};
  const int j = (k + 1) / 2;
  Rational c;
  {
    std::lock_guard<std::mutex> guard(lock);
    while (static_cast<int>(cw.size()) < j) {
      const auto [a, b] = cw.back();
      const long long f = a / b;
      cw.push_back({b, 2 * f * b - a + b});
    }
    c = cw[j - 1];
  }
  return k % 2 == 1 ? c : Rational{-c.num, c.den};
}

int dlo_compare(int i, int j) {
  const Rational x = dlo_point(i), y = dlo_point(j);
  const long long lhs = x.num * y.den, rhs = y.num * x.den;
  return (lhs > rhs) - (lhs < rhs);
}

}  // namespace

int DLOOracle::compare(int i, int j) const { return dlo_compare(i, j); }

std::string DLOOracle::rational(int k) const {
  const auto r = dlo_point(k);
  return r.den == 1 ? std::to_string(r.num) : std::to_string(r.num) + "/" + std::to_string(r.den);
}

// By homogeneity the orbit of a tuple is its order type.
bool DLOOracle::same_orbit(const std::vector<int>& a, const std::vector<int>& b) const {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      if (dlo_compare(a[i], a[j]) != dlo_compare(b[i], b[j])) return false;
    }
  }
  return true;
}

Extensions DLOOracle::extensions(const PartialInjection& s) const {
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (dlo_compare(static_cast<int>(i), static_cast<int>(j)) != dlo_compare(s[i], s[j])) return {};
    }
  }
  return {true, {}};
}

// Every order type of n points is realised by any n distinct points.
Certainty DLOOracle::orbit_coverage(int n, int bound) const {
  return bound >= n ? Certainty::Exact : Certainty::LowerBound;
}

// b ranges over the copies of (0..n-1); each coordinate sits
// on an anchor q(0..n-1) or in one of the n+1 open gaps they cut out, so n
// spare points in every gap realise every alignment.
Certainty DLOOracle::double_coset_coverage(int n, int bound) const {
  std::vector<int> anchors(n);
  std::iota(anchors.begin(), anchors.end(), 0);
  std::sort(anchors.begin(), anchors.end(), [](int a, int b) { return dlo_compare(a, b) < 0; });
  std::vector<int> in_gap(n + 1, 0);
  for (int k = n; k < bound; ++k) {
    const auto gap = std::count_if(anchors.begin(), anchors.end(), [&](int a) { return dlo_compare(a, k) < 0; });
    ++in_gap[gap];
  }
  const bool enough = std::all_of(in_gap.begin(), in_gap.end(), [&](int c) { return c >= n; });
  return enough ? Certainty::Exact : Certainty::LowerBound;
}

// ---- translations of Z

long long TranslationOracle::integer(int k) { return k % 2 == 1 ? (k + 1) / 2 : -(k / 2); }

int TranslationOracle::point(long long z) { return static_cast<int>(z > 0 ? 2 * z - 1 : -2 * z); }

bool TranslationOracle::same_orbit(const std::vector<int>& a, const std::vector<int>& b) const {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  const long long t = integer(b[0]) - integer(a[0]);
  for (std::size_t i = 1; i < a.size(); ++i) {
    if (integer(b[i]) - integer(a[i]) != t) return false;
  }
  return true;
}

Extensions TranslationOracle::extensions(const PartialInjection& s) const {
  if (s.empty()) return {true, {}};
  const long long t = integer(s[0]);
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (integer(s[i]) - integer(static_cast<int>(i)) != t) return {};
  }
  return {false, {point(integer(static_cast<int>(s.size())) + t)}};
}

// Pairs are classified by their difference, which is unbounded.
Certainty TranslationOracle::orbit_coverage(int n, int bound) const {
  if (n >= 2) return Certainty::Unbounded;
  return bound >= 1 || n == 0 ? Certainty::Exact : Certainty::LowerBound;
}

// The stabiliser of a point is trivial, so every translate is its own class.
Certainty TranslationOracle::double_coset_coverage(int n, int) const {
  return n == 0 ? Certainty::Exact : Certainty::Unbounded;
}

std::unique_ptr<StructureOracle> make_oracle(const std::string& name) {
  if (name == "dlo") return std::make_unique<DLOOracle>();
  if (name == "sym") return std::make_unique<SymmetricGroupOracle>();
  if (name == "trivial") return std::make_unique<TrivialGroupOracle>();
  if (name == "translation") return std::make_unique<TranslationOracle>();
  throw std::invalid_argument("unknown oracle '" + name + "' (expected dlo, sym, trivial or translation)");
}

// ---- tree walks

namespace {

CompactnessResult walk(const StructureOracle& oracle, const PartialInjection& root, int levels) {
  std::vector<PartialInjection> frontier{root};
  for (int k = 0; k < levels; ++k) {
    std::vector<PartialInjection> next;
    for (const auto& s : frontier) {
      const auto ext = oracle.extensions(s);
      if (ext.infinite) return {false, true};
      for (int v : ext.values) {
        auto child = s;
        child.push_back(v);
        next.push_back(std::move(child));
      }
    }
    frontier = std::move(next);
  }
  return {true, false};
}

}  // namespace

CompactnessResult is_compact(const GroupTree&) { return {true, true}; }

CompactnessResult is_compact(const StructureOracle& oracle, int depth) {
  auto r = walk(oracle, {}, depth);
  if (r.compact && oracle.known_compact().has_value()) r = {*oracle.known_compact(), true};
  return r;
}

CompactnessResult is_locally_compact(const StructureOracle& oracle, const PartialInjection& tau, int depth) {
  for (std::size_t k = 0; k < tau.size(); ++k) {
    const auto ext = oracle.extensions(PartialInjection(tau.begin(), tau.begin() + static_cast<std::ptrdiff_t>(k)));
    const bool extends = ext.infinite || std::count(ext.values.begin(), ext.values.end(), tau[k]) > 0;
    if (!extends) return {false, false};  // tau is not a node, so it witnesses nothing
  }
  auto r = walk(oracle, tau, depth);
  // An infinite branch below one tau says nothing about other nodes.
  r.exact = r.compact && oracle.known_compact().value_or(false);
  return r;
}

// ---- counting

namespace {

int effective_bound(const StructureOracle& oracle, int bound) {
  if (bound < 0) throw RangeError("universe bound must be non-negative");
  const auto m = oracle.domain_size();
  return m ? std::min(bound, *m) : bound;
}

// Visits every n-tuple over {0..bound-1} in lexicographic order.
template <class F>
void for_each_tuple(int n, int bound, F&& visit) {
  if (n > 0 && bound == 0) return;
  std::vector<int> t(n, 0);
  while (true) {
    visit(t);
    int i = n - 1;
    while (i >= 0 && ++t[i] == bound) t[i--] = 0;
    if (i < 0) return;
  }
}

}  // namespace

CountResult orbit_count(const StructureOracle& oracle, int n, int universe_bound) {
  const int bound = effective_bound(oracle, universe_bound);
  std::vector<std::vector<int>> reps;
  for_each_tuple(n, bound, [&](const std::vector<int>& t) {
    if (std::none_of(reps.begin(), reps.end(), [&](const auto& r) { return oracle.same_orbit(r, t); })) {
      reps.push_back(t);
    }
  });
  return {reps.size(), oracle.orbit_coverage(n, universe_bound)};
}

CountResult roelcke_check(const StructureOracle& oracle, int n, int universe_bound) {
  const int bound = effective_bound(oracle, universe_bound);
  if (n > bound) throw RangeError("roelcke_check: bound smaller than n");
  std::vector<int> anchors(n);
  std::iota(anchors.begin(), anchors.end(), 0);
  std::vector<std::vector<int>> reps;
  for_each_tuple(n, bound, [&](const std::vector<int>& b) {
    if (!oracle.same_orbit(anchors, b)) return;
    std::vector<int> pair = anchors;
    pair.insert(pair.end(), b.begin(), b.end());
    if (std::none_of(reps.begin(), reps.end(), [&](const auto& r) { return oracle.same_orbit(r, pair); })) {
      reps.push_back(std::move(pair));
    }
  });
  return {reps.size(), oracle.double_coset_coverage(n, universe_bound)};
}

CanonicalStructure canonical_structure(const StructureOracle& oracle, int n_max, int universe_bound) {
  const int bound = effective_bound(oracle, universe_bound);
  CanonicalStructure out;
  for (int n = 1; n <= n_max; ++n) {
    std::vector<OrbitPredicate> preds;
    for_each_tuple(n, bound, [&](const std::vector<int>& t) {
      for (auto& p : preds) {
        if (oracle.same_orbit(p.least, t)) {
          p.members.push_back(t);
          return;
        }
      }
      preds.push_back({t, {t}});
    });
    out.by_arity.push_back(std::move(preds));
  }
  return out;
}

}  // namespace profin
