#include <algorithm>
#include <numeric>
#include <sstream>

#include "profin/errors.hpp"
#include "profin/quotient.hpp"

namespace profin {

namespace {

using Index = FiniteGroup::Index;

std::uint64_t element_order(const FiniteGroup& g, Index a) {
  std::uint64_t k = 1;
  for (Index x = a; x != g.identity(); x = g.mul(x, a)) ++k;
  return k;
}

// Subgroup generated by [x, g] for x in `sub`, g in G.
std::vector<Index> commutator_with_group(const FiniteGroup& g, const std::vector<Index>& sub) {
  std::vector<char> seen(g.size(), 0);
  std::vector<Index> gens;
  for (Index x : sub) {
    for (Index y = 0; y < g.size(); ++y) {
      Index c = g.commutator(x, y);
      if (!seen[c]) {
        seen[c] = 1;
        gens.push_back(c);
      }
    }
  }
  return g.subgroup(gens);
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Elementary divisors of G / G' from the counts of cosets killed by l^k.
std::vector<std::uint64_t> abelian_invariants(const FiniteGroup& g, const std::vector<Index>& derived) {
  std::vector<char> in_derived(g.size(), 0);
  for (Index d : derived) in_derived[d] = 1;
  std::vector<std::int64_t> label(g.size(), -1);
  std::vector<Index> reps;
  for (Index x = 0; x < g.size(); ++x) {
    if (label[x] >= 0) continue;
    for (Index d : derived) label[g.mul(x, d)] = static_cast<std::int64_t>(reps.size());
    reps.push_back(x);
  }
  const std::uint64_t q = reps.size();
  std::vector<std::uint64_t> divisors;
  for (std::uint64_t ell : prime_factors(q)) {
    // counts[k] = #{cosets y : y^(ell^k) in G'}
    std::vector<std::uint64_t> counts{1};
    std::vector<Index> powers = reps;
    while (true) {
      for (Index& y : powers) y = g.pow(y, static_cast<long long>(ell));
      std::uint64_t c = std::count_if(powers.begin(), powers.end(), [&](Index y) { return in_derived[y] != 0; });
      counts.push_back(c);
      if (c == counts[counts.size() - 2]) break;
    }
    // f[k] = number of cyclic factors of order >= ell^k, k >= 1.
    std::vector<int> f(counts.size(), 0);
    for (std::size_t k = 1; k < counts.size(); ++k) {
      std::uint64_t ratio = counts[k] / counts[k - 1];
      int e = 0;
      while (ratio > 1) {
        ratio /= ell;
        ++e;
      }
      f[k] = e;
    }
    for (std::size_t k = 1; k < f.size(); ++k) {
      const int exact = f[k] - (k + 1 < f.size() ? f[k + 1] : 0);
      std::uint64_t value = 1;
      for (std::size_t i = 0; i < k; ++i) value *= ell;
      for (int i = 0; i < exact; ++i) divisors.push_back(value);
    }
  }
  std::sort(divisors.begin(), divisors.end());
  return divisors;
}

}  // namespace

LevelFingerprint fingerprint_level(const FiniteGroup& g, int level) {
  LevelFingerprint f;
  f.level = level;
  f.order = g.size();

  f.exponent = 1;
  for (Index a = 0; a < g.size(); ++a) f.exponent = std::lcm(f.exponent, element_order(g, a));

  std::vector<Index> all(g.size());
  std::iota(all.begin(), all.end(), Index{0});
  std::vector<Index> term = all;
  std::vector<Index> derived;
  f.nilpotency_class = 0;
  while (term.size() > 1) {
    auto next = commutator_with_group(g, term);
    if (f.nilpotency_class == 0) derived = next;
    if (next.size() == term.size()) {
      f.nilpotency_class = -1;  // not nilpotent
      break;
    }
    term = std::move(next);
    ++f.nilpotency_class;
  }
  if (derived.empty()) derived = {g.identity()};
  f.abelianization = abelian_invariants(g, derived);

  std::vector<char> seen(g.size(), 0);
  for (Index x = 0; x < g.size(); ++x) {
    if (seen[x]) continue;
    ++f.conjugacy_classes;
    for (Index y = 0; y < g.size(); ++y) seen[g.mul(g.mul(g.inv(y), x), y)] = 1;
  }
  return f;
}

Fingerprint fingerprint(const InverseSystem& system, std::uint64_t cap) {
  Fingerprint f;
  for (int n = 0; n <= system.depth(); ++n) {
    FiniteGroup g(system.level(n), Arithmetic::Rewriting, cap);
    f.levels.push_back(fingerprint_level(g, n));
  }
  return f;
}

std::string format_fingerprint(const Fingerprint& f) {
  std::ostringstream out;
  for (const auto& l : f.levels) {
    out << "abelianization=[";
    for (std::size_t i = 0; i < l.abelianization.size(); ++i) out << (i ? "," : "") << l.abelianization[i];
    out << "] class=" << l.nilpotency_class << " conj_classes=" << l.conjugacy_classes
        << " exponent=" << l.exponent << " level=" << l.level << " order=" << l.order << "\n";
  }
  return out.str();
}

namespace {

class GroupIsoSearch {
 public:
  GroupIsoSearch(const FiniteGroup& a, const FiniteGroup& b) : a_(a), b_(b), gens_(a.generators()) {
    order_a_ = invariants(a);
    order_b_ = invariants(b);
  }

  bool run() {
    auto sa = order_a_, sb = order_b_;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
    images_.clear();
    return extend();
  }

 private:
  // (element order, centraliser size) per element.
  static std::vector<std::pair<std::uint64_t, std::uint64_t>> invariants(const FiniteGroup& g) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out(g.size());
    for (Index x = 0; x < g.size(); ++x) {
      std::uint64_t c = 0;
      for (Index y = 0; y < g.size(); ++y) c += g.mul(x, y) == g.mul(y, x);
      out[x] = {element_order(g, x), c};
    }
    return out;
  }

  bool extend() {
    const std::size_t k = images_.size();
    if (k == gens_.size()) return is_isomorphism();
    const auto target = order_a_[gens_[k]];
    std::vector<Index> prefix_a(gens_.begin(), gens_.begin() + static_cast<std::ptrdiff_t>(k) + 1);
    const std::size_t size_a = a_.subgroup(prefix_a).size();
    for (Index h = 0; h < b_.size(); ++h) {
      if (order_b_[h] != target) continue;
      images_.push_back(h);
      if (b_.subgroup(images_).size() == size_a && extend()) return true;
      images_.pop_back();
    }
    return false;
  }

  // The assignment gens -> images extends to a well-defined bijective map
  // with f(x g_i) = f(x) h_i, which is then an isomorphism.
  bool is_isomorphism() const {
    const std::size_t none = b_.size();
    std::vector<std::size_t> f(a_.size(), none);
    std::vector<char> hit(b_.size(), 0);
    f[a_.identity()] = b_.identity();
    hit[b_.identity()] = 1;
    std::vector<Index> queue{a_.identity()};
    for (std::size_t q = 0; q < queue.size(); ++q) {
      const Index x = queue[q];
      for (std::size_t i = 0; i < gens_.size(); ++i) {
        const Index y = a_.mul(x, gens_[i]);
        const Index fy = b_.mul(static_cast<Index>(f[x]), images_[i]);
        if (f[y] == none) {
          if (hit[fy]) return false;
          f[y] = fy;
          hit[fy] = 1;
          queue.push_back(y);
        } else if (f[y] != fy) {
          return false;
        }
      }
    }
    return queue.size() == a_.size() && queue.size() == b_.size();
  }

  const FiniteGroup& a_;
  const FiniteGroup& b_;
  std::vector<Index> gens_;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> order_a_, order_b_;
  std::vector<Index> images_;
};

}  // namespace

bool is_isomorphic_finite(const QuotientLevel& a, const QuotientLevel& b, std::uint64_t cap) {
  if (a.prime() != b.prime()) return false;
  if (a.log_order() != b.log_order()) return false;
  if (a.order() > cap || b.order() > cap) {
    throw ResourceError("is_isomorphic_finite: order exceeds cap " + std::to_string(cap));
  }
  FiniteGroup ga(a, Arithmetic::ClosedForm, cap);
  FiniteGroup gb(b, Arithmetic::ClosedForm, cap);
  return GroupIsoSearch(ga, gb).run();
}

}  // namespace profin
