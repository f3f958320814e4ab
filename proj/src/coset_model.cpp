#include "profin/coset_model.hpp"

#include <algorithm>
#include <set>

#include "profin/errors.hpp"

namespace profin {

std::string to_string(Side side) {
  switch (side) {
    case Side::Left: return "left";
    case Side::Right: return "right";
    case Side::Both: return "both";
  }
  return "?";
}

namespace {

std::vector<std::size_t> bits(const boost::dynamic_bitset<>& b) {
  std::vector<std::size_t> out;
  for (auto i = b.find_first(); i != boost::dynamic_bitset<>::npos; i = b.find_next(i)) out.push_back(i);
  return out;
}

}  // namespace

CosetStructure::CosetStructure(const InverseSystem& system, int depth, std::uint64_t cap)
    : system_(system), depth_(depth), top_codec_(system.level(depth)) {
  const QuotientLevel& top = system_.level(depth_);
  if (top.order() > cap) {
    throw ResourceError("coset structure: |G/R_" + std::to_string(depth_) + "| = " + std::to_string(top.order()) +
                        " exceeds cap " + std::to_string(cap));
  }
  const FiniteGroup group(top, Arithmetic::Rewriting, cap);
  const std::size_t n_top = group.size();

  std::map<boost::dynamic_bitset<>, Index> seen;
  auto add = [&](boost::dynamic_bitset<> set, int level, Side side, const GroupElement& rep) -> Index {
    auto it = seen.find(set);
    if (it != seen.end()) {
      Coset& existing = cosets_[it->second];
      if (existing.side != side && existing.side != Side::Both) existing.side = Side::Both;
      return it->second;
    }
    const Index id = cosets_.size();
    cosets_.push_back(Coset{level, side, rep});
    members_.push_back(set);
    seen.emplace(std::move(set), id);
    return id;
  };

  left_of_.resize(depth_ + 1);
  right_of_.resize(depth_ + 1);
  for (int n = 0; n <= depth_; ++n) {
    const QuotientLevel& level = system_.level(n);
    codecs_.emplace_back(level);
    std::vector<FiniteGroup::Index> kernel;
    for (FiniteGroup::Index x = 0; x < n_top; ++x) {
      if (level.project(group.element(x)).is_identity()) kernel.push_back(x);
    }
    for (const GroupElement& rep : enumerate(level, cap)) {
      const FiniteGroup::Index r = group.index_of(rep);
      boost::dynamic_bitset<> left(n_top), right(n_top);
      for (auto k : kernel) {
        left.set(group.mul(r, k));
        right.set(group.mul(k, r));
      }
      const std::uint64_t code = codecs_.back().index(rep);
      left_of_[n][code] = add(std::move(left), n, Side::Left, rep);
      right_of_[n][code] = add(std::move(right), n, Side::Right, rep);
    }
  }

  const std::size_t u = cosets_.size();
  std::vector<std::vector<std::size_t>> lists;
  for (const auto& m : members_) lists.push_back(bits(m));
  relation_.assign(u * u * u, false);
  for (Index a = 0; a < u; ++a) {
    for (Index b = 0; b < u; ++b) {
      boost::dynamic_bitset<> product(n_top);
      for (auto x : lists[a]) {
        for (auto y : lists[b]) {
          product.set(group.mul(static_cast<FiniteGroup::Index>(x), static_cast<FiniteGroup::Index>(y)));
        }
      }
      for (Index c = 0; c < u; ++c) relation_[(a * u + b) * u + c] = product.is_subset_of(members_[c]);
    }
  }
}

CosetStructure::Index CosetStructure::coset_of(const GroupElement& g, int level, Side side) const {
  if (level < 0 || level > depth_) throw RangeError("coset_of: level " + std::to_string(level) + " beyond depth");
  const auto rep = system_.level(level).project(g);
  const auto& table = side == Side::Right ? right_of_[level] : left_of_[level];
  return table.at(codecs_[level].index(rep));
}

bool CosetStructure::related_by_arithmetic(Index a, Index b, Index c) const {
  const Coset& A = cosets_[a];
  const Coset& B = cosets_[b];
  const Coset& C = cosets_[c];
  if (C.level > std::min(A.level, B.level)) return false;
  return system_.level(C.level).project(multiply(A.rep, B.rep)) == C.rep;
}

std::vector<std::array<CosetStructure::Index, 3>> CosetStructure::triples() const {
  std::vector<std::array<Index, 3>> out;
  const std::size_t u = size();
  for (Index a = 0; a < u; ++a) {
    for (Index b = 0; b < u; ++b) {
      for (Index c = 0; c < u; ++c) {
        if (related(a, b, c)) out.push_back({a, b, c});
      }
    }
  }
  return out;
}

bool is_subgroup_def(const CosetStructure& m, CosetStructure::Index a) { return m.related(a, a, a); }

bool subgroup_included(const CosetStructure& m, CosetStructure::Index u, CosetStructure::Index v) {
  return m.related(u, v, v);
}

namespace {

std::vector<CosetStructure::Index> subgroups(const CosetStructure& m) {
  std::vector<CosetStructure::Index> out;
  for (CosetStructure::Index i = 0; i < m.size(); ++i) {
    if (is_subgroup_def(m, i)) out.push_back(i);
  }
  return out;
}

// The candidate containing all the others.
CosetStructure::Index largest(const CosetStructure& m, const std::vector<CosetStructure::Index>& candidates) {
  for (auto u : candidates) {
    if (std::all_of(candidates.begin(), candidates.end(), [&](auto v) { return subgroup_included(m, v, u); })) {
      return u;
    }
  }
  throw ConsistencyError("no largest subgroup among the candidates");
}

}  // namespace

CosetStructure::Index smallest_subgroup(const CosetStructure& m) {
  const auto subs = subgroups(m);
  for (auto u : subs) {
    if (std::all_of(subs.begin(), subs.end(), [&](auto v) { return subgroup_included(m, u, v); })) return u;
  }
  throw ConsistencyError("structure has no smallest subgroup");
}

CosetStructure::Index left_coset_of(const CosetStructure& m, CosetStructure::Index a) {
  std::vector<CosetStructure::Index> candidates;
  for (auto u : subgroups(m)) {
    if (m.related(a, u, a)) candidates.push_back(u);
  }
  return largest(m, candidates);
}

CosetStructure::Index right_coset_of(const CosetStructure& m, CosetStructure::Index a) {
  std::vector<CosetStructure::Index> candidates;
  for (auto u : subgroups(m)) {
    if (m.related(u, a, a)) candidates.push_back(u);
  }
  return largest(m, candidates);
}

bool coset_included(const CosetStructure& m, CosetStructure::Index a, CosetStructure::Index b) {
  return m.related(a, smallest_subgroup(m), b);
}

Filters filters(const GroupElement& g, const CosetStructure& m) {
  Filters f;
  for (int n = 0; n <= m.depth(); ++n) {
    f.left.push_back(m.coset_of(g, n, Side::Left));
    f.right.push_back(m.coset_of(g, n, Side::Right));
  }
  return f;
}

FilterCheck check_filter_properties(const Filters& f, const CosetStructure& m) {
  FilterCheck out;
  const auto u_min = smallest_subgroup(m);
  auto included = [&](auto a, auto b) { return m.related(a, u_min, b); };
  auto has_common_lower = [&](auto a, auto b, const std::vector<CosetStructure::Index>& pool) {
    return std::any_of(pool.begin(), pool.end(), [&](auto c) { return included(c, a) && included(c, b); });
  };

  out.directed = true;
  for (const auto* side : {&f.left, &f.right}) {
    for (auto a : *side) {
      for (auto b : *side) out.directed = out.directed && has_common_lower(a, b, *side);
    }
  }

  out.common_refinement = true;
  for (auto a : f.left) {
    for (auto b : f.right) out.common_refinement = out.common_refinement && has_common_lower(a, b, f.left);
  }

  out.one_per_subgroup = true;
  for (auto s : subgroups(m)) {
    const auto lefts = std::count_if(f.left.begin(), f.left.end(), [&](auto a) { return left_coset_of(m, a) == s; });
    const auto rights =
        std::count_if(f.right.begin(), f.right.end(), [&](auto b) { return right_coset_of(m, b) == s; });
    out.one_per_subgroup = out.one_per_subgroup && lefts == 1 && rights == 1;
  }
  return out;
}

namespace {

// The representatives of a filter, finest level first, checked for
// coherence under projection.
GroupElement finest_coherent(const std::vector<CosetStructure::Index>& filter, const CosetStructure& m,
                             bool left_side) {
  if (filter.empty()) throw ConsistencyError("empty filter");
  std::vector<std::pair<int, GroupElement>> reps;
  for (auto a : filter) {
    const auto s = left_side ? left_coset_of(m, a) : right_coset_of(m, a);
    reps.emplace_back(m.coset(s).level, m.coset(a).rep);
  }
  const auto finest = std::max_element(reps.begin(), reps.end(), [](const auto& x, const auto& y) {
    return x.first < y.first;
  });
  const GroupElement g = finest->second;
  for (const auto& [level, rep] : reps) {
    if (!(m.system().level(level).project(g) == rep)) {
      throw ConsistencyError("filter cosets at levels " + std::to_string(level) + " and " +
                             std::to_string(finest->first) + " are disjoint");
    }
  }
  return g;
}

}  // namespace

GroupElement element_from_left(const Filters& f, const CosetStructure& m) { return finest_coherent(f.left, m, true); }

GroupElement inverse_from_right(const Filters& f, const CosetStructure& m) {
  const GroupElement s = finest_coherent(f.right, m, false);
  return m.system().level(m.depth()).project(inverse(s));
}

GroupElement reconstruct_element(const Filters& f, const CosetStructure& m) {
  if (!check_filter_properties(f, m).ok()) throw ConsistencyError("filters fail the filter properties");
  const GroupElement g = element_from_left(f, m);
  const GroupElement g_star = inverse_from_right(f, m);
  if (!m.system().level(m.depth()).project(multiply(g, g_star)).is_identity()) {
    throw ConsistencyError("left and right filters do not determine inverse elements");
  }
  return g;
}

bool is_structure_isomorphism(const StructureMap& rho, const CosetStructure& g, const CosetStructure& h) {
  const std::size_t u = g.size();
  if (rho.size() != u || h.size() != u) return false;
  std::vector<char> hit(u, 0);
  for (auto j : rho) {
    if (j >= u || hit[j]) return false;
    hit[j] = 1;
  }
  for (std::size_t a = 0; a < u; ++a) {
    for (std::size_t b = 0; b < u; ++b) {
      for (std::size_t c = 0; c < u; ++c) {
        if (g.related(a, b, c) != h.related(rho[a], rho[b], rho[c])) return false;
      }
    }
  }
  return true;
}

std::vector<GroupElement> reconstruct_isomorphism(const StructureMap& rho, const CosetStructure& g,
                                                  const CosetStructure& h) {
  if (!is_structure_isomorphism(rho, g, h)) throw PreconditionError("rho does not preserve R");
  std::vector<GroupElement> theta;
  for (const auto& x : enumerate(g.system().level(g.depth()))) {
    const Filters fx = filters(x, g);
    Filters image;
    for (auto a : fx.left) image.left.push_back(rho[a]);
    for (auto b : fx.right) image.right.push_back(rho[b]);
    theta.push_back(reconstruct_element(image, h));
  }
  return theta;
}

ThetaCheck check_theta(const std::vector<GroupElement>& theta, const CosetStructure& g, const CosetStructure& h) {
  ThetaCheck out;
  const QuotientLevel& top_g = g.system().level(g.depth());
  const QuotientLevel& top_h = h.system().level(h.depth());
  const auto elements = enumerate(top_g);
  if (theta.size() != elements.size()) return out;
  const ElementCodec& codec_g = g.top_codec();
  const ElementCodec& codec_h = h.top_codec();

  out.preserves_identity = theta[codec_g.index(identity(top_g.ambient(), top_g.prime()))].is_identity();

  std::vector<char> hit(codec_h.size(), 0);
  out.bijective = theta.size() == codec_h.size();
  for (const auto& t : theta) {
    if (!top_h.holds(t)) {
      out.bijective = false;
      break;
    }
    auto& slot = hit[codec_h.index(t)];
    out.bijective = out.bijective && !slot;
    slot = 1;
  }

  out.multiplicative = true;
  for (std::size_t a = 0; a < elements.size() && out.multiplicative; ++a) {
    for (std::size_t b = 0; b < elements.size() && out.multiplicative; ++b) {
      const auto ab = codec_g.index(multiply(elements[a], elements[b]));
      out.multiplicative = theta[ab] == oracle_multiply(theta[a], theta[b], top_h);
    }
  }
  return out;
}

StructureMap induced_structure_map(const std::vector<Vertex>& perm, const CosetStructure& g,
                                   const CosetStructure& h) {
  StructureMap rho;
  for (const auto& c : g.cosets()) {
    const auto image = relabel(c.rep, perm, h.system().graph());
    if (!h.system().level(c.level).holds(image)) {
      throw PreconditionError("relabelling does not carry level " + std::to_string(c.level) + " onto level " +
                              std::to_string(c.level));
    }
    rho.push_back(h.coset_of(image, c.level, c.side == Side::Right ? Side::Right : Side::Left));
  }
  return rho;
}

namespace {

class StructureIsoSearch {
 public:
  StructureIsoSearch(const CosetStructure& g, const CosetStructure& h, std::size_t limit)
      : g_(g), h_(h), limit_(limit), u_(g.size()), used_(u_, 0) {
    sig_g_ = signatures(g);
    sig_h_ = signatures(h);
  }

  std::vector<StructureMap> run() {
    if (h_.size() != u_) return {};
    auto a = sig_g_, b = sig_h_;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return {};
    extend();
    return found_;
  }

 private:
  // Participation counts in each position, plus R(A,A,A).
  static std::vector<std::array<std::size_t, 4>> signatures(const CosetStructure& m) {
    const std::size_t u = m.size();
    std::vector<std::array<std::size_t, 4>> out(u, {0, 0, 0, 0});
    for (std::size_t a = 0; a < u; ++a) {
      for (std::size_t b = 0; b < u; ++b) {
        for (std::size_t c = 0; c < u; ++c) {
          if (!m.related(a, b, c)) continue;
          ++out[a][0];
          ++out[b][1];
          ++out[c][2];
        }
      }
      out[a][3] = m.related(a, a, a);
    }
    return out;
  }

  bool consistent(std::size_t k) const {
    // The newly placed index is k; check every triple among 0..k that uses it.
    for (std::size_t a = 0; a <= k; ++a) {
      for (std::size_t b = 0; b <= k; ++b) {
        if (a != k && b != k) {
          if (g_.related(a, b, k) != h_.related(rho_[a], rho_[b], rho_[k])) return false;
          continue;
        }
        for (std::size_t c = 0; c <= k; ++c) {
          if (g_.related(a, b, c) != h_.related(rho_[a], rho_[b], rho_[c])) return false;
        }
      }
    }
    return true;
  }

  void extend() {
    if (found_.size() >= limit_) return;
    const std::size_t k = rho_.size();
    if (k == u_) {
      found_.push_back(rho_);
      return;
    }
    for (std::size_t j = 0; j < u_; ++j) {
      if (used_[j] || sig_h_[j] != sig_g_[k]) continue;
      rho_.push_back(j);
      used_[j] = 1;
      if (consistent(k)) extend();
      used_[j] = 0;
      rho_.pop_back();
    }
  }

  const CosetStructure& g_;
  const CosetStructure& h_;
  std::size_t limit_;
  std::size_t u_;
  std::vector<char> used_;
  std::vector<std::array<std::size_t, 4>> sig_g_, sig_h_;
  StructureMap rho_;
  std::vector<StructureMap> found_;
};

}  // namespace

std::vector<StructureMap> find_structure_isomorphisms(const CosetStructure& g, const CosetStructure& h,
                                                      std::size_t limit) {
  return StructureIsoSearch(g, h, limit).run();
}

ThetaAction theta_action(const CosetStructure& m) {
  ThetaAction out;
  for (const auto& g : enumerate(m.system().level(m.depth()))) {
    std::vector<CosetStructure::Index> perm;
    for (CosetStructure::Index i = 0; i < m.size(); ++i) {
      const Coset& c = m.coset(i);
      perm.push_back(c.side == Side::Right ? i : m.coset_of(multiply(g, c.rep), c.level, Side::Left));
    }
    out.permutations.push_back(std::move(perm));
  }
  return out;
}

bool theta_is_injective(const ThetaAction& theta) {
  std::set<std::vector<CosetStructure::Index>> distinct(theta.permutations.begin(), theta.permutations.end());
  return distinct.size() == theta.permutations.size();
}

bool theta_conjugacy_holds(const ThetaAction& theta_g, const ThetaAction& theta_h, const StructureMap& rho,
                           const std::vector<GroupElement>& phi, const CosetStructure& h) {
  if (phi.size() != theta_g.permutations.size()) return false;
  for (std::size_t k = 0; k < phi.size(); ++k) {
    const auto& pg = theta_g.permutations[k];
    const auto& ph = theta_h.permutations.at(h.top_codec().index(phi[k]));
    for (std::size_t i = 0; i < rho.size(); ++i) {
      if (rho[pg[i]] != ph[rho[i]]) return false;
    }
  }
  return true;
}

}  // namespace profin
