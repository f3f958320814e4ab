#include "profin/gamma.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include <boost/dynamic_bitset.hpp>

#include "profin/errors.hpp"

namespace profin {

BarElement bar(const GroupElement& a) { return BarElement{a.vector()}; }

std::string to_string(const CaseTag& tag) {
  struct Visitor {
    std::string operator()(const Case1& c) const { return "Case1(" + std::to_string(c.r) + ")"; }
    std::string operator()(const Case2& c) const {
      return "Case2(" + std::to_string(c.r) + "," + std::to_string(c.s) + ")";
    }
    std::string operator()(const Case3& c) const { return "Case3(" + std::to_string(c.ell) + ")"; }
    std::string operator()(const Case4&) const { return "Case4"; }
  };
  return std::visit(Visitor{}, tag);
}

namespace {

void require_noncentral(const GroupElement& v, const char* where) {
  if (v.vector().empty()) throw PreconditionError(std::string(where) + ": argument is central");
}

void require_nice(const Graph& g, const char* where) {
  const auto report = is_nice(g);
  if (!report.is_nice) {
    throw PreconditionError(std::string(where) + ": graph is not nice: " + to_string(*report.violation));
  }
}

}  // namespace

bool sim(const GroupElement& u, const GroupElement& v) {
  require_noncentral(u, "sim");
  require_noncentral(v, "sim");
  return centralizer_equal(u, v);
}

ClassDescriptor classify(const GroupElement& v) {
  require_noncentral(v, "classify");
  const Graph& g = v.graph();
  const std::uint64_t p = static_cast<std::uint64_t>(v.prime().value());
  std::vector<Vertex> support;
  for (auto [i, e] : v.vector()) support.push_back(i);

  ClassDescriptor d{bar(v), Case4{}, p - 1};
  if (support.size() == 1) {
    d.case_tag = Case1{support[0]};
    return d;
  }
  if (support.size() == 2 && g.has_edge(support[0], support[1])) {
    d.case_tag = Case2{support[0], support[1]};
    d.size = (p - 1) * (p - 1);
    return d;
  }
  // ell may itself lie in the support: x0 x1 x2 on C5 has ell = 1.
  for (Vertex ell = 0; ell < g.n_vertices(); ++ell) {
    bool all = true;
    for (Vertex i : support) {
      if (i != ell && !g.has_edge(i, ell)) {
        all = false;
        break;
      }
    }
    if (all) {
      d.case_tag = Case3{ell};
      d.size = p * (p - 1);
      return d;
    }
  }
  return d;
}

std::optional<GroupElement> find_witness(const GroupElement& v) {
  require_noncentral(v, "find_witness");
  const GraphPtr& graph = v.graph_ptr();
  const Prime p = v.prime();
  const int n = graph->n_vertices();
  auto good = [&](const GroupElement& w) { return commutes(v, w) && !centralizer_equal(v, w); };
  for (Vertex i = 0; i < n; ++i) {
    for (int a = 1; a < p; ++a) {
      GroupElement w(graph, p, {}, {{i, a}});
      if (good(w)) return w;
    }
  }
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) {
      for (int a = 1; a < p; ++a) {
        for (int b = 1; b < p; ++b) {
          GroupElement w(graph, p, {}, {{i, a}, {j, b}});
          if (good(w)) return w;
        }
      }
    }
  }
  return std::nullopt;
}

bool witness_exists(const GroupElement& v) { return find_witness(v).has_value(); }

Graph gamma_symbolic(const GraphPtr& graph, Prime p) {
  require_nice(*graph, "gamma_symbolic");
  const int n = graph->n_vertices();
  std::vector<GroupElement> x;
  for (Vertex i = 0; i < n; ++i) x.push_back(generator(graph, p, i));
  // Nice graphs have no universal vertex, so every x_i is non-central.
  for (Vertex i = 0; i < n; ++i) {
    const auto d = classify(x[i]);
    if (!std::holds_alternative<Case1>(d.case_tag) || d.size != static_cast<std::uint64_t>(p - 1) ||
        !witness_exists(x[i])) {
      throw ConsistencyError("gamma_symbolic: [x" + std::to_string(i) + "] is not a vertex class");
    }
  }
  Graph out(n);
  for (Vertex r = 0; r < n; ++r) {
    for (Vertex s = r + 1; s < n; ++s) {
      if (sim(x[r], x[s])) throw ConsistencyError("gamma_symbolic: generator classes collide");
      if (commutes(x[r], x[s])) out.add_edge(r, s);
    }
  }
  return out;
}

BruteClasses brute_classes(const QuotientLevel& level, std::uint64_t cap) {
  const Prime p = level.prime();
  const int n = level.n();
  std::uint64_t count = 1;
  for (int k = 0; k < n; ++k) {
    count *= static_cast<std::uint64_t>(p.value());
    if (count > cap) throw ResourceError("brute_classes: |G/Z| exceeds cap " + std::to_string(cap));
  }

  BruteClasses out;
  std::vector<GroupElement> reps;
  reps.reserve(count);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    VectorWord vec;
    std::uint64_t rest = idx;
    for (int k = 0; k < n; ++k) {
      const int e = static_cast<int>(rest % p.value());
      rest /= p.value();
      if (e) vec[level.vertices()[k]] = e;
    }
    out.cosets.push_back(BarElement{vec});
    reps.emplace_back(level.ambient(), p, CentralWord{}, vec);
  }

  // Commutation only depends on the cosets, so the products of the plain
  // vector representatives decide it.
  out.commutes.assign(count, std::vector<char>(count, 0));
  for (std::uint64_t u = 0; u < count; ++u) {
    out.commutes[u][u] = 1;
    for (std::uint64_t w = u + 1; w < count; ++w) {
      const bool c = oracle_multiply(reps[u], reps[w], level) == oracle_multiply(reps[w], reps[u], level);
      out.commutes[u][w] = out.commutes[w][u] = c;
    }
  }

  std::map<boost::dynamic_bitset<>, int> ids;
  out.class_of.assign(count, -1);
  for (std::uint64_t u = 1; u < count; ++u) {
    boost::dynamic_bitset<> centralizer(count);
    for (std::uint64_t w = 0; w < count; ++w) centralizer[w] = out.commutes[u][w] != 0;
    auto [it, inserted] = ids.try_emplace(centralizer, static_cast<int>(ids.size()));
    if (inserted) out.class_sizes.push_back(0);
    out.class_of[u] = it->second;
    ++out.class_sizes[it->second];
  }
  return out;
}

std::uint64_t class_size_brute(const QuotientLevel& level, const GroupElement& v, std::uint64_t cap) {
  require_noncentral(v, "class_size_brute");
  const auto classes = brute_classes(level, cap);
  const auto target = bar(level.project(v));
  for (std::size_t u = 0; u < classes.cosets.size(); ++u) {
    if (classes.cosets[u] == target) {
      if (classes.class_of[u] < 0) throw PreconditionError("class_size_brute: central in the quotient");
      return classes.class_sizes[classes.class_of[u]];
    }
  }
  throw ConsistencyError("class_size_brute: coset not enumerated");
}

GammaBruteResult gamma_brute(const QuotientLevel& level, std::uint64_t cap) {
  require_nice(level.graph(), "gamma_brute");
  const auto classes = brute_classes(level, cap);
  const std::uint64_t p = static_cast<std::uint64_t>(level.prime().value());
  const std::size_t count = classes.cosets.size();

  std::vector<std::size_t> first(classes.class_sizes.size(), count);
  for (std::size_t u = 1; u < count; ++u) {
    auto& f = first[classes.class_of[u]];
    if (f == count) f = u;
  }

  // Class ids are assigned in order of least coset, so iterating ids keeps
  // the vertex order deterministic.
  std::vector<std::size_t> vertex_reps;
  for (std::size_t c = 0; c < classes.class_sizes.size(); ++c) {
    if (classes.class_sizes[c] != p - 1) continue;
    const std::size_t a = first[c];
    bool witnessed = false;
    for (std::size_t w = 1; w < count && !witnessed; ++w) {
      witnessed = classes.commutes[a][w] && classes.class_of[w] != static_cast<int>(c);
    }
    if (witnessed) vertex_reps.push_back(a);
  }

  GammaBruteResult out{Graph(static_cast<int>(vertex_reps.size())), {}};
  for (std::size_t k = 0; k < vertex_reps.size(); ++k) {
    Vertex label = -1;
    for (Vertex r : level.vertices()) {
      const auto u = std::find_if(classes.cosets.begin(), classes.cosets.end(),
                                  [&](const BarElement& b) { return b.vector == VectorWord{{r, 1}}; });
      if (classes.class_of[u - classes.cosets.begin()] == classes.class_of[vertex_reps[k]]) label = r;
    }
    out.labels.push_back(label);
    for (std::size_t l = k + 1; l < vertex_reps.size(); ++l) {
      if (classes.commutes[vertex_reps[k]][vertex_reps[l]]) {
        out.graph.add_edge(static_cast<Vertex>(k), static_cast<Vertex>(l));
      }
    }
  }
  return out;
}

namespace {

int default_depth(const GraphPtr& g, Prime p, std::uint64_t cap) {
  int depth = 0;
  for (int d = 1; d <= g->n_vertices(); ++d) {
    const auto level = QuotientLevel::standard(g, p, d);
    std::uint64_t order = 1;
    bool fits = true;
    for (int k = 0; k < level.log_order() && fits; ++k) {
      order *= static_cast<std::uint64_t>(p.value());
      fits = order <= cap;
    }
    if (!fits) break;
    depth = d;
  }
  return depth;
}

// x_i -> x_{pi(i)} restricted to the level-depth quotients.
bool relabeling_is_isomorphism(const QuotientLevel& la, const QuotientLevel& lb, const std::vector<Vertex>& pi) {
  if (la.order() != lb.order()) return false;
  const auto elements = enumerate(la);
  const ElementCodec codec_b(lb);
  std::vector<GroupElement> images;
  std::vector<char> hit(lb.order(), 0);
  for (const auto& a : elements) {
    images.push_back(relabel(a, pi, lb.ambient()));
    if (!lb.holds(images.back())) return false;
    auto& h = hit[codec_b.index(images.back())];
    if (h) return false;
    h = 1;
  }
  const ElementCodec codec_a(la);
  for (const auto& a : elements) {
    for (const auto& b : elements) {
      const auto& image = images[codec_a.index(multiply(a, b))];
      if (!(image == oracle_multiply(images[codec_a.index(a)], images[codec_a.index(b)], lb))) return false;
    }
  }
  return true;
}

}  // namespace

RoundtripVerdict roundtrip(const GraphPtr& a, const GraphPtr& b, Prime p, int depth, std::uint64_t cap) {
  require_nice(*a, "roundtrip");
  require_nice(*b, "roundtrip");
  RoundtripVerdict v;
  v.witness = are_isomorphic(*a, *b);
  v.graphs_isomorphic = v.witness.has_value();
  if (v.graphs_isomorphic) {
    const auto& pi = *v.witness;
    v.depth = depth < 0 ? default_depth(a, p, cap) : std::min(depth, a->n_vertices());
    const InverseSystem sa(a, p, v.depth);
    const InverseSystem sb(b, p, v.depth, pi);
    v.fingerprint_a = fingerprint(sa);
    v.fingerprint_b = fingerprint(sb);
    v.fingerprints_match = v.fingerprint_a == v.fingerprint_b;
    v.homomorphism_verified = relabeling_is_isomorphism(sa.level(v.depth), sb.level(v.depth), pi);
  } else {
    const Graph ga = gamma_symbolic(a, p);
    const Graph gb = gamma_symbolic(b, p);
    v.gamma_recovers_a = are_isomorphic(ga, *a).has_value();
    v.gamma_recovers_b = are_isomorphic(gb, *b).has_value();
    v.gamma_separates = !are_isomorphic(ga, gb).has_value();
  }
  return v;
}

std::string RoundtripVerdict::summary() const {
  if (graphs_isomorphic) {
    if (verified()) return "ISOMORPHIC (fingerprints match)";
    return "ISOMORPHIC (verification failed)";
  }
  if (verified()) return "NON-ISOMORPHIC (Gamma separates)";
  return "NON-ISOMORPHIC (verification failed)";
}

}  // namespace profin
