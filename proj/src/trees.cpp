#include "profin/trees.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>

#include "profin/errors.hpp"

namespace profin {

bool is_partial_injection(const PartialInjection& s) {
  std::set<int> seen;
  for (int v : s) {
    if (v < 0 || !seen.insert(v).second) return false;
  }
  return true;
}

PartialInjection compose_partial(const PartialInjection& s2, const PartialInjection& s1) {
  PartialInjection out;
  for (int v : s1) {
    if (v >= static_cast<int>(s2.size())) break;
    out.push_back(s2[v]);
  }
  return out;
}

PartialInjection invert_partial(const PartialInjection& s) {
  std::map<int, int> pre;
  for (std::size_t i = 0; i < s.size(); ++i) pre[s[i]] = static_cast<int>(i);
  PartialInjection out;
  for (int j = 0;; ++j) {
    auto it = pre.find(j);
    if (it == pre.end()) break;
    out.push_back(it->second);
  }
  return out;
}

std::string format_partial(const PartialInjection& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
  return out + ")";
}

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<char> hit(images_.size(), 0);
  for (int v : images_) {
    if (v < 0 || v >= static_cast<int>(images_.size()) || hit[v]) {
      throw std::invalid_argument("Permutation: images are not a permutation of 0.." +
                                  std::to_string(images_.size()));
    }
    hit[v] = 1;
  }
  while (!images_.empty() && images_.back() == static_cast<int>(images_.size()) - 1) images_.pop_back();
}

PartialInjection Permutation::prefix(int n) const {
  PartialInjection out(n);
  for (int i = 0; i < n; ++i) out[i] = (*this)(i);
  return out;
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<int>(i);
  return Permutation(std::move(inv));
}

bool Permutation::is_identity() const { return images_.empty(); }

std::vector<int> Permutation::images(int n) const {
  const int m = std::max(n, static_cast<int>(images_.size()));
  std::vector<int> out(m);
  for (int i = 0; i < m; ++i) out[i] = (*this)(i);
  return out;
}

Permutation operator*(const Permutation& f, const Permutation& g) {
  const int m = static_cast<int>(std::max(f.images_.size(), g.images_.size()));
  std::vector<int> out(m);
  for (int i = 0; i < m; ++i) out[i] = f(g(i));
  return Permutation(std::move(out));
}

bool Permutation::operator==(const Permutation& other) const { return images_ == other.images_; }
bool Permutation::operator<(const Permutation& other) const { return images_ < other.images_; }

Permutation parse_cycles(std::string_view text) {
  std::vector<std::vector<int>> cycles;
  std::size_t pos = 0;
  auto fail = [&](const std::string& what) -> void {
    throw ParseError("cycle notation '" + std::string(text) + "' at column " + std::to_string(pos) + ": " + what);
  };
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip();
  while (pos < text.size()) {
    if (text[pos] != '(') fail("expected '('");
    ++pos;
    std::vector<int> cycle;
    while (true) {
      skip();
      if (pos < text.size() && text[pos] == ')') {
        ++pos;
        break;
      }
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      int v = 0;
      auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), v);
      if (ec != std::errc() || ptr == text.data() + pos) fail("expected a point");
      if (v < 0) fail("negative point");
      pos = static_cast<std::size_t>(ptr - text.data());
      cycle.push_back(v);
    }
    cycles.push_back(std::move(cycle));
    skip();
  }
  int m = 0;
  for (const auto& c : cycles) {
    for (int v : c) m = std::max(m, v + 1);
  }
  std::vector<int> images(m);
  for (int i = 0; i < m; ++i) images[i] = i;
  std::vector<char> used(m, 0);
  for (const auto& c : cycles) {
    for (std::size_t k = 0; k < c.size(); ++k) {
      if (used[c[k]]) fail("point " + std::to_string(c[k]) + " repeated");
      used[c[k]] = 1;
      images[c[k]] = c[(k + 1) % c.size()];
    }
  }
  return Permutation(std::move(images));
}

std::string format_cycles(const Permutation& f) {
  const auto images = f.images(0);
  std::vector<char> done(images.size(), 0);
  std::string out;
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (done[i] || images[i] == static_cast<int>(i)) continue;
    out += "(";
    for (std::size_t j = i; !done[j]; j = static_cast<std::size_t>(images[j])) {
      done[j] = 1;
      if (j != i) out += " ";
      out += std::to_string(j);
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

std::vector<Permutation> generate_group(const std::vector<Permutation>& generators, std::uint64_t cap) {
  std::set<Permutation> seen{Permutation()};
  std::vector<Permutation> queue{Permutation()};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    for (const auto& g : generators) {
      Permutation next = queue[q] * g;
      if (seen.insert(next).second) {
        if (seen.size() > cap) throw ResourceError("generated group exceeds cap " + std::to_string(cap));
        queue.push_back(std::move(next));
      }
    }
  }
  return {seen.begin(), seen.end()};
}

bool GroupTree::contains(const PartialInjection& s) const {
  const auto k = s.size();
  return k < levels.size() && levels[k].count(s) > 0;
}

std::vector<std::size_t> GroupTree::level_sizes() const {
  std::vector<std::size_t> out;
  for (const auto& l : levels) out.push_back(l.size());
  return out;
}

bool GroupTree::is_prefix_closed() const {
  if (levels.empty() || levels[0] != std::set<PartialInjection>{PartialInjection{}}) return false;
  for (std::size_t k = 1; k < levels.size(); ++k) {
    for (const auto& s : levels[k]) {
      if (!levels[k - 1].count(PartialInjection(s.begin(), s.end() - 1))) return false;
    }
  }
  return true;
}

GroupTree tree_of_elements(const std::vector<Permutation>& elements, int depth) {
  if (depth < 0) throw RangeError("tree depth must be non-negative");
  GroupTree t{depth, std::vector<std::set<PartialInjection>>(depth + 1)};
  for (const auto& g : elements) {
    for (int k = 0; k <= depth; ++k) t.levels[k].insert(g.prefix(k));
  }
  if (elements.empty()) t.levels[0].insert(PartialInjection{});
  return t;
}

GroupTree tree_of_group(const std::vector<Permutation>& generators, int depth, std::uint64_t cap) {
  return tree_of_elements(generate_group(generators, cap), depth);
}

SubgroupAxiomReport subgroup_axioms_check(const GroupTree& tree) {
  SubgroupAxiomReport r;
  auto note = [&](const std::string& what) {
    if (r.failure.empty()) r.failure = what;
  };
  for (int k = 0; k <= tree.depth && k < static_cast<int>(tree.levels.size()); ++k) {
    PartialInjection id(k);
    for (int i = 0; i < k; ++i) id[i] = i;
    if (!tree.contains(id)) {
      r.identity = false;
      note("identity prefix " + format_partial(id) + " missing");
    }
  }
  std::vector<PartialInjection> nodes;
  for (const auto& level : tree.levels) nodes.insert(nodes.end(), level.begin(), level.end());
  for (const auto& s : nodes) {
    const auto inv = invert_partial(s);
    if (!tree.contains(inv)) {
      r.inverses = false;
      note("inverse " + format_partial(inv) + " of " + format_partial(s) + " missing");
    }
  }
  for (const auto& s : nodes) {
    for (const auto& t : nodes) {
      const auto c = compose_partial(t, s);
      if (!tree.contains(c)) {
        r.compositions = false;
        note("composition " + format_partial(t) + " o " + format_partial(s) + " = " + format_partial(c) +
             " missing");
      }
    }
  }
  return r;
}

bool product_subset_check(const GroupTree& a, const GroupTree& b, const GroupTree& c, int depth) {
  for (int kb = 0; kb <= depth && kb < static_cast<int>(b.levels.size()); ++kb) {
    for (const auto& beta : b.levels[kb]) {
      const int max_beta = beta.empty() ? -1 : *std::max_element(beta.begin(), beta.end());
      for (int ka = max_beta + 1; ka <= depth && ka < static_cast<int>(a.levels.size()); ++ka) {
        for (const auto& alpha : a.levels[ka]) {
          if (!c.contains(compose_partial(alpha, beta))) return false;
        }
      }
    }
  }
  return true;
}

}  // namespace profin
