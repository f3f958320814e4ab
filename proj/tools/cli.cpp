#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

#include "profin/coset_model.hpp"
#include "profin/errors.hpp"
#include "profin/gamma.hpp"
#include "profin/graph.hpp"
#include "profin/mekler.hpp"
#include "profin/quotient.hpp"
#include "profin/trees.hpp"

namespace profin::cli {

namespace {

using json = nlohmann::json;

struct Options {
  std::uint64_t cap = kDefaultEnumerationCap;
  std::uint64_t seed = 1;
  std::string format = "text";

  std::string graph_file, second_file, map_file;
  int p = 3;
  int n = 0;
  int depth = -1;
  int level = -1;
  std::string mode = "symbolic";
  std::uint64_t brute_cap = kDefaultBruteCap;
  std::string left, right;
  std::string perm;
  std::vector<std::string> groups;
  std::string oracle = "dlo";
  int max_n = 3;
  int bound = 20;
  int roelcke_n = 2;
};

json graph_json(const Graph& g) {
  json edges = json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  return {{"n", g.n_vertices()}, {"edges", edges}};
}

std::string iso_line(const std::optional<std::vector<Vertex>>& pi) {
  if (!pi) return "iso: none";
  std::string out = "iso:";
  for (std::size_t i = 0; i < pi->size(); ++i) out += " " + std::to_string(i) + "->" + std::to_string((*pi)[i]);
  return out;
}

std::vector<Vertex> parse_perm(const std::string& text, int n) {
  std::vector<Vertex> out;
  if (text.empty()) {
    for (int i = 0; i < n; ++i) out.push_back(i);
    return out;
  }
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw ParseError("bad permutation entry '" + item + "'");
    }
  }
  std::vector<Vertex> sorted = out;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < static_cast<int>(sorted.size()); ++i) {
    if (sorted[i] != i) throw ParseError("'" + text + "' is not a permutation of 0.." + std::to_string(n - 1));
  }
  if (static_cast<int>(out.size()) != n) throw ParseError("permutation has the wrong length");
  return out;
}

StructureMap read_structure_map(const std::string& path, std::size_t size) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open map file '" + path + "'");
  StructureMap rho(size, size);
  const std::regex line_re(R"(\s*(\d+)\s*->\s*(\d+)\s*)");
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::smatch m;
    if (!std::regex_match(line, m, line_re)) {
      throw ParseError(path + ":" + std::to_string(lineno) + ": expected 'i -> j'");
    }
    const std::size_t i = std::stoul(m[1]), j = std::stoul(m[2]);
    if (i >= size || j >= size) throw ParseError(path + ":" + std::to_string(lineno) + ": index out of range");
    if (rho[i] != size) throw ParseError(path + ":" + std::to_string(lineno) + ": " + std::to_string(i) + " mapped twice");
    rho[i] = j;
  }
  if (std::count(rho.begin(), rho.end(), size) > 0) throw ParseError(path + ": map does not cover the universe");
  return rho;
}

class Runner {
 public:
  Runner(const Options& o, std::ostream& out) : o_(o), out_(out), json_(o.format == "json") {}

  int nice_check() {
    const Graph g = read_graph_file(o_.graph_file);
    const auto report = is_nice(g);
    if (json_) {
      emit({{"command", "nice check"},
            {"nice", report.is_nice},
            {"violation", report.violation ? json(to_string(*report.violation)) : json(nullptr)}});
    } else {
      out_ << (report.is_nice ? "nice" : "not nice: " + to_string(*report.violation)) << "\n";
    }
    return report.is_nice ? kOk : kFalse;
  }

  int nice_gen() {
    const auto g = generate_nice(o_.n, o_.seed);
    if (json_) {
      emit({{"command", "nice gen"}, {"n", o_.n}, {"seed", o_.seed}, {"graph", g ? graph_json(*g) : json(nullptr)}});
    } else if (g) {
      out_ << format_graph(*g);
    } else {
      out_ << "no nice graph found within the restart budget\n";
    }
    return g ? kOk : kFalse;
  }

  int gamma_recover() {
    const GraphPtr g = share(read_graph_file(o_.graph_file));
    const Prime p(o_.p);
    Graph recovered, expected;
    std::vector<Vertex> labels;
    if (o_.mode == "symbolic") {
      recovered = gamma_symbolic(g, p);
      expected = *g;
    } else {
      const int depth = o_.depth < 0 ? g->n_vertices() : o_.depth;
      const auto level = QuotientLevel::standard(g, p, depth);
      auto result = gamma_brute(level, o_.brute_cap);
      recovered = std::move(result.graph);
      labels = std::move(result.labels);
      expected = level.graph();
    }
    const auto pi = are_isomorphic(recovered, expected);
    if (json_) {
      json j{{"command", "gamma recover"}, {"mode", o_.mode}, {"p", o_.p}, {"graph", graph_json(recovered)}};
      j["iso"] = pi ? json(*pi) : json(nullptr);
      if (!labels.empty()) j["class_labels"] = labels;
      emit(j);
    } else {
      out_ << format_graph(recovered) << iso_line(pi) << "\n";
    }
    return pi ? kOk : kFalse;
  }

  int quotient_fingerprint() {
    const GraphPtr g = share(read_graph_file(o_.graph_file));
    const int depth = o_.depth < 0 ? g->n_vertices() : o_.depth;
    const InverseSystem system(g, Prime(o_.p), depth);
    const auto f = fingerprint(system, o_.cap);
    if (json_) {
      json levels = json::array();
      for (const auto& l : f.levels) {
        levels.push_back({{"level", l.level},
                          {"order", l.order},
                          {"exponent", l.exponent},
                          {"class", l.nilpotency_class},
                          {"abelianization", l.abelianization},
                          {"conj_classes", l.conjugacy_classes}});
      }
      emit({{"command", "quotient fingerprint"}, {"p", o_.p}, {"levels", levels}});
    } else {
      out_ << "orders";
      for (const auto& l : f.levels) out_ << " " << l.order;
      out_ << "\n" << format_fingerprint(f);
    }
    return kOk;
  }

  int quotient_enumerate() {
    const GraphPtr g = share(read_graph_file(o_.graph_file));
    const auto level = QuotientLevel::standard(g, Prime(o_.p), level_or_all(*g));
    const auto elements = enumerate(level, o_.cap);
    if (json_) {
      json list = json::array();
      for (const auto& a : elements) list.push_back(format_element(a));
      emit({{"command", "quotient enumerate"}, {"order", elements.size()}, {"elements", list}});
    } else {
      for (const auto& a : elements) out_ << format_element(a) << "\n";
    }
    return kOk;
  }

  int quotient_multiply() {
    const GraphPtr g = share(read_graph_file(o_.graph_file));
    const Prime p(o_.p);
    const auto level = QuotientLevel::standard(g, p, level_or_all(*g));
    const auto a = level.project(parse_element(o_.left, g, p));
    const auto b = level.project(parse_element(o_.right, g, p));
    const auto closed = multiply(a, b);
    const auto oracle = oracle_multiply(a, b, level);
    const bool agree = closed == oracle;
    if (json_) {
      emit({{"command", "quotient multiply"},
            {"closed_form", format_element(closed)},
            {"oracle", format_element(oracle)},
            {"agree", agree}});
    } else {
      out_ << "closed-form: " << format_element(closed) << "\noracle: " << format_element(oracle) << "\n";
    }
    return agree ? kOk : kFalse;
  }

  int quotient_center() {
    const GraphPtr g = share(read_graph_file(o_.graph_file));
    const auto level = QuotientLevel::standard(g, Prime(o_.p), level_or_all(*g));
    const auto z = center_brute(level, o_.cap);
    if (json_) {
      json list = json::array();
      for (const auto& a : z) list.push_back(format_element(a));
      emit({{"command", "quotient center"}, {"order", level.order()}, {"center_order", z.size()}, {"center", list}});
    } else {
      out_ << "order " << level.order() << "\ncenter " << z.size() << "\n";
      for (const auto& a : z) out_ << format_element(a) << "\n";
    }
    return kOk;
  }

  int coset_build() {
    const auto m = structure(load_system());
    const auto triples = m.triples();
    if (json_) {
      json universe = json::array();
      for (const auto& c : m.cosets()) {
        universe.push_back({{"level", c.level}, {"side", to_string(c.side)}, {"rep", format_element(c.rep)}});
      }
      emit({{"command", "coset build"}, {"universe", universe}, {"relation", triples}});
    } else {
      out_ << "universe " << m.size() << "\n";
      for (const auto& c : m.cosets()) out_ << c.level << " " << to_string(c.side) << " " << format_element(c.rep) << "\n";
      out_ << "relation " << triples.size() << "\n";
      for (const auto& t : triples) out_ << t[0] << " " << t[1] << " " << t[2] << "\n";
    }
    return kOk;
  }

  int coset_induce() {
    const auto source = load_system();
    const auto perm = parse_perm(o_.perm, source.graph()->n_vertices());
    const auto g = structure(source);
    const auto h = structure(image_system(source, perm));
    const auto rho = induced_structure_map(perm, g, h);
    if (json_) {
      emit({{"command", "coset induce"}, {"map", rho}});
    } else {
      for (std::size_t i = 0; i < rho.size(); ++i) out_ << i << " -> " << rho[i] << "\n";
    }
    return kOk;
  }

  int coset_reconstruct() {
    const auto source = load_system();
    const auto perm = parse_perm(o_.perm, source.graph()->n_vertices());
    const auto g = structure(source);
    const auto h = structure(image_system(source, perm));
    const auto rho = read_structure_map(o_.map_file, g.size());
    if (!is_structure_isomorphism(rho, g, h)) {
      const auto bad = counterexample(rho, g, h);
      if (json_) {
        emit({{"command", "coset reconstruct"}, {"isomorphism", false}, {"counterexample", bad}});
      } else {
        out_ << "counterexample: R(" << bad[0] << "," << bad[1] << "," << bad[2] << ") = "
             << g.related(bad[0], bad[1], bad[2]) << " but R(" << rho[bad[0]] << "," << rho[bad[1]] << ","
             << rho[bad[2]] << ") = " << h.related(rho[bad[0]], rho[bad[1]], rho[bad[2]]) << "\n";
      }
      return kFalse;
    }
    const auto theta = reconstruct_isomorphism(rho, g, h);
    const auto check = check_theta(theta, g, h);
    const auto& top = source.level(source.depth());
    json gens = json::object();
    for (Vertex v : top.vertices()) {
      const auto x = top.project(generator(source.graph(), source.prime(), v));
      const auto image = format_element(theta[g.top_codec().index(x)]);
      if (json_) {
        gens["x" + std::to_string(v)] = image;
      } else {
        out_ << "theta(x" << v << ") = " << image << "\n";
      }
    }
    if (json_) {
      emit({{"command", "coset reconstruct"}, {"isomorphism", check.ok()}, {"theta", gens}});
    } else {
      out_ << "isomorphism: " << (check.ok() ? "yes" : "no") << "\n";
    }
    return check.ok() ? kOk : kFalse;
  }

  int tree_analyze() {
    std::vector<Permutation> gens;
    for (const auto& text : o_.groups) gens.push_back(parse_cycles(text));
    const int depth = o_.depth < 0 ? 3 : o_.depth;
    const auto tree = tree_of_group(gens, depth, o_.cap);
    const auto axioms = subgroup_axioms_check(tree);
    const auto compact = is_compact(tree);
    const auto sizes = tree.level_sizes();
    if (json_) {
      emit({{"command", "tree analyze"},
            {"level_sizes", sizes},
            {"subgroup_axioms", axioms.ok()},
            {"failure", axioms.failure},
            {"compact", compact.compact}});
    } else {
      out_ << "levels";
      for (auto s : sizes) out_ << " " << s;
      out_ << "\nsubgroup axioms: " << (axioms.ok() ? "ok" : "fail (" + axioms.failure + ")") << "\n"
           << "compact: " << (compact.compact ? "yes" : "no") << "\n";
    }
    return axioms.ok() ? kOk : kFalse;
  }

  int tree_orbits() {
    const auto oracle = make_oracle(o_.oracle);
    const auto compact = is_compact(*oracle, std::max(o_.depth, 1));
    json counts = json::array();
    if (!json_) out_ << "oracle " << oracle->name() << "\n";
    for (int n = 1; n <= o_.max_n; ++n) {
      const auto c = orbit_count(*oracle, n, o_.bound);
      counts.push_back({{"n", n}, {"count", c.count}, {"certainty", to_string(c.certainty)}});
      if (!json_) out_ << "orbits " << n << ": " << format_count(c) << "\n";
    }
    const auto r = roelcke_check(*oracle, o_.roelcke_n, o_.bound);
    if (json_) {
      emit({{"command", "tree orbits"},
            {"oracle", oracle->name()},
            {"orbits", counts},
            {"roelcke", {{"n", o_.roelcke_n}, {"count", r.count}, {"certainty", to_string(r.certainty)}}},
            {"compact", compact.compact}});
    } else {
      out_ << "roelcke " << o_.roelcke_n << ": " << format_count(r) << "\n"
           << "compact: " << (compact.compact ? "not refuted" : "no") << "\n";
    }
    return kOk;
  }

  int roundtrip_cmd() {
    const GraphPtr a = share(read_graph_file(o_.graph_file));
    const GraphPtr b = share(read_graph_file(o_.second_file));
    const auto v = roundtrip(a, b, Prime(o_.p), o_.depth, o_.brute_cap);
    if (json_) {
      json j{{"command", "roundtrip"}, {"verdict", v.summary()}, {"verified", v.verified()}};
      if (v.graphs_isomorphic) {
        j["iso"] = *v.witness;
        j["depth"] = v.depth;
      }
      emit(j);
    } else {
      out_ << v.summary() << "\n";
      if (v.graphs_isomorphic) {
        out_ << iso_line(v.witness) << "\ndepth " << v.depth << "\n" << format_fingerprint(v.fingerprint_a);
      }
    }
    return v.verified() ? kOk : kFalse;
  }

 private:
  void emit(const json& j) { out_ << j.dump() << "\n"; }

  int level_or_all(const Graph& g) const { return o_.level < 0 ? g.n_vertices() : o_.level; }

  InverseSystem load_system() const {
    const GraphPtr g = share(read_graph_file(o_.graph_file));
    return InverseSystem(g, Prime(o_.p), o_.depth < 0 ? std::min(2, g->n_vertices()) : o_.depth);
  }

  // The relabelled graph with the relabelled basis, so that level k of the
  // image is the image of level k.
  static InverseSystem image_system(const InverseSystem& s, const std::vector<Vertex>& perm) {
    std::vector<Vertex> order;
    for (Vertex v : s.order()) order.push_back(perm[v]);
    return InverseSystem(share(relabel(*s.graph(), perm)), s.prime(), s.depth(), order);
  }

  CosetStructure structure(const InverseSystem& s) const { return CosetStructure(s, s.depth(), o_.cap); }

  static std::array<std::size_t, 3> counterexample(const StructureMap& rho, const CosetStructure& g,
                                                   const CosetStructure& h) {
    const std::size_t u = g.size();
    for (std::size_t a = 0; a < u; ++a) {
      for (std::size_t b = 0; b < u; ++b) {
        for (std::size_t c = 0; c < u; ++c) {
          if (g.related(a, b, c) != h.related(rho[a], rho[b], rho[c])) return {a, b, c};
        }
      }
    }
    throw PreconditionError("map is not a bijection of the universe");
  }

  const Options& o_;
  std::ostream& out_;
  bool json_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Mekler groups, their profinite completions and coset structures", "profin"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "read options from a TOML/INI file; command-line flags win");
  app.add_option("--cap", o.cap, "enumeration cap")->check(CLI::PositiveNumber);
  app.add_option("--seed", o.seed, "random seed");
  app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json"}));

  auto prime_opt = [&](CLI::App* c) { c->add_option("-p,--prime", o.p, "odd prime"); };
  auto graph_arg = [&](CLI::App* c) { c->add_option("graph", o.graph_file, "graph file")->required(); };

  auto* nice = app.add_subcommand("nice", "niceness of graphs")->require_subcommand(1);
  auto* nice_check = nice->add_subcommand("check", "check a graph file");
  graph_arg(nice_check);
  auto* nice_gen = nice->add_subcommand("gen", "generate a nice graph");
  nice_gen->add_option("-n", o.n, "number of vertices")->required();

  auto* gamma = app.add_subcommand("gamma", "recover a graph from its group")->require_subcommand(1);
  auto* gamma_recover = gamma->add_subcommand("recover", "apply the interpretation");
  graph_arg(gamma_recover);
  prime_opt(gamma_recover);
  gamma_recover->add_option("--mode", o.mode)->check(CLI::IsMember({"symbolic", "brute"}));
  gamma_recover->add_option("--depth", o.depth, "quotient level for brute mode");
  gamma_recover->add_option("--brute-cap", o.brute_cap, "cap on |G/Z| in brute mode");

  auto* quotient = app.add_subcommand("quotient", "finite quotients G/R_n")->require_subcommand(1);
  auto* q_fp = quotient->add_subcommand("fingerprint", "invariants of each level");
  graph_arg(q_fp);
  prime_opt(q_fp);
  q_fp->add_option("--depth", o.depth);
  auto* q_enum = quotient->add_subcommand("enumerate", "list the elements of a level");
  auto* q_mul = quotient->add_subcommand("multiply", "multiply two elements both ways");
  auto* q_center = quotient->add_subcommand("center", "centre by enumeration");
  for (auto* c : {q_enum, q_mul, q_center}) {
    graph_arg(c);
    prime_opt(c);
    c->add_option("--level", o.level);
  }
  q_mul->add_option("a", o.left, "element literal")->required();
  q_mul->add_option("b", o.right, "element literal")->required();

  auto* coset = app.add_subcommand("coset", "coset structures")->require_subcommand(1);
  auto* c_build = coset->add_subcommand("build", "print the universe and relation");
  auto* c_induce = coset->add_subcommand("induce", "structure map induced by a relabelling");
  auto* c_recon = coset->add_subcommand("reconstruct", "reconstruct theta from a structure map");
  for (auto* c : {c_build, c_induce, c_recon}) {
    graph_arg(c);
    prime_opt(c);
    c->add_option("--depth", o.depth);
  }
  for (auto* c : {c_induce, c_recon}) c->add_option("--perm", o.perm, "relabelling, e.g. 1,2,3,4,0");
  c_recon->add_option("--map", o.map_file, "lines 'i -> j'")->required();

  auto* tree = app.add_subcommand("tree", "trees of permutation groups")->require_subcommand(1);
  auto* t_analyze = tree->add_subcommand("analyze", "tree of a generated group");
  t_analyze->add_option("--group", o.groups, "generator in cycle notation (repeatable)")->required();
  t_analyze->add_option("--depth", o.depth);
  auto* t_orbits = tree->add_subcommand("orbits", "orbit and double coset counts of a structure");
  t_orbits->add_option("--oracle", o.oracle)->check(CLI::IsMember({"dlo", "sym", "trivial", "translation"}));
  t_orbits->add_option("--max-n", o.max_n);
  t_orbits->add_option("--bound", o.bound);
  t_orbits->add_option("--roelcke-n", o.roelcke_n);
  t_orbits->add_option("--depth", o.depth);

  auto* rt = app.add_subcommand("roundtrip", "compare two graphs through their groups");
  rt->add_option("a", o.graph_file)->required();
  rt->add_option("b", o.second_file)->required();
  prime_opt(rt);
  rt->add_option("--depth", o.depth);
  rt->add_option("--brute-cap", o.brute_cap, "cap on the quotient order used for fingerprints");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  Runner r(o, out);
  try {
    if (nice_check->parsed()) return r.nice_check();
    if (nice_gen->parsed()) return r.nice_gen();
    if (gamma_recover->parsed()) return r.gamma_recover();
    if (q_fp->parsed()) return r.quotient_fingerprint();
    if (q_enum->parsed()) return r.quotient_enumerate();
    if (q_mul->parsed()) return r.quotient_multiply();
    if (q_center->parsed()) return r.quotient_center();
    if (c_build->parsed()) return r.coset_build();
    if (c_induce->parsed()) return r.coset_induce();
    if (c_recon->parsed()) return r.coset_reconstruct();
    if (t_analyze->parsed()) return r.tree_analyze();
    if (t_orbits->parsed()) return r.tree_orbits();
    if (rt->parsed()) return r.roundtrip_cmd();
  } catch (const PreconditionError& e) {
    err << "precondition: " << e.what() << "\n";
    return kPrecondition;
  } catch (const ResourceError& e) {
    err << "resource cap: " << e.what() << "\n";
    return kResourceCap;
  } catch (const ConsistencyError& e) {
    err << "inconsistent: " << e.what() << "\n";
    return kFalse;
  } catch (const ParseError& e) {
    err << "input: " << e.what() << "\n";
    return kInputError;
  } catch (const std::out_of_range& e) {
    err << "input: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "input: " << e.what() << "\n";
    return kInputError;
  }
  err << "no command\n";
  return kInputError;
}

}  // namespace profin::cli
