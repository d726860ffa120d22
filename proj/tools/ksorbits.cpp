// ksorbits: command-line front end.
// Exit codes: 0 success / checks pass, 1 a verification failed, 2 unsupported
// request or bad input.

#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "ksorbits/klv_hecke.hpp"

using namespace ksorbits;
using nlohmann::ordered_json;

namespace {

struct Config {
  std::string pair;
  std::string kind;
  std::string ordering;
  bool all_orderings = false;
  std::uint64_t seed = 0;
  std::string format = "text";
  std::string out;
  std::string from, to;
  std::string subset = "all";
};

void emit(const Config& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw UsageError("cannot write " + cfg.out);
  f << text;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

void require_format(const Config& cfg, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (cfg.format == a) return;
  throw UsageError("format '" + cfg.format + "' is not available for this command");
}

ordered_json ordering_json(const Ordering& o) { return ordered_json(o); }

SymmetricPairModel model_of(const Config& cfg) {
  if (cfg.pair.empty()) throw UsageError("--pair is required");
  return build_pair_model(parse_pair_kind(cfg.pair));
}

GroupKind kind_of(const Config& cfg) {
  if (cfg.kind.empty()) throw UsageError("--kind is required");
  GroupKind k = parse_group_kind(cfg.kind);
  validate(k);
  return k;
}

// Sp accepts alpha/beta (beta the long root, alpha its neighbour).
int parse_kind_root(const GroupKind& k, int rank, const std::string& tok) {
  if (k.family == Family::Sp && (tok == "β" || tok == "beta" || tok == "b")) return rank;
  if (k.family == Family::Sp && rank >= 2 && (tok == "α" || tok == "alpha" || tok == "a")) return rank - 1;
  int v = 0;
  try {
    std::size_t used = 0;
    v = std::stoi(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
  } catch (const std::exception&) {
    throw UsageError("bad simple root '" + tok + "'");
  }
  if (v < 1 || v > rank) throw UsageError("simple root index out of range: " + tok);
  return v;
}

Ordering parse_kind_ordering(const GroupKind& k, int rank, const std::string& text) {
  Ordering o;
  std::stringstream ss(text);
  for (std::string tok; std::getline(ss, tok, ',');)
    if (!tok.empty()) o.push_back(parse_kind_root(k, rank, tok));
  validate_ordering(o, rank);
  return o;
}

std::vector<Ordering> orderings_for(const Config& cfg, int rank, const std::function<Ordering(const std::string&)>& parse) {
  if (cfg.all_orderings) return all_orderings(rank);
  if (cfg.ordering.empty()) return {standard_ordering(rank)};
  return {parse(cfg.ordering)};
}

// ---------------------------------------------------------------------------

int cmd_orbits(const Config& cfg) {
  require_format(cfg, {"text", "json", "csv"});
  auto m = model_of(cfg);
  auto g = closure_order(m, cfg.seed);
  std::ostringstream os;
  if (cfg.format == "json") {
    ordered_json j;
    j["pair"] = to_string(m.kind());
    j["count"] = g.nodes.size();
    j["orbits"] = ordered_json::array();
    for (std::size_t i = 0; i < g.nodes.size(); ++i)
      j["orbits"].push_back({{"clan", g.nodes[i].to_string()},
                             {"length", g.length[i]},
                             {"dimension", g.dimension[i]},
                             {"closed", g.is_closed(i)},
                             {"open", g.is_open(i)}});
    os << dump(j);
  } else {
    const char* sep = cfg.format == "csv" ? "," : "\t";
    os << "clan" << sep << "length" << sep << "dimension" << sep << "closed" << sep << "open\n";
    for (std::size_t i = 0; i < g.nodes.size(); ++i)
      os << g.nodes[i].to_string() << sep << g.length[i] << sep << g.dimension[i] << sep
         << (g.is_closed(i) ? "yes" : "no") << sep << (g.is_open(i) ? "yes" : "no") << "\n";
  }
  emit(cfg, os.str());
  return 0;
}

// Boxed: the Q_S of the given ordering. Shadow-boxed: Q_S of some other
// ordering that this one does not produce.
int cmd_graph(const Config& cfg) {
  require_format(cfg, {"dot", "json", "text"});
  auto m = model_of(cfg);
  auto g = closure_order(m, cfg.seed);
  DotOptions opt;
  std::optional<Ordering> ord;
  if (!cfg.ordering.empty()) {
    ord = m.parse_ordering(cfg.ordering);
    for (const auto& c : qs_assignment(m, g, *ord).table) opt.boxed.insert(c);
    for (const auto& o : all_orderings(m.rank()))
      for (const auto& c : qs_assignment(m, g, o).table)
        if (!opt.boxed.count(c)) opt.double_boxed.insert(c);
  }
  std::ostringstream os;
  if (cfg.format == "dot") {
    os << to_dot(g, opt);
  } else if (cfg.format == "text") {
    for (const auto& l : edge_lines(g)) os << l << "\n";
  } else {
    ordered_json j;
    j["pair"] = to_string(m.kind());
    j["ordering"] = ord ? ordering_json(*ord) : ordered_json(nullptr);
    j["nodes"] = ordered_json::array();
    for (std::size_t i = 0; i < g.nodes.size(); ++i)
      j["nodes"].push_back({{"clan", g.nodes[i].to_string()},
                            {"dimension", g.dimension[i]},
                            {"boxed", opt.boxed.count(g.nodes[i]) > 0},
                            {"shadow_boxed", opt.double_boxed.count(g.nodes[i]) > 0}});
    j["edges"] = ordered_json::array();
    for (const auto& e : g.weak_edges)
      j["edges"].push_back({{"from", g.nodes[e.from].to_string()},
                            {"to", g.nodes[e.to].to_string()},
                            {"style", "solid"},
                            {"root", e.root},
                            {"label", root_label(m.kind(), e.root)}});
    for (const auto& [a, b] : g.dashed_edges)
      j["edges"].push_back({{"from", g.nodes[a].to_string()},
                            {"to", g.nodes[b].to_string()},
                            {"style", "dashed"},
                            {"root", nullptr},
                            {"label", ""}});
    os << dump(j);
  }
  emit(cfg, os.str());
  return 0;
}

int cmd_verify(const Config& cfg) {
  require_format(cfg, {"text", "json"});
  auto m = model_of(cfg);
  auto g = closure_order(m, cfg.seed);
  std::optional<KLVTable> klv;
  if (m.family() == PairFamily::A) klv = klv_polynomials(g);
  bool all_pass = true;
  ordered_json runs = ordered_json::array();
  std::ostringstream text;
  for (const auto& o : orderings_for(cfg, m.rank(), [&](const std::string& s) { return m.parse_ordering(s); })) {
    auto rep = verify_correspondence(m, g, o);
    ordered_json r;
    r["ordering"] = ordering_json(o);
    r["dimension_checks"] = rep.dimension_checks;
    r["dimension_failures"] = rep.dimension_failures;
    r["closure_checks"] = rep.closure_checks;
    r["closure_failures"] = rep.closure_failures;
    r["consistency_failures"] = rep.consistency_failures;
    r["injective"] = rep.injective;
    std::vector<std::string> failures = rep.failures;
    bool pass = rep.passed();
    int klv_checks = 0, klv_failures = 0;
    if (klv) {
      auto qs = qs_assignment(m, g, o);
      for (std::uint32_t s = 0; s < qs.table.size(); ++s)
        for (std::uint32_t t = 0; t < qs.table.size(); ++t) {
          const auto& P = klv->at(qs.at(t), qs.at(s));
          const bool want_one = (t & ~s) == 0;
          ++klv_checks;
          if (want_one ? !(P == QPolynomial::constant(1)) : !P.is_zero()) {
            ++klv_failures;
            failures.push_back("P(" + qs.at(t).to_string() + "," + qs.at(s).to_string() + ") = " + P.to_string());
          }
        }
      auto cmp = compare_with_torus(m, g, *klv, o);
      r["klv_checks"] = klv_checks;
      r["klv_failures"] = klv_failures;
      r["torus_entries"] = cmp.entries;
      r["torus_equal"] = cmp.equal;
      failures.insert(failures.end(), cmp.mismatches.begin(), cmp.mismatches.end());
      pass = pass && klv_failures == 0 && cmp.passed();
    } else {
      r["klv_checks"] = nullptr;
      r["klv_failures"] = nullptr;
      r["torus_entries"] = nullptr;
      r["torus_equal"] = nullptr;
    }
    r["qs"] = ordered_json::array();
    for (const auto& e : rep.entries)
      r["qs"].push_back({{"subset", e.subset.to_string()}, {"clan", e.clan.to_string()}, {"dimension", e.dim}});
    r["passed"] = pass;
    r["failures"] = failures;
    runs.push_back(r);
    all_pass = all_pass && pass;
    text << (pass ? "PASS" : "FAIL") << " ordering " << to_string(o) << ": dim " << rep.dimension_checks - rep.dimension_failures
         << "/" << rep.dimension_checks << ", closure " << rep.closure_checks - rep.closure_failures << "/"
         << rep.closure_checks;
    if (klv) text << ", klv " << klv_checks - klv_failures << "/" << klv_checks << ", torus " << r["torus_equal"].get<int>()
                  << "/" << r["torus_entries"].get<int>();
    text << ", Q_Pi = " << rep.entries.back().clan.to_string() << "\n";
    for (const auto& f : failures) text << "  " << f << "\n";
  }
  if (cfg.format == "json") {
    ordered_json j;
    j["pair"] = to_string(m.kind());
    j["passed"] = all_pass;
    j["orderings"] = runs;
    emit(cfg, dump(j));
  } else {
    emit(cfg, text.str());
  }
  return all_pass ? 0 : 1;
}

int cmd_klv(const Config& cfg) {
  require_format(cfg, {"text", "json", "csv"});
  auto m = model_of(cfg);
  if (m.family() != PairFamily::A)
    throw NotImplementedError("KLV polynomials for family C need nontrivial local systems; not implemented");
  auto g = closure_order(m, cfg.seed);
  auto tab = klv_polynomials(g);
  if (cfg.from.empty() != cfg.to.empty()) throw UsageError("--from and --to go together");
  std::vector<std::pair<int, int>> pairs;
  if (!cfg.from.empty()) {
    pairs.push_back({g.index_of(m.parse_clan(cfg.from)), g.index_of(m.parse_clan(cfg.to))});
  } else {
    for (std::size_t a = 0; a < g.nodes.size(); ++a)
      for (std::size_t b = 0; b < g.nodes.size(); ++b)
        if (!tab.P[a][b].is_zero()) pairs.push_back({static_cast<int>(a), static_cast<int>(b)});
  }
  std::ostringstream os;
  if (cfg.format == "json") {
    ordered_json j;
    j["pair"] = to_string(m.kind());
    j["entries"] = ordered_json::array();
    for (auto [a, b] : pairs)
      j["entries"].push_back({{"psi", g.nodes[a].to_string()},
                              {"gamma", g.nodes[b].to_string()},
                              {"polynomial", tab.P[a][b].to_string()},
                              {"coefficients", tab.P[a][b].coefficients()}});
    os << dump(j);
  } else if (cfg.format == "csv" && cfg.from.empty()) {
    os << klv_csv(tab);
  } else {
    for (auto [a, b] : pairs)
      os << "P(" << g.nodes[a].to_string() << ", " << g.nodes[b].to_string() << ") = " << tab.P[a][b].to_string() << "\n";
  }
  emit(cfg, os.str());
  return 0;
}

std::vector<SimpleSubset> subsets_for(const Config& cfg, const GroupKind& k, int rank) {
  if (cfg.subset == "all") return all_subsets(rank, standard_ordering(rank));
  if (cfg.subset == "Pi" || cfg.subset == "Π") return {SimpleSubset(full_mask(rank), standard_ordering(rank))};
  std::vector<int> members;
  std::stringstream ss(cfg.subset);
  for (std::string tok; std::getline(ss, tok, ',');)
    if (!tok.empty() && tok != "empty") members.push_back(parse_kind_root(k, rank, tok));
  return {SimpleSubset::from_members(members, standard_ordering(rank))};
}

int cmd_atgroups(const Config& cfg) {
  require_format(cfg, {"text", "json"});
  const GroupKind k = kind_of(cfg);
  const RootDatum d = build_root_datum(k);
  const auto subsets = subsets_for(cfg, k, d.rank);
  std::ostringstream os;
  if (cfg.format == "json") {
    ordered_json j;
    j["kind"] = to_string(k);
    j["parameters"] = xi_T(d).size();
    j["rows"] = ordered_json::array();
    for (const auto& s : subsets) {
      auto a = component_group_AT(d, s);
      j["rows"].push_back({{"subset", s.to_string()},
                           {"group", a.to_string()},
                           {"order", a.order()},
                           {"invariant_factors", a.invariant_factors()}});
    }
    os << dump(j);
  } else {
    os << "subset\tA_T\n";
    for (const auto& s : subsets) os << s.to_string() << "\t" << component_group_AT(d, s).to_string() << "\n";
    os << "parameters in Xi(T, g_-1): " << xi_T(d).size() << "\n";
  }
  emit(cfg, os.str());
  return 0;
}

int cmd_phi(const Config& cfg) {
  require_format(cfg, {"text", "json"});
  const GroupKind k = kind_of(cfg);
  const RootDatum d = build_root_datum(k);
  ordered_json results = ordered_json::array();
  std::ostringstream text;
  for (const auto& o : orderings_for(cfg, d.rank, [&](const std::string& s) { return parse_kind_ordering(k, d.rank, s); })) {
    auto rep = phi_surjectivity(k, o);
    ordered_json r;
    r["ordering"] = ordering_json(o);
    r["surjective"] = rep.surjective;
    r["witnesses"] = ordered_json::array();
    for (const auto& w : rep.witnesses) r["witnesses"].push_back(w.to_string());
    r["rows"] = ordered_json::array();
    for (const auto& row : rep.rows)
      r["rows"].push_back(
          {{"subset", row.subset.to_string()}, {"at", row.at.to_string()}, {"ak", row.ak}, {"covered", row.covered}});
    results.push_back(r);
    text << to_string(k) << " ordering " << to_string(o) << ": " << (rep.surjective ? "surjective" : "not surjective");
    if (!rep.witnesses.empty()) {
      text << ", witnesses";
      for (const auto& w : rep.witnesses) text << " " << w.to_string();
    }
    text << "\n";
    for (const auto& row : rep.rows)
      text << "  " << row.subset.to_string() << "\tA_T " << row.at.to_string() << "\tA_K " << row.ak << "\t"
           << (row.covered ? "covered" : "missed") << "\n";
  }
  if (cfg.format == "json") {
    ordered_json j;
    j["kind"] = to_string(k);
    j["results"] = results;
    emit(cfg, dump(j));
  } else {
    emit(cfg, text.str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"K-orbits on flag varieties attached to ordered subsets of simple roots"};
  app.require_subcommand(1);
  Config cfg;

  auto add_pair = [&](CLI::App* sub) { sub->add_option("--pair", cfg.pair, "A:p,q or C:n")->required(); };
  auto add_kind = [&](CLI::App* sub) { sub->add_option("--kind", cfg.kind, "GL:n, SL:n, Sp:n, ...")->required(); };
  auto add_ordering = [&](CLI::App* sub) {
    sub->add_option("--ordering", cfg.ordering, "comma-separated simple roots, e.g. 2,1,3 or β,α");
    sub->add_flag("--all-orderings", cfg.all_orderings, "run every ordering");
  };

  auto* orbits = app.add_subcommand("orbits", "list orbits with length and dimension");
  add_pair(orbits);
  auto* graph = app.add_subcommand("graph", "closure graph (DOT, JSON or edge list)");
  add_pair(graph);
  graph->add_option("--ordering", cfg.ordering, "box the Q_S of this ordering");
  auto* verify = app.add_subcommand("verify", "check dimension, closure, KLV and torus comparison");
  add_pair(verify);
  add_ordering(verify);
  auto* klv = app.add_subcommand("klv", "KLV polynomials (family A)");
  add_pair(klv);
  klv->add_option("--from", cfg.from, "smaller orbit psi");
  klv->add_option("--to", cfg.to, "larger orbit gamma");
  auto* atgroups = app.add_subcommand("atgroups", "component groups A_T(x_S)");
  add_kind(atgroups);
  atgroups->add_option("--subset", cfg.subset, "all, Pi, or comma-separated roots");
  auto* phi = app.add_subcommand("phi", "surjectivity of the parameter map");
  add_kind(phi);
  add_ordering(phi);

  // Format defaults differ per command and are filled in after parsing.
  for (auto* sub : {orbits, graph, verify, klv, atgroups, phi}) {
    sub->add_option("--seed", cfg.seed, "seed for random pencil samples");
    sub->add_option("--format", cfg.format, "output format");
    sub->add_option("--out", cfg.out, "write to this file instead of stdout");
  }
  cfg.format.clear();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  try {
    if (cfg.format.empty()) cfg.format = *graph ? "dot" : "text";
    if (*orbits) return cmd_orbits(cfg);
    if (*graph) return cmd_graph(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*klv) return cmd_klv(cfg);
    if (*atgroups) return cmd_atgroups(cfg);
    if (*phi) return cmd_phi(cfg);
  } catch (const NotImplementedError& e) {
    std::cerr << "not implemented: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const InternalError& e) {
    std::cerr << "self-check failed: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
