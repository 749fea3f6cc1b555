#include "pudg/cli.hpp"
#include "pudg/errors.hpp"
#include "pudg/gxpath/eval.hpp"
#include "pudg/gxpath/fragment.hpp"
#include "pudg/gxpath/parser.hpp"
#include "pudg/gxpath/transforms.hpp"
#include "pudg/json_io.hpp"
#include "pudg/pqa.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace pudg::cli {

namespace fs = std::filesystem;

int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse:
    case ErrorKind::Format:
    case ErrorKind::Alphabet:
    case ErrorKind::DanglingEndpoint:
    case ErrorKind::DuplicateNode:
    case ErrorKind::UnknownLabel: return ParseError;
    case ErrorKind::NoCandidate: return NoCandidateError;
    case ErrorKind::Budget: return BudgetError;
    case ErrorKind::Infeasible: return InfeasibleError;
    default: return OtherError;
  }
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Format, "cannot read file '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Inline text, or the contents of a file when prefixed with '@'.
gx::Query read_query(const std::string& text) {
  if (!text.empty() && text[0] == '@') {
    std::string body = read_file(text.substr(1));
    while (!body.empty() && (body.back() == '\n' || body.back() == '\r')) body.pop_back();
    return gx::parse_query(body);
  }
  return gx::parse_query(text);
}

json rational_json(const Rational& r) { return to_string(r); }

json probability_fields(const std::optional<Rational>& p) {
  json j;
  j["probability"] = p ? json(to_string(*p)) : json(nullptr);
  j["probability_decimal"] = p ? json(to_double(*p)) : json(nullptr);
  return j;
}

json metadata(std::optional<Rational> score, std::optional<Rational> probability, std::optional<std::int64_t> cost,
              std::uint64_t examined, bool exact) {
  json m = probability_fields(probability);
  m["score"] = score ? rational_json(*score) : json(nullptr);
  m["cost"] = cost ? json(*cost) : json(nullptr);
  m["candidates_examined"] = examined;
  m["exact"] = exact;
  return m;
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

gx::NodePtr need_node(const gx::Query& q, const char* why) {
  if (auto n = std::get_if<gx::NodePtr>(&q)) return *n;
  fail(ErrorKind::Precondition, std::string(why) + " needs a node expression");
}

gx::PathPtr need_path(const gx::Query& q, const char* why) {
  if (auto p = std::get_if<gx::PathPtr>(&q)) return *p;
  fail(ErrorKind::Precondition, std::string(why) + " needs a path expression");
}

NodeId node_field(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_unsigned())
    fail(ErrorKind::Format, std::string("field '") + key + "' must be a node id");
  return j.at(key).get<NodeId>();
}

NodeId parse_node_key(const std::string& s) {
  try {
    std::size_t used = 0;
    unsigned long long v = std::stoull(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  fail(ErrorKind::Format, "'" + s + "' is not a node id");
}

// ---------------------------------------------------------------- eval
struct EvalArgs {
  std::string graph, query;
  std::optional<NodeId> origin;
  std::vector<NodeId> pair;
  bool all = false;
};

int cmd_eval(const EvalArgs& a, std::ostream& out) {
  std::optional<NodeId> file_origin;
  DataGraph g = graph_from_ref(json(a.graph), fs::current_path(), &file_origin);
  gx::Query q = read_query(a.query);
  json j;
  if (a.all) {
    j["global"] = gx::satisfies_global(g, q);
  } else if (a.origin) {
    j["origin"] = *a.origin;
    j["satisfied"] = gx::satisfies_at(g, *a.origin, need_node(q, "--origin"));
  } else if (!a.pair.empty()) {
    j["pair"] = a.pair;
    j["satisfied"] = gx::satisfies_pair(g, a.pair[0], a.pair[1], need_path(q, "--pair"));
  } else if (auto n = std::get_if<gx::NodePtr>(&q)) {
    j["type"] = "node";
    j["nodes"] = gx::eval_node(g, *n);
  } else {
    j["type"] = "path";
    j["pairs"] = json::array();
    for (auto [u, v] : gx::eval_path(g, std::get<gx::PathPtr>(q))) j["pairs"].push_back({u, v});
  }
  emit(out, j);
  return Ok;
}

// ---------------------------------------------------------------- clean
struct CleanArgs {
  std::string bundle, solver = "auto";
  std::optional<std::string> bound;
  std::optional<std::uint64_t> k;
};

int clean_specialized(const json& j, const std::string& solver, std::ostream& out, Budget budget) {
  const fs::path base = fs::current_path();
  DataGraph g = graph_from_ref(j.at("graph"), base);
  json r;
  if (solver == "matching") {
    std::vector<DataValue> values = j.at("values").get<std::vector<DataValue>>();
    std::map<NodeId, DataValue> known;
    if (j.contains("known"))
      for (const auto& [k, v] : j.at("known").items()) known[parse_node_key(k)] = v.get<DataValue>();
    std::map<std::pair<DataValue, NodeId>, Rational> w;
    for (const auto& [val, row] : j.at("weights").items())
      for (const auto& [k, x] : row.items()) w[{val, parse_node_key(k)}] = rational_from_json(x);
    auto res = clean_fixed_assignment(g, values, known, [&](const DataValue& d, NodeId v) {
      auto it = w.find({d, v});
      return it == w.end() ? Rational(0) : it->second;
    });
    r["graph"] = graph_to_json(res.graph);
    r["metadata"] = metadata(res.product, std::nullopt, std::nullopt, 0, true);
  } else if (solver == "cardinality") {
    CardinalityTarget t;
    for (const auto& [c, n] : j.at("target").items()) t[c] = n.get<std::uint64_t>();
    auto res = clean_cardinality(g, t, transition_cost_from_json(j.value("cost", json())));
    r["graph"] = graph_to_json(res.graph);
    r["metadata"] = metadata(std::nullopt, std::nullopt, res.cost, 0, true);
  } else if (solver == "hitting") {
    std::map<NodeId, std::set<DataValue>> allowed;
    for (const auto& [k, xs] : j.at("allowed").items()) allowed[parse_node_key(k)] = xs.get<std::set<DataValue>>();
    auto res = clean_min_distinct(g, allowed, j.value("exact_cap", std::size_t{64}));
    r["graph"] = graph_to_json(res.graph);
    r["values"] = res.values;
    r["metadata"] = metadata(std::nullopt, std::nullopt, static_cast<std::int64_t>(res.values.size()), 0, res.exact);
  } else if (solver == "origin-expr") {
    NodeId o = node_field(j, "origin");
    auto nu = need_node(gx::parse_query(j.at("query").get<std::string>()), "origin-expr");
    auto res = clean_origin_expression(g, o, nu, transition_cost_from_json(j.value("cost", json())), budget);
    r["graph"] = graph_to_json(res.graph, o);
    r["metadata"] = metadata(std::nullopt, std::nullopt, res.cost, 0, true);
  } else if (solver == "repair") {
    std::optional<NodeId> o;
    if (j.contains("origin")) o = node_field(j, "origin");
    auto nu = need_node(gx::parse_query(j.at("query").get<std::string>()), "repair");
    auto res = isomorphic_repair(g, nu, o, budget);
    r["found"] = res.has_value();
    r["graph"] = res ? graph_to_json(*res, o) : json(nullptr);
  } else {
    fail(ErrorKind::Format, "unknown solver '" + solver + "'");
  }
  emit(out, r);
  return Ok;
}

int cmd_clean(const CleanArgs& a, std::ostream& out, Budget defaults) {
  json j = load_json_file(a.bundle);
  fs::path base = fs::path(a.bundle).parent_path();
  if (j.is_object() && j.contains("solver")) {
    std::string s = j.at("solver").get<std::string>();
    if (a.solver != "auto" && a.solver != s)
      fail(ErrorKind::Precondition, "instance is for solver '" + s + "', not '" + a.solver + "'");
    fs::path old = fs::current_path();
    // Relative graph references inside the instance resolve against its directory.
    if (!base.empty()) fs::current_path(base);
    try {
      int rc = clean_specialized(j, s, out, budget_from_json(j.value("budget", json()), defaults));
      fs::current_path(old);
      return rc;
    } catch (...) {
      fs::current_path(old);
      throw;
    }
  }
  LoadedBundle b = bundle_from_json(j, base, defaults);
  std::optional<Rational> bound = a.bound ? std::optional<Rational>(parse_rational(*a.bound)) : b.bound;
  json r;
  if (a.bound) {
    r["bound"] = to_string(*bound);
    r["decision"] = clean_bound(b.pudg, *bound);
    emit(out, r);
    return Ok;
  }
  CleaningResult res;
  if (a.solver == "auto" || a.solver == "exhaustive") {
    res = clean(b.pudg);
  } else {
    if (!a.k) fail(ErrorKind::Precondition, "bounded solvers need --k");
    if (a.solver == "subset-bounded") {
      res = clean_subset_bounded(b.pudg, *a.k);
    } else if (a.solver == "superset-bounded") {
      res = clean_superset_bounded(b.pudg, *a.k);
    } else if (a.solver == "node-update") {
      if (!b.pudg.model.params.data_prior) fail(ErrorKind::Precondition, "model has no k-data-prior");
      res = clean_node_update(b.pudg, *b.pudg.model.params.data_prior, *a.k);
    } else {
      fail(ErrorKind::Precondition, "solver '" + a.solver + "' needs a specialized instance file");
    }
  }
  r["graph"] = graph_to_json(res.best);
  r["metadata"] = metadata(res.score, res.probability, std::nullopt, res.candidates_examined, true);
  if (bound && res.probability) {
    r["bound"] = to_string(*bound);
    r["decision"] = *res.probability > *bound;
  }
  emit(out, r);
  return Ok;
}

// ---------------------------------------------------------------- pqa
struct PqaArgs {
  std::string bundle, mode = "global";
  std::optional<std::string> query, bound;
};

int cmd_pqa(const PqaArgs& a, std::ostream& out, Budget defaults) {
  json j = load_json_file(a.bundle);
  LoadedBundle b = bundle_from_json(j, fs::path(a.bundle).parent_path(), defaults);
  std::optional<gx::Query> q = a.query ? std::optional<gx::Query>(read_query(*a.query)) : b.query;
  if (!q) fail(ErrorKind::Precondition, "no query given (use --query)");
  PqaAnswer ans;
  if (a.mode == "global")
    ans = global_pqa(b.pudg, *q);
  else if (a.mode == "existential")
    ans = existential_pqa(b.pudg, *q);
  else
    fail(ErrorKind::Format, "mode must be 'global' or 'existential'");
  json r = probability_fields(ans.probability);
  r["mode"] = a.mode;
  r["query"] = gx::to_string(*q);
  r["mass_accounted"] = to_string(ans.mass_accounted);
  r["candidates_examined"] = ans.candidates_examined;
  std::optional<Rational> bound = a.bound ? std::optional<Rational>(parse_rational(*a.bound)) : b.bound;
  if (bound) {
    r["bound"] = to_string(*bound);
    r["decision"] = ans.probability > *bound;
  }
  emit(out, r);
  return Ok;
}

// ---------------------------------------------------------------- transform
struct TransformArgs {
  std::string graph, query, kind;
  std::optional<NodeId> origin;
  std::vector<NodeId> pair;
};

int cmd_transform(const TransformArgs& a, std::ostream& out) {
  std::optional<NodeId> file_origin;
  DataGraph g = graph_from_ref(json(a.graph), fs::current_path(), &file_origin);
  gx::Query q = read_query(a.query);
  std::optional<NodeId> origin = a.origin ? a.origin : file_origin;
  json r;
  auto put = [&](const DataGraph& h, std::optional<NodeId> o, const gx::Query& nq) {
    r["graph"] = graph_to_json(h, o);
    r["query"] = gx::to_string(nq);
    r["fragment"] = gx::fragment_name(gx::fragment_of(nq));
  };
  if (a.kind == "star-elim") {
    auto s = gx::eliminate_star(g, q);
    put(s.graph, origin, s.query);
  } else if (a.kind == "to-origin") {
    auto s = gx::to_origin(g, need_node(q, "to-origin"));
    put(s.graph, s.origin, s.query);
  } else if (a.kind == "to-global") {
    if (!origin) fail(ErrorKind::Precondition, "to-global needs --origin");
    auto s = gx::to_global(g, *origin, need_node(q, "to-global"));
    put(s.graph, std::nullopt, s.query);
  } else if (a.kind == "bipointed") {
    auto s = gx::path_to_bipointed(g, need_path(q, "bipointed"));
    put(s.graph, std::nullopt, s.query);
    r["pair"] = {s.u, s.v};
  } else if (a.kind == "path-to-global") {
    if (a.pair.size() != 2) fail(ErrorKind::Precondition, "path-to-global needs --pair u v");
    auto s = gx::path_to_global(g, a.pair[0], a.pair[1], need_path(q, "path-to-global"));
    put(s.graph, std::nullopt, s.query);
  } else {
    fail(ErrorKind::Format, "unknown transform '" + a.kind + "'");
  }
  emit(out, r);
  return Ok;
}

// ---------------------------------------------------------------- gadget
struct GadgetArgs {
  std::string kind;
  std::optional<std::string> cnf, digraph, out;
};

int cmd_gadget(const GadgetArgs& a, std::ostream& out) {
  json r;
  auto need_cnf = [&]() {
    if (!a.cnf) fail(ErrorKind::Precondition, "--cnf is required for this gadget");
    return parse_dimacs(read_file(*a.cnf));
  };
  if (a.kind == "sat-subset" || a.kind == "sat-superset" || a.kind == "sat-update") {
    Cnf phi = need_cnf();
    SatGadget s = a.kind == "sat-subset"     ? gadget_sat_subset(phi)
                  : a.kind == "sat-superset" ? gadget_sat_superset(phi)
                                             : gadget_sat_update(phi);
    r["gadget"] = {{"kind", a.kind}, {"cnf", {{"dimacs", to_dimacs(phi)}}}};
    r["observed"] = graph_to_json(s.pudg.observed);
    r["bound"] = to_string(s.bound);
    r["score_threshold"] = to_string(s.score_threshold);
  } else if (a.kind == "majsat-subset" || a.kind == "majsat-superset") {
    Cnf phi = need_cnf();
    MajsatGadget s = a.kind == "majsat-subset" ? gadget_majsat_subset(phi) : gadget_majsat_superset(phi);
    r["gadget"] = {{"kind", a.kind}, {"cnf", {{"dimacs", to_dimacs(phi)}}}};
    r["observed"] = graph_to_json(s.pudg.observed);
    r["query"] = gx::to_string(s.query);
    r["positive_query"] = gx::to_string(s.positive_query);
    r["bound"] = to_string(s.bound);
  } else if (a.kind == "isorepair") {
    RepairGadget s = gadget_isorepair(need_cnf());
    r = {{"solver", "repair"}, {"graph", graph_to_json(s.graph)}, {"query", gx::to_string(s.query)}};
  } else if (a.kind == "hampath") {
    if (!a.digraph) fail(ErrorKind::Precondition, "--digraph is required for hampath");
    json d = load_json_file(*a.digraph);
    Digraph dg;
    dg.n = d.at("n").get<std::size_t>();
    for (const auto& arc : d.at("arcs")) dg.arcs.emplace_back(arc.at(0).get<std::size_t>(), arc.at(1).get<std::size_t>());
    HamPathGadget s = gadget_hampath(dg, d.at("start").get<std::size_t>());
    r = {{"solver", "repair"},
         {"graph", graph_to_json(s.graph)},
         {"origin", s.origin},
         {"query", gx::to_string(s.query)}};
  } else {
    fail(ErrorKind::Format, "unknown gadget kind '" + a.kind + "'");
  }
  if (a.out) {
    std::ofstream f(*a.out, std::ios::binary);
    if (!f) fail(ErrorKind::Format, "cannot write '" + *a.out + "'");
    emit(f, r);
  } else {
    emit(out, r);
  }
  return Ok;
}

// ---------------------------------------------------------------- validate
struct ValidateArgs {
  std::optional<std::string> bundle, graph, klass;
};

int cmd_validate(const ValidateArgs& a, std::ostream& out, Budget defaults) {
  json r;
  if (a.graph) {
    graph_from_ref(json(*a.graph), fs::current_path());
    r["graph"] = "ok";
  }
  if (a.bundle) {
    json j = load_json_file(*a.bundle);
    if (j.is_object() && j.contains("solver")) {
      r["bundle"] = "ok";
    } else {
      LoadedBundle b = bundle_from_json(j, fs::path(*a.bundle).parent_path(), defaults);
      RealizationModel m = b.pudg.model;
      if (a.klass) m.klass = parse_class(*a.klass);
      auto cands = scored_candidates(b.pudg);
      std::vector<DataGraph> cleans;
      for (auto& c : cands) cleans.push_back(std::move(c.graph));
      bool ok = validate_class(m, cleans, {b.pudg.observed});
      r["bundle"] = "ok";
      r["class"] = class_name(m.klass);
      r["candidates"] = cleans.size();
      r["valid"] = ok;
      emit(out, r);
      return ok ? Ok : OtherError;
    }
  }
  if (!a.graph && !a.bundle) fail(ErrorKind::Precondition, "validate needs --bundle or --graph");
  r["valid"] = true;
  emit(out, r);
  return Ok;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cleaning and query answering over probabilistic unclean data-graphs", "pudg"};
  app.require_subcommand(1);
  unsigned jobs = 1;
  app.add_option("--jobs", jobs, "Worker threads for candidate scoring")->check(CLI::PositiveNumber);

  EvalArgs ea;
  auto* eval = app.add_subcommand("eval", "Evaluate a query on a graph");
  eval->add_option("--graph", ea.graph, "Graph JSON file")->required();
  eval->add_option("--query", ea.query, "Query text, or @file")->required();
  auto* eo = eval->add_option("--origin", ea.origin, "Check a node expression at one node");
  auto* ep = eval->add_option("--pair", ea.pair, "Check a path expression on one pair")->expected(2);
  auto* eall = eval->add_flag("--all", ea.all, "Check global satisfaction");
  eo->excludes(ep)->excludes(eall);
  ep->excludes(eall);

  CleanArgs ca;
  auto* cl = app.add_subcommand("clean", "Find the most likely clean graph");
  cl->add_option("--bundle", ca.bundle, "Instance bundle JSON")->required();
  cl->add_option("--solver", ca.solver, "auto|exhaustive|subset-bounded|superset-bounded|node-update|"
                                        "matching|cardinality|hitting|origin-expr|repair");
  cl->add_option("--bound", ca.bound, "Decide whether the best probability exceeds this rational");
  cl->add_option("--k", ca.k, "Edit budget for the bounded solvers");

  PqaArgs pa;
  auto* pq = app.add_subcommand("pqa", "Probabilistic query answering");
  pq->add_option("--bundle", pa.bundle, "Instance bundle JSON")->required();
  pq->add_option("--query", pa.query, "Query text, or @file");
  pq->add_option("--mode", pa.mode, "global|existential");
  pq->add_option("--bound", pa.bound, "Decide whether the probability exceeds this rational");

  TransformArgs ta;
  auto* tr = app.add_subcommand("transform", "Apply a satisfaction-preserving transform");
  tr->add_option("--graph", ta.graph, "Graph JSON file")->required();
  tr->add_option("--query", ta.query, "Query text, or @file")->required();
  tr->add_option("--kind", ta.kind, "star-elim|to-origin|to-global|bipointed|path-to-global")->required();
  tr->add_option("--origin", ta.origin, "Origin node for to-global");
  tr->add_option("--pair", ta.pair, "Node pair for path-to-global")->expected(2);

  GadgetArgs ga;
  auto* gd = app.add_subcommand("gadget", "Emit a hardness-reduction instance");
  gd->add_option("--kind", ga.kind,
                 "sat-subset|sat-superset|sat-update|isorepair|hampath|majsat-subset|majsat-superset")
      ->required();
  gd->add_option("--cnf", ga.cnf, "DIMACS CNF file");
  gd->add_option("--digraph", ga.digraph, "Digraph JSON {n, arcs, start} for hampath");
  gd->add_option("--out", ga.out, "Write the bundle here instead of stdout");

  ValidateArgs va;
  auto* vd = app.add_subcommand("validate", "Check files and the model's declared class");
  vd->add_option("--bundle", va.bundle, "Instance bundle JSON");
  vd->add_option("--graph", va.graph, "Graph JSON file");
  vd->add_option("--class", va.klass, "Check against this class instead of the declared one");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? Ok : ParseError;
  }

  try {
    Budget budget = default_budget();
    budget.jobs = jobs;
    if (eval->parsed()) return cmd_eval(ea, out);
    if (cl->parsed()) return cmd_clean(ca, out, budget);
    if (pq->parsed()) return cmd_pqa(pa, out, budget);
    if (tr->parsed()) return cmd_transform(ta, out);
    if (gd->parsed()) return cmd_gadget(ga, out);
    if (vd->parsed()) return cmd_validate(va, out, budget);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const json::exception& e) {
    err << "error: malformed input: " << e.what() << '\n';
    return ParseError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return OtherError;
  }
  return OtherError;
}

}  // namespace pudg::cli
