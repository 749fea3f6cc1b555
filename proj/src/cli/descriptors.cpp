#include "pudg/cli.hpp"
#include "pudg/errors.hpp"
#include "pudg/gxpath/parser.hpp"
#include "pudg/json_io.hpp"
#include "pudg/models.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace pudg::cli {

namespace fs = std::filesystem;

namespace {

const json& need(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) fail(ErrorKind::Format, std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string need_string(const json& j, const char* key) {
  const auto& v = need(j, key);
  if (!v.is_string()) fail(ErrorKind::Format, std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

std::uint64_t need_uint(const json& j, const char* key) {
  const auto& v = need(j, key);
  if (!v.is_number_unsigned()) fail(ErrorKind::Format, std::string("field '") + key + "' must be a non-negative integer");
  return v.get<std::uint64_t>();
}

std::optional<std::uint64_t> opt_uint(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return need_uint(j, key);
}

std::string read_text(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) fail(ErrorKind::Format, "cannot read file '" + p.string() + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path resolve(const fs::path& base, const std::string& ref) {
  fs::path p(ref);
  return p.is_absolute() ? p : base / p;
}

std::set<DataValue> string_set(const json& j, const char* what) {
  if (!j.is_array()) fail(ErrorKind::Format, std::string(what) + " must be an array of strings");
  std::set<DataValue> out;
  for (const auto& x : j) {
    if (!x.is_string() || x.get<std::string>().empty())
      fail(ErrorKind::Format, std::string(what) + " must hold non-empty strings");
    out.insert(x.get<std::string>());
  }
  return out;
}

std::set<Edge> edge_set(const json& j) {
  std::set<Edge> out;
  if (j.is_null()) return out;
  if (!j.is_array()) fail(ErrorKind::Format, "edge lists must be arrays");
  for (const auto& e : j) out.insert(edge_from_json(e));
  return out;
}

KDataPrior kdata_from_json(const json& j) {
  KDataPrior f;
  f.k = need_uint(j, "k");
  const auto& t = need(j, "table");
  if (!t.is_object()) fail(ErrorKind::Format, "k-data-prior table must be an object");
  for (const auto& [c, vals] : t.items()) f.table[c] = string_set(vals, "k-data-prior entries");
  f.validate();
  return f;
}

}  // namespace

json load_json_file(const fs::path& p) {
  try {
    return json::parse(read_text(p));
  } catch (const json::parse_error& e) {
    fail(ErrorKind::Format, "malformed JSON in '" + p.string() + "': " + e.what());
  }
}

DataGraph graph_from_ref(const json& j, const fs::path& base, std::optional<NodeId>* origin) {
  GraphDocument doc;
  if (j.is_string()) {
    fs::path p = resolve(base, j.get<std::string>());
    doc = graph_from_json(load_json_file(p));
  } else {
    doc = graph_from_json(j);
  }
  if (origin) *origin = doc.origin;
  return doc.graph;
}

RealizationModel model_from_json(const json& j) {
  std::string kind = need_string(j, "kind");
  if (kind == "edge_deletion") {
    auto mx = opt_uint(j, "max");
    if (j.contains("p_per_label")) {
      std::map<Label, Rational> per;
      for (const auto& [l, p] : j.at("p_per_label").items()) per[l] = rational_from_json(p);
      return edge_deletion_model(per, mx);
    }
    return edge_deletion_model(rational_from_json(need(j, "p")), mx);
  }
  if (kind == "uniform_subset") return uniform_subset_model();
  if (kind == "edge_addition") return edge_addition_model(rational_from_json(need(j, "p")), opt_uint(j, "max"));
  if (kind == "bounded_addition")
    return bounded_addition_model(need_uint(j, "c"), string_set(need(j, "universe"), "universe"));
  if (kind == "data_update")
    return data_update_model(kdata_from_json(need(j, "f")), need_uint(j, "z"), rational_from_json(need(j, "p")));
  fail(ErrorKind::Format, "unknown model kind '" + kind + "'");
}

Prior prior_from_json(const json& j, const fs::path& base) {
  std::string kind = need_string(j, "kind");
  if (kind == "explicit") {
    const auto& s = need(j, "support");
    if (!s.is_array()) fail(ErrorKind::Format, "support must be an array");
    std::vector<std::pair<DataGraph, Rational>> support;
    for (const auto& e : s) support.emplace_back(graph_from_ref(need(e, "graph"), base), rational_from_json(need(e, "weight")));
    return Prior::explicit_support(std::move(support));
  }
  if (kind == "uniform_structure") {
    bool loops = j.contains("allow_loops") && j.at("allow_loops").get<bool>();
    return uniform_structure_prior(graph_from_ref(need(j, "base"), base),
                                   edge_set(j.value("required", json())), edge_set(j.value("forbidden", json())), loops);
  }
  fail(ErrorKind::Format, "unknown prior kind '" + kind + "'");
}

Budget default_budget() {
  Budget b;
  if (const char* env = std::getenv("PUDG_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (*env == '\0' || *end != '\0' || v == 0) fail(ErrorKind::Format, "PUDG_BUDGET must be a positive integer");
    b.max_candidates = v;
  }
  return b;
}

Budget budget_from_json(const json& j, Budget b) {
  if (j.is_null()) return b;
  if (auto v = opt_uint(j, "max_candidates")) b.max_candidates = *v;
  if (auto v = opt_uint(j, "exponent_cap")) b.exponent_cap = static_cast<unsigned>(*v);
  if (auto v = opt_uint(j, "jobs")) b.jobs = static_cast<unsigned>(*v);
  if (b.max_candidates == 0) fail(ErrorKind::Format, "budget must be positive");
  return b;
}

WeightedRestrictionSet restrictions_from_json(const json& j) {
  if (!j.is_array()) fail(ErrorKind::Format, "restriction set must be an array");
  WeightedRestrictionSet out;
  for (const auto& e : j) {
    Restriction r;
    r.query = gx::parse_query(need_string(e, "query"));
    r.weight = rational_from_json(need(e, "weight"));
    std::string sem = e.value("semantics", std::string("global"));
    if (sem == "origin") {
      r.semantics = Semantics::Origin;
      r.origin = need_uint(e, "origin");
    } else if (sem != "global") {
      fail(ErrorKind::Format, "semantics must be 'global' or 'origin'");
    }
    validate(r);
    out.push_back(std::move(r));
  }
  return out;
}

TransitionCost transition_cost_from_json(const json& j) {
  if (j.is_null() || (j.is_object() && j.value("kind", std::string()) == "uniform")) return TransitionCost::uniform();
  std::map<std::pair<DataValue, DataValue>, std::int64_t> table;
  if (j.contains("table"))
    for (const auto& e : j.at("table")) {
      const auto& c = need(e, "cost");
      if (!c.is_number_integer() || c.get<std::int64_t>() < 0)
        fail(ErrorKind::Format, "transition costs must be non-negative integers");
      table[{need_string(e, "from"), need_string(e, "to")}] = c.get<std::int64_t>();
    }
  std::int64_t fallback = j.value("default", std::int64_t{1});
  return TransitionCost::from_table(string_set(need(j, "universe"), "universe"), std::move(table), fallback);
}

Cnf cnf_from_ref(const json& j, const fs::path& base) {
  if (j.is_string()) return parse_dimacs(read_text(resolve(base, j.get<std::string>())));
  if (j.is_object() && j.contains("dimacs")) return parse_dimacs(need_string(j, "dimacs"));
  fail(ErrorKind::Format, "CNF reference must be a file path or {\"dimacs\": text}");
}

LoadedBundle bundle_from_json(const json& j, const fs::path& base, Budget defaults) {
  if (!j.is_object()) fail(ErrorKind::Format, "bundle must be a JSON object");
  Budget budget = budget_from_json(j.value("budget", json()), defaults);
  if (j.contains("gadget")) {
    const auto& g = j.at("gadget");
    std::string kind = need_string(g, "kind");
    Cnf phi = cnf_from_ref(need(g, "cnf"), base);
    LoadedBundle b{Pudg{}, std::nullopt, std::nullopt};
    if (kind == "sat-subset" || kind == "sat-superset" || kind == "sat-update") {
      SatGadget s = kind == "sat-subset"     ? gadget_sat_subset(phi)
                    : kind == "sat-superset" ? gadget_sat_superset(phi)
                                             : gadget_sat_update(phi);
      b.pudg = std::move(s.pudg);
      b.bound = s.bound;
    } else if (kind == "majsat-subset" || kind == "majsat-superset") {
      MajsatGadget s = kind == "majsat-subset" ? gadget_majsat_subset(phi) : gadget_majsat_superset(phi);
      b.pudg = std::move(s.pudg);
      b.query = gx::Query(j.value("positive", false) ? s.positive_query : s.query);
      b.bound = s.bound;
    } else {
      fail(ErrorKind::Format, "gadget kind '" + kind + "' does not describe a probabilistic instance");
    }
    b.pudg.budget = budget;
    return b;
  }
  LoadedBundle b{Pudg{prior_from_json(need(j, "prior"), base), model_from_json(need(j, "model")),
                      graph_from_ref(need(j, "observed"), base), budget},
                 std::nullopt, std::nullopt};
  if (j.contains("restrictions")) b.pudg.prior = reweight_prior(b.pudg.prior, restrictions_from_json(j.at("restrictions")));
  if (j.contains("query")) b.query = gx::parse_query(need_string(j, "query"));
  if (j.contains("bound")) b.bound = rational_from_json(j.at("bound"));
  return b;
}

}  // namespace pudg::cli
