#pragma once

#include "pudg/cleaning.hpp"
#include "pudg/constraints.hpp"
#include "pudg/emdg.hpp"
#include "pudg/errors.hpp"
#include "pudg/gadgets.hpp"

#include <filesystem>
#include <iosfwd>
#include <json.hpp>
#include <string>

namespace pudg::cli {

using nlohmann::json;

enum ExitCode : int {
  Ok = 0,
  OtherError = 1,
  ParseError = 2,
  NoCandidateError = 3,
  BudgetError = 4,
  InfeasibleError = 5,
};

int exit_code_for(ErrorKind k);

// Runs the command line; all output goes to the given streams.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Descriptor loading. Relative file references resolve against `base`.
json load_json_file(const std::filesystem::path& p);
DataGraph graph_from_ref(const json& j, const std::filesystem::path& base, std::optional<NodeId>* origin = nullptr);
RealizationModel model_from_json(const json& j);
Prior prior_from_json(const json& j, const std::filesystem::path& base);
Budget budget_from_json(const json& j, Budget defaults);
WeightedRestrictionSet restrictions_from_json(const json& j);
TransitionCost transition_cost_from_json(const json& j);
Cnf cnf_from_ref(const json& j, const std::filesystem::path& base);

struct LoadedBundle {
  Pudg pudg;
  std::optional<gx::Query> query;  // gadgets that ship their own query
  std::optional<Rational> bound;
};
LoadedBundle bundle_from_json(const json& j, const std::filesystem::path& base, Budget defaults);

// Budget defaults, honouring the PUDG_BUDGET environment variable.
Budget default_budget();

}  // namespace pudg::cli
