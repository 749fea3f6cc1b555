#pragma once

#include "pudg/datagraph.hpp"
#include "pudg/rational.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace pudg {

enum class PiClass { Subset, Superset, Update, NodeUpdate, General };
const char* class_name(PiClass c);
PiClass parse_class(const std::string& s);

struct Budget {
  std::uint64_t max_candidates = 1'000'000;
  // Largest exponent for unbounded subset enumeration (2^cap candidates).
  unsigned exponent_cap = 20;
  unsigned jobs = 1;
};

// Candidate clean values per observed value; values absent from the table map to themselves.
struct KDataPrior {
  std::size_t k = 1;
  std::map<DataValue, std::set<DataValue>> table;
  std::set<DataValue> candidates(const DataValue& observed) const;
  void validate() const;
  bool operator==(const KDataPrior&) const = default;
};

struct ModelParams {
  // Subset: how many edges the observer may have dropped.
  std::optional<std::uint64_t> max_added_edges;
  bool node_deletions = false;
  // Superset: how many nodes+edges the observer may have added.
  std::optional<std::uint64_t> max_removed;
  bool node_additions = false;
  // Update / NodeUpdate.
  std::optional<KDataPrior> data_prior;
  std::uint64_t max_data_updates = 0;
  std::uint64_t max_relabels = 0;
};

using ModelWeight = std::function<Rational(const DataGraph& clean, const DataGraph& observed)>;

struct RealizationModel {
  PiClass klass = PiClass::General;
  ModelWeight weight;
  ModelParams params;
  std::string name;
};

using SupportEnumerator = std::function<std::vector<DataGraph>(const DataGraph& observed, const Budget& budget)>;
using PriorWeight = std::function<Rational(const DataGraph&)>;

class Prior {
 public:
  // Weights must be positive and sum to exactly 1; graphs must be distinct.
  static Prior explicit_support(std::vector<std::pair<DataGraph, Rational>> support);
  // The enumerator lists every positive-weight graph that can realize into the observation.
  static Prior intensional(PriorWeight weight, SupportEnumerator enumerate = {});

  Rational weight(const DataGraph& g) const;
  bool is_explicit() const;
  bool has_enumerator() const;
  std::vector<DataGraph> enumerate(const DataGraph& observed, const Budget& budget) const;
  const std::vector<std::pair<DataGraph, Rational>>& support() const;
  // Same support, weights multiplied by lambda (lambda > 0).
  Prior scaled(const Rational& lambda) const;

 private:
  struct State;
  std::shared_ptr<const State> s_;
};

struct Pudg {
  Prior prior;
  RealizationModel model;
  DataGraph observed;
  Budget budget;
};

// Structural property of the class between a clean and an observed graph.
bool class_relation_holds(PiClass klass, const DataGraph& clean, const DataGraph& observed);

std::vector<DataGraph> cosupport(const RealizationModel& model, const DataGraph& observed, const Budget& budget);
BigInt cosupport_size_bound(PiClass klass, const ModelParams& params, const DataGraph& observed);

struct Candidate {
  DataGraph graph;
  Rational score;  // I(G) * R(G)(G')
};
// Positive-score candidates in canonical order.
std::vector<Candidate> scored_candidates(const Pudg& pudg);
// Normalized posterior; empty when no candidate has positive score.
std::vector<std::pair<DataGraph, Rational>> inverse_realization(const Pudg& pudg);

bool validate_class(const RealizationModel& model, const std::vector<DataGraph>& cleans,
                    const std::vector<DataGraph>& observeds);
inline bool validate_class(const RealizationModel& model, const std::vector<DataGraph>& samples) {
  return validate_class(model, samples, samples);
}

}  // namespace pudg
