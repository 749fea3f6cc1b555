#pragma once

// Random PUDGs for cleaner cross-checks. Priors are explicit so the exhaustive cleaner
// enumerates the prior support, while the bounded cleaners enumerate the model cosupport.

#include "pudg/emdg.hpp"
#include "pudg/models.hpp"
#include "test_util.hpp"

namespace pudg::testing {

struct BoundedInstance {
  Pudg pudg;
  std::uint64_t bound = 0;  // k_e, c or z
  KDataPrior f;             // node-update only
};

inline DataGraph add_random_edges(Rng& rng, const DataGraph& g, std::size_t count) {
  auto abs = absent_edges(g);
  std::shuffle(abs.begin(), abs.end(), rng);
  DataGraph h = g;
  for (std::size_t i = 0; i < count && i < abs.size(); ++i) h.add_edge(abs[i].from, abs[i].label, abs[i].to);
  return h;
}

inline DataGraph drop_random_edges(Rng& rng, const DataGraph& g, std::size_t count) {
  std::vector<Edge> es(g.edges().begin(), g.edges().end());
  std::shuffle(es.begin(), es.end(), rng);
  DataGraph h = g;
  for (std::size_t i = 0; i < count && i < es.size(); ++i) h.remove_edge(es[i]);
  return h;
}

inline BoundedInstance subset_instance(Rng& rng, std::size_t max_nodes = 6) {
  BoundedInstance in;
  auto obs = random_graph(rng, uniform(rng, 1, max_nodes), {"a", "b"}, {"x", "y"}, 0.2);
  in.bound = uniform(rng, 0, 2);
  std::vector<DataGraph> gs;
  if (coin(rng, 0.7)) gs.push_back(obs);
  std::size_t extra = uniform(rng, 1, 5);
  for (std::size_t i = 0; i < extra; ++i) gs.push_back(add_random_edges(rng, obs, uniform(rng, 1, 3)));
  in.pudg.prior = random_explicit_prior(rng, gs);
  in.pudg.model = edge_deletion_model(Rational(static_cast<long>(uniform(rng, 1, 4)), 5), in.bound);
  in.pudg.observed = obs;
  return in;
}

inline BoundedInstance superset_instance(Rng& rng, std::size_t max_nodes = 6) {
  BoundedInstance in;
  auto obs = random_graph(rng, uniform(rng, 1, max_nodes), {"a", "b"}, {"x", "y"}, 0.2);
  in.bound = uniform(rng, 0, 2);
  bool nodes = coin(rng);
  std::vector<DataGraph> gs;
  if (coin(rng, 0.7)) gs.push_back(obs);
  std::size_t extra = uniform(rng, 1, 5);
  for (std::size_t i = 0; i < extra; ++i) {
    DataGraph h = drop_random_edges(rng, obs, uniform(rng, 1, 3));
    if (nodes && h.node_count() > 1 && coin(rng, 0.4)) h.remove_node(h.max_node_id());
    gs.push_back(h);
  }
  in.pudg.prior = random_explicit_prior(rng, gs);
  in.pudg.model = nodes ? bounded_addition_model(in.bound, {"x", "y"})
                        : edge_addition_model(Rational(static_cast<long>(uniform(rng, 1, 4)), 5), in.bound);
  in.pudg.observed = obs;
  return in;
}

inline BoundedInstance node_update_instance(Rng& rng, std::size_t max_nodes = 6) {
  BoundedInstance in;
  const std::vector<DataValue> vals = {"x", "y", "z", "w"};
  auto obs = random_graph(rng, uniform(rng, 1, max_nodes), {"a"}, {"x", "y", "z"}, 0.2);
  in.bound = uniform(rng, 0, 2);
  in.f.k = uniform(rng, 1, 3);
  for (const auto& c : vals) {
    std::set<DataValue> s;
    if (coin(rng, 0.7)) s.insert(c);
    while (s.size() < in.f.k && coin(rng, 0.7)) s.insert(pick(rng, vals));
    if (s.empty()) s.insert(c);
    in.f.table[c] = s;
  }
  std::vector<DataGraph> gs;
  if (coin(rng, 0.7)) gs.push_back(obs);
  std::size_t extra = uniform(rng, 1, 5);
  auto ids = obs.nodes();
  for (std::size_t i = 0; i < extra; ++i) {
    std::map<NodeId, DataValue> upd;
    std::size_t changes = uniform(rng, 1, 3);
    for (std::size_t j = 0; j < changes; ++j) upd[pick(rng, ids)] = pick(rng, vals);
    gs.push_back(with_data(obs, upd));
  }
  in.pudg.prior = random_explicit_prior(rng, gs);
  in.pudg.model = data_update_model(in.f, in.bound, Rational(static_cast<long>(uniform(rng, 1, 4)), 5));
  in.pudg.observed = obs;
  return in;
}

}  // namespace pudg::testing
