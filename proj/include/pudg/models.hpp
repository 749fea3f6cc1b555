#pragma once

#include "pudg/emdg.hpp"

namespace pudg {

// Each edge of the clean graph is dropped independently (probability p, or p per label).
// With max_deletions the distribution is conditioned on at most that many drops.
RealizationModel edge_deletion_model(const Rational& p, std::optional<std::uint64_t> max_deletions = std::nullopt);
RealizationModel edge_deletion_model(const std::map<Label, Rational>& p_per_label,
                                     std::optional<std::uint64_t> max_deletions = std::nullopt);
// Every sub-graph on the same nodes equally likely: 1 / 2^|E_G|.
RealizationModel uniform_subset_model();
// Each absent edge is added independently with probability p.
RealizationModel edge_addition_model(const Rational& p, std::optional<std::uint64_t> max_additions = std::nullopt);
// Uniform over super-graphs adding at most c nodes+edges; new nodes take the next free ids
// and a value from `universe`.
RealizationModel bounded_addition_model(std::uint64_t c, std::set<DataValue> universe);
// Each node whose clean value c can be misread (some c' != c has c in f(c')) is misread with
// probability p, uniformly over those c'; at most z misreads.
RealizationModel data_update_model(const KDataPrior& f, std::uint64_t z, const Rational& p);

// Fixed nodes and data; required edges present, forbidden edges (and loops unless allowed)
// absent, every other edge free; uniform over the 2^free graphs.
Prior uniform_structure_prior(const DataGraph& base, const std::set<Edge>& required, const std::set<Edge>& forbidden,
                              bool allow_loops);

}  // namespace pudg
