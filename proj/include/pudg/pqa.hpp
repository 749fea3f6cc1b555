#pragma once

#include "pudg/emdg.hpp"
#include "pudg/gxpath/ast.hpp"

namespace pudg {

struct PqaAnswer {
  Rational probability;
  Rational mass_accounted;
  std::uint64_t candidates_examined = 0;
};

// Posterior probability that the query holds at every node (pair).
PqaAnswer global_pqa(const Pudg& pudg, const gx::Query& q);
// Posterior probability that the query holds at some node (pair).
PqaAnswer existential_pqa(const Pudg& pudg, const gx::Query& q);
// global_pqa > b, strictly.
bool pqa_bound(const Pudg& pudg, const gx::Query& q, const Rational& b);

}  // namespace pudg
