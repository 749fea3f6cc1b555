#include "pudg/pqa.hpp"

#include "pudg/errors.hpp"
#include "pudg/gxpath/eval.hpp"
#include "pudg/parallel.hpp"

namespace pudg {

namespace {

template <class Indicator>
PqaAnswer answer(const Pudg& pudg, Indicator holds) {
  auto post = inverse_realization(pudg);
  if (post.empty()) fail(ErrorKind::NoCandidate, "no clean graph has positive posterior mass; probability undefined");
  std::vector<char> ok(post.size(), 0);
  parallel_for(post.size(), pudg.budget.jobs, [&](std::size_t i) { ok[i] = holds(post[i].first); });
  PqaAnswer a;
  for (std::size_t i = 0; i < post.size(); ++i) {
    a.mass_accounted += post[i].second;
    if (ok[i]) a.probability += post[i].second;
  }
  a.candidates_examined = post.size();
  return a;
}

}  // namespace

PqaAnswer global_pqa(const Pudg& pudg, const gx::Query& q) {
  return answer(pudg, [&](const DataGraph& g) { return gx::satisfies_global(g, q); });
}

PqaAnswer existential_pqa(const Pudg& pudg, const gx::Query& q) {
  return answer(pudg, [&](const DataGraph& g) { return gx::satisfies_somewhere(g, q); });
}

bool pqa_bound(const Pudg& pudg, const gx::Query& q, const Rational& b) { return global_pqa(pudg, q).probability > b; }

}  // namespace pudg
