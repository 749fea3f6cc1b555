#include "pudg/hitting_set.hpp"

#include "pudg/errors.hpp"

#include <algorithm>

namespace pudg {

namespace {

struct Instance {
  const std::vector<std::vector<std::size_t>>& family;
  std::vector<std::vector<std::size_t>> hits;  // element -> family members containing it
};

std::vector<std::size_t> greedy(const Instance& in) {
  std::size_t m = in.family.size();
  std::vector<char> covered(m, 0);
  std::size_t left = m;
  std::vector<std::size_t> chosen;
  while (left) {
    std::size_t best = 0, best_gain = 0;
    for (std::size_t e = 0; e < in.hits.size(); ++e) {
      std::size_t gain = 0;
      for (auto s : in.hits[e]) gain += !covered[s];
      if (gain > best_gain) best = e, best_gain = gain;
    }
    chosen.push_back(best);
    for (auto s : in.hits[best])
      if (!covered[s]) covered[s] = 1, --left;
  }
  return chosen;
}

struct Search {
  const Instance& in;
  std::vector<std::size_t> best;
  std::vector<std::size_t> cur;
  std::vector<int> cover_count;

  // Greedy packing of pairwise disjoint uncovered sets: each needs its own element.
  std::size_t lower_bound() const {
    std::vector<char> blocked(in.hits.size(), 0);
    std::size_t lb = 0;
    for (std::size_t s = 0; s < in.family.size(); ++s) {
      if (cover_count[s]) continue;
      bool disjoint = std::none_of(in.family[s].begin(), in.family[s].end(), [&](auto e) { return blocked[e]; });
      if (!disjoint) continue;
      ++lb;
      for (auto e : in.family[s]) blocked[e] = 1;
    }
    return lb;
  }

  void run() {
    std::size_t pick = in.family.size();
    for (std::size_t s = 0; s < in.family.size(); ++s)
      if (!cover_count[s] && (pick == in.family.size() || in.family[s].size() < in.family[pick].size())) pick = s;
    if (pick == in.family.size()) {
      if (cur.size() < best.size()) best = cur;
      return;
    }
    if (cur.size() + lower_bound() >= best.size()) return;
    std::vector<std::size_t> order = in.family[pick];
    std::sort(order.begin(), order.end(), [&](auto a, auto b) {
      return in.hits[a].size() != in.hits[b].size() ? in.hits[a].size() > in.hits[b].size() : a < b;
    });
    for (auto e : order) {
      cur.push_back(e);
      for (auto s : in.hits[e]) ++cover_count[s];
      run();
      for (auto s : in.hits[e]) --cover_count[s];
      cur.pop_back();
    }
  }
};

}  // namespace

HittingSetResult min_hitting_set(const std::vector<std::vector<std::size_t>>& family, std::size_t universe,
                                 std::size_t exact_cap) {
  Instance in{family, std::vector<std::vector<std::size_t>>(universe)};
  std::size_t total = 0;
  for (std::size_t s = 0; s < family.size(); ++s) {
    if (family[s].empty()) fail(ErrorKind::Infeasible, "a family member is empty and cannot be hit");
    for (auto e : family[s]) {
      if (e >= universe) fail(ErrorKind::Precondition, "element outside the universe");
      in.hits[e].push_back(s);
    }
    total += family[s].size();
  }
  HittingSetResult r;
  r.chosen = greedy(in);
  if (total <= exact_cap) {
    Search s{in, r.chosen, {}, std::vector<int>(family.size(), 0)};
    s.run();
    r.chosen = s.best;
  } else {
    r.exact = false;
  }
  std::sort(r.chosen.begin(), r.chosen.end());
  return r;
}

}  // namespace pudg
