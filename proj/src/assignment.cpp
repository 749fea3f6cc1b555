#include "pudg/assignment.hpp"

#include "pudg/errors.hpp"

namespace pudg {

namespace {

// Shortest-augmenting-path Hungarian method written against an ordered abelian group
// (G::op, G::inv_op, G::unit, operator<).
template <class T, class G>
std::optional<std::vector<std::size_t>> hungarian(const std::vector<std::vector<std::optional<T>>>& a) {
  const std::size_t n = a.size();
  for (const auto& row : a)
    if (row.size() != n) fail(ErrorKind::Precondition, "assignment matrix must be square");
  std::vector<T> u(n + 1, G::unit()), v(n + 1, G::unit());
  std::vector<std::size_t> p(n + 1, 0), way(n + 1, 0);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::vector<std::optional<T>> minv(n + 1);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      std::size_t i0 = p[j0], j1 = 0;
      std::optional<T> delta;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        if (const auto& c = a[i0 - 1][j - 1]) {
          T cur = G::inv_op(G::inv_op(*c, u[i0]), v[j]);
          if (!minv[j] || cur < *minv[j]) minv[j] = cur, way[j] = j0;
        }
        if (minv[j] && (!delta || *minv[j] < *delta)) delta = minv[j], j1 = j;
      }
      if (!delta) return std::nullopt;
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] = G::op(u[p[j]], *delta);
          v[j] = G::inv_op(v[j], *delta);
        } else if (minv[j]) {
          minv[j] = G::inv_op(*minv[j], *delta);
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }
  std::vector<std::size_t> col(n);
  for (std::size_t j = 1; j <= n; ++j) col[p[j] - 1] = j - 1;
  return col;
}

struct Additive {
  static std::int64_t unit() { return 0; }
  static std::int64_t op(std::int64_t a, std::int64_t b) { return a + b; }
  static std::int64_t inv_op(std::int64_t a, std::int64_t b) { return a - b; }
};

struct Multiplicative {
  static Rational unit() { return 1; }
  static Rational op(const Rational& a, const Rational& b) { return a * b; }
  static Rational inv_op(const Rational& a, const Rational& b) { return a / b; }
};

}  // namespace

std::optional<std::vector<std::size_t>> min_cost_assignment(
    const std::vector<std::vector<std::optional<std::int64_t>>>& cost) {
  return hungarian<std::int64_t, Additive>(cost);
}

std::optional<std::vector<std::size_t>> max_product_assignment(const std::vector<std::vector<Rational>>& weight) {
  // Minimizing the product of 1/w maximizes the product of w.
  std::vector<std::vector<std::optional<Rational>>> cost(weight.size());
  for (std::size_t i = 0; i < weight.size(); ++i)
    for (const auto& w : weight[i]) {
      if (w < 0) fail(ErrorKind::Precondition, "assignment weights must be non-negative");
      cost[i].push_back(w == 0 ? std::nullopt : std::optional<Rational>(1 / w));
    }
  return hungarian<Rational, Multiplicative>(cost);
}

}  // namespace pudg
