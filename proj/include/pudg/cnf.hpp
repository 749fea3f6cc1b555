#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pudg {

// Literals are signed variable indices in [1, num_vars], DIMACS style.
struct Cnf {
  std::uint32_t num_vars = 0;
  std::vector<std::vector<int>> clauses;

  void validate() const;
  // Exactly three literals per clause, over three distinct variables.
  bool is_3cnf() const;
  // Bit i-1 of `assignment` is the value of x_i.
  bool satisfied_by(std::uint64_t assignment) const;
  bool operator==(const Cnf&) const = default;
};

Cnf parse_dimacs(const std::string& text);
std::string to_dimacs(const Cnf& f);

// Equisatisfiable 3CNF: short clauses are expanded over up to two new variables,
// duplicate literals merged, tautological clauses dropped.
Cnf pad_to_3cnf(const Cnf& f);

bool brute_force_sat(const Cnf& f);
std::uint64_t count_models(const Cnf& f);

}  // namespace pudg
