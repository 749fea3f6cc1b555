#include "pudg/cnf.hpp"

#include "pudg/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <sstream>

namespace pudg {

void Cnf::validate() const {
  if (num_vars > 62) fail(ErrorKind::Precondition, "at most 62 variables are supported");
  for (const auto& c : clauses)
    for (int l : c)
      if (l == 0 || static_cast<std::uint32_t>(std::abs(l)) > num_vars)
        fail(ErrorKind::Format, "literal " + std::to_string(l) + " outside 1.." + std::to_string(num_vars));
}

bool Cnf::is_3cnf() const {
  for (const auto& c : clauses) {
    if (c.size() != 3) return false;
    std::set<int> vars;
    for (int l : c) vars.insert(std::abs(l));
    if (vars.size() != 3) return false;
  }
  return true;
}

bool Cnf::satisfied_by(std::uint64_t a) const {
  for (const auto& c : clauses) {
    bool sat = false;
    for (int l : c) {
      bool v = (a >> (std::abs(l) - 1)) & 1u;
      if (v == (l > 0)) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

Cnf parse_dimacs(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  Cnf f;
  bool header = false;
  std::size_t declared_clauses = 0;
  std::vector<int> cur;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first) || first[0] == 'c' || first[0] == '%') continue;
    if (first == "p") {
      std::string fmt;
      long long nv = -1, nc = -1;
      if (!(ls >> fmt >> nv >> nc) || fmt != "cnf" || nv < 0 || nc < 0)
        fail(ErrorKind::Format, "bad DIMACS header: " + line);
      f.num_vars = static_cast<std::uint32_t>(nv);
      declared_clauses = static_cast<std::size_t>(nc);
      header = true;
      continue;
    }
    if (!header) fail(ErrorKind::Format, "DIMACS clause before the 'p cnf' header");
    std::istringstream toks(line);
    std::string tok;
    while (toks >> tok) {
      char* end = nullptr;
      long v = std::strtol(tok.c_str(), &end, 10);
      if (*end != '\0') fail(ErrorKind::Format, "bad DIMACS literal '" + tok + "'");
      if (v == 0) {
        f.clauses.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(static_cast<int>(v));
      }
    }
  }
  if (!header) fail(ErrorKind::Format, "missing 'p cnf' header");
  if (!cur.empty()) f.clauses.push_back(cur);
  if (f.clauses.size() != declared_clauses)
    fail(ErrorKind::Format, "header declares " + std::to_string(declared_clauses) + " clauses, found " +
                                std::to_string(f.clauses.size()));
  f.validate();
  return f;
}

std::string to_dimacs(const Cnf& f) {
  std::ostringstream out;
  out << "p cnf " << f.num_vars << ' ' << f.clauses.size() << '\n';
  for (const auto& c : f.clauses) {
    for (int l : c) out << l << ' ';
    out << "0\n";
  }
  return out.str();
}

Cnf pad_to_3cnf(const Cnf& f) {
  f.validate();
  Cnf out;
  out.num_vars = f.num_vars;
  const int y = static_cast<int>(f.num_vars) + 1, z = y + 1;
  bool used_pad = false;
  for (const auto& c : f.clauses) {
    std::set<int> lits(c.begin(), c.end());
    bool taut = std::any_of(lits.begin(), lits.end(), [&](int l) { return lits.count(-l) != 0; });
    if (taut) continue;
    std::vector<int> base(lits.begin(), lits.end());
    if (base.size() > 3) fail(ErrorKind::Unsupported, "clauses longer than 3 literals are not split");
    // Every sign pattern over the missing slots: the conjunction is equivalent to `base`.
    std::vector<int> pads;
    if (base.size() <= 2) pads.push_back(y);
    if (base.size() <= 1) pads.push_back(z);
    if (base.empty()) pads.push_back(z + 1);
    used_pad = used_pad || !pads.empty();
    for (std::uint32_t mask = 0; mask < (1u << pads.size()); ++mask) {
      std::vector<int> cl = base;
      for (std::size_t i = 0; i < pads.size(); ++i) cl.push_back((mask >> i) & 1u ? -pads[i] : pads[i]);
      std::sort(cl.begin(), cl.end(), [](int a, int b) { return std::abs(a) < std::abs(b); });
      out.clauses.push_back(std::move(cl));
    }
  }
  if (out.clauses.empty()) {
    // Valid formula: keep one satisfiable clause so the instance is non-trivial.
    out.clauses.push_back({y, z, z + 1});
    used_pad = true;
  }
  if (used_pad) {
    std::uint32_t hi = 0;
    for (const auto& c : out.clauses)
      for (int l : c) hi = std::max<std::uint32_t>(hi, static_cast<std::uint32_t>(std::abs(l)));
    out.num_vars = std::max(out.num_vars, hi);
  }
  return out;
}

std::uint64_t count_models(const Cnf& f) {
  f.validate();
  if (f.num_vars > 30) fail(ErrorKind::Budget, "model counting by enumeration is capped at 30 variables");
  std::uint64_t n = 0;
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << f.num_vars); ++a) n += f.satisfied_by(a);
  return n;
}

bool brute_force_sat(const Cnf& f) {
  f.validate();
  if (f.num_vars > 30) fail(ErrorKind::Budget, "SAT by enumeration is capped at 30 variables");
  for (std::uint64_t a = 0; a < (std::uint64_t{1} << f.num_vars); ++a)
    if (f.satisfied_by(a)) return true;
  return false;
}

}  // namespace pudg
