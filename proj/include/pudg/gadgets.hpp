#pragma once

#include "pudg/cnf.hpp"
#include "pudg/emdg.hpp"
#include "pudg/gxpath/ast.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace pudg {

// Mass of the (n variables, m clauses) cell when cells are listed along anti-diagonals.
Rational diagonal_weight(std::uint64_t n, std::uint64_t m);
// Number of formula+assignment graphs sharing one cell: 2 * 2^n * (8 * C(n,3))^m.
BigInt formula_graph_count(std::uint64_t n, std::uint64_t m);

struct SatGadget {
  Pudg pudg;
  Rational bound;            // clean_bound(pudg, bound) == SAT(formula)
  Rational score_threshold;  // unnormalized score of an unsatisfying candidate
  Cnf formula;
};

// Subset observer that forgets the assignment edges.
SatGadget gadget_sat_subset(const Cnf& phi);
// Superset observer that adds every possible assignment edge.
SatGadget gadget_sat_superset(const Cnf& phi);
// Update observer that relabels chosen assignment edges as unchosen.
SatGadget gadget_sat_update(const Cnf& phi);

// Assignment-graph encoding used by the SAT gadgets (exposed for tests).
enum class SatEncoding { Subset, Superset, Update };
DataGraph encode_sat_graph(const Cnf& phi, std::uint64_t assignment, bool first_label, SatEncoding enc);
std::optional<std::pair<Cnf, std::uint64_t>> decode_sat_graph(const DataGraph& g, SatEncoding enc, bool* first_label);

struct RepairGadget {
  DataGraph graph;
  gx::NodePtr query;
};
// A data repair satisfying query globally exists iff phi is satisfiable.
RepairGadget gadget_isorepair(const Cnf& phi);

// Directed graph on nodes 1..n.
struct Digraph {
  std::size_t n = 0;
  std::vector<std::pair<std::size_t, std::size_t>> arcs;
};
struct HamPathGadget {
  DataGraph graph;
  NodeId origin;
  gx::NodePtr query;
};
// A repair at `start` exists iff g has a Hamiltonian path starting at `start`.
HamPathGadget gadget_hampath(const Digraph& g, std::size_t start);
bool has_hamiltonian_path(const Digraph& g, std::size_t start);

struct MajsatGadget {
  Pudg pudg;
  gx::NodePtr query;           // uses negation
  gx::NodePtr positive_query;  // positive variant
  Rational bound;              // pqa_bound(pudg, query, bound) == MAJSAT(phi)
};
MajsatGadget gadget_majsat_subset(const Cnf& phi);
MajsatGadget gadget_majsat_superset(const Cnf& phi);

}  // namespace pudg
