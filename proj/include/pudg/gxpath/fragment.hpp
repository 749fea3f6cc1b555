#pragma once

#include "pudg/gxpath/ast.hpp"

#include <cstdint>
#include <set>

namespace pudg::gx {

// Ordered from most to least restrictive.
enum class Fragment { PosCoreRegStarFree, PosCoreReg, PosReg, Reg };

const char* fragment_name(Fragment f);
Fragment fragment_of(const Query& q);
// f is at least as restrictive as `bound`.
inline bool within(Fragment f, Fragment bound) { return static_cast<int>(f) <= static_cast<int>(bound); }

std::set<DataValue> mentioned_data_values(const Query& q);
bool has_star(const Query& q);
bool has_path_equality(const Query& q);     // <p = q>
bool has_path_comparison(const Query& q);   // <p = q> or <p != q>

// Certificate size for star-free positive expressions.
std::uint64_t c_bound(const Query& q);

}  // namespace pudg::gx
