#pragma once

#include "pudg/gxpath/ast.hpp"

#include <string_view>

namespace pudg::gx {

// Concrete syntax.
//   path:  eps  _  label  label^-  "quoted label"  [node]  (path)
//          p*  p{n,m}  p{n}  !p  p / q  p & q  p + q
//   node:  ="c"  !="c"  <p>  <p = q>  <p != q>  !φ  φ & ψ  φ | ψ  (φ)
// Binding, tightest first: postfix, !, /, &, +   (node: !, &, |).
PathPtr parse_path(std::string_view text);
NodePtr parse_node(std::string_view text);
// Node expression if the text parses as one, otherwise a path expression.
Query parse_query(std::string_view text);

}  // namespace pudg::gx
