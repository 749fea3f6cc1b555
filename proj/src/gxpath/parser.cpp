#include "pudg/gxpath/parser.hpp"

#include "pudg/errors.hpp"

#include <cctype>
#include <vector>

namespace pudg::gx {

namespace {

enum class Tok { Word, String, Sym, End };

struct Token {
  Tok type;
  std::string text;
  std::size_t pos;
};

[[noreturn]] void syntax(const std::string& msg, std::size_t pos) {
  throw Error(ErrorKind::Parse, msg + " at position " + std::to_string(pos), pos);
}

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Tok::Word, std::string(s.substr(i, j - i)), i});
      i = j;
      continue;
    }
    if (c == '"') {
      std::string v;
      std::size_t j = i + 1;
      for (;;) {
        if (j >= s.size()) syntax("unterminated string", i);
        if (s[j] == '\\') {
          if (j + 1 >= s.size()) syntax("dangling escape", j);
          v += s[j + 1];
          j += 2;
        } else if (s[j] == '"') {
          ++j;
          break;
        } else {
          v += s[j++];
        }
      }
      if (v.empty()) syntax("empty quoted string", i);
      out.push_back({Tok::String, v, i});
      i = j;
      continue;
    }
    if (c == '!' && i + 1 < s.size() && s[i + 1] == '=') {
      out.push_back({Tok::Sym, "!=", i});
      i += 2;
      continue;
    }
    if (c == '^') {
      if (i + 1 < s.size() && s[i + 1] == '-') {
        out.push_back({Tok::Sym, "^-", i});
        i += 2;
        continue;
      }
      syntax("expected '^-'", i);
    }
    static const std::string singles = "+&/!*{},()[]<>=|";
    if (singles.find(c) != std::string::npos) {
      out.push_back({Tok::Sym, std::string(1, c), i});
      ++i;
      continue;
    }
    syntax(std::string("unexpected character '") + c + "'", i);
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  PathPtr whole_path() {
    auto p = path_union();
    expect_end();
    return p;
  }
  NodePtr whole_node() {
    auto n = node_or();
    expect_end();
    return n;
  }

 private:
  std::vector<Token> toks_;
  std::size_t at_ = 0;

  const Token& peek() const { return toks_[at_]; }
  bool is_sym(const char* s) const { return peek().type == Tok::Sym && peek().text == s; }
  bool accept(const char* s) {
    if (!is_sym(s)) return false;
    ++at_;
    return true;
  }
  void expect(const char* s) {
    if (!accept(s)) syntax(std::string("expected '") + s + "'" + found(), peek().pos);
  }
  std::string found() const {
    if (peek().type == Tok::End) return ", found end of input";
    return ", found '" + peek().text + "'";
  }
  void expect_end() {
    if (peek().type != Tok::End) syntax("unexpected trailing input" + found(), peek().pos);
  }

  PathPtr path_union() {
    auto p = path_inter();
    while (accept("+")) p = path::unite(p, path_inter());
    return p;
  }
  PathPtr path_inter() {
    auto p = path_concat();
    while (accept("&")) p = path::intersect(p, path_concat());
    return p;
  }
  PathPtr path_concat() {
    auto p = path_compl();
    while (accept("/")) p = path::concat(p, path_compl());
    return p;
  }
  PathPtr path_compl() {
    if (accept("!")) return path::complement(path_compl());
    return path_postfix();
  }
  unsigned number() {
    const Token& t = peek();
    if (t.type != Tok::Word) syntax("expected a number" + found(), t.pos);
    for (char c : t.text)
      if (!std::isdigit(static_cast<unsigned char>(c))) syntax("expected a number" + found(), t.pos);
    if (t.text.size() > 9) syntax("repetition bound too large", t.pos);
    ++at_;
    return static_cast<unsigned>(std::stoul(t.text));
  }
  PathPtr path_postfix() {
    auto p = path_atom();
    for (;;) {
      if (accept("*")) {
        p = path::star(p);
      } else if (is_sym("{")) {
        std::size_t pos = peek().pos;
        ++at_;
        unsigned lo = number(), hi = lo;
        if (accept(",")) hi = number();
        expect("}");
        if (lo > hi) syntax("repetition {n,m} requires n <= m", pos);
        p = path::repeat(p, lo, hi);
      } else {
        return p;
      }
    }
  }
  PathPtr path_atom() {
    const Token t = peek();
    if (t.type == Tok::Word || t.type == Tok::String) {
      ++at_;
      if (t.type == Tok::Word && t.text == "eps") return path::eps();
      if (t.type == Tok::Word && t.text == "_") return path::any();
      if (accept("^-")) return path::inverse(t.text);
      return path::label(t.text);
    }
    if (accept("[")) {
      auto n = node_or();
      expect("]");
      return path::test(n);
    }
    if (accept("(")) {
      auto p = path_union();
      expect(")");
      return p;
    }
    syntax("expected a path expression" + found(), t.pos);
  }

  NodePtr node_or() {
    auto n = node_and();
    while (accept("|")) n = node::disj(n, node_and());
    return n;
  }
  NodePtr node_and() {
    auto n = node_not();
    while (accept("&")) n = node::conj(n, node_not());
    return n;
  }
  NodePtr node_not() {
    if (accept("!")) return node::negate(node_not());
    return node_atom();
  }
  DataValue constant() {
    const Token& t = peek();
    if (t.type != Tok::Word && t.type != Tok::String) syntax("expected a data constant" + found(), t.pos);
    ++at_;
    return t.text;
  }
  NodePtr node_atom() {
    if (accept("=")) return node::data_eq(constant());
    if (accept("!=")) return node::data_neq(constant());
    if (accept("<")) {
      auto p = path_union();
      NodePtr n;
      if (accept("=")) {
        n = node::path_eq(p, path_union());
      } else if (accept("!=")) {
        n = node::path_neq(p, path_union());
      } else {
        n = node::exists(p);
      }
      expect(">");
      return n;
    }
    if (accept("(")) {
      auto n = node_or();
      expect(")");
      return n;
    }
    syntax("expected a node expression" + found(), peek().pos);
  }
};

}  // namespace

PathPtr parse_path(std::string_view text) { return Parser(text).whole_path(); }
NodePtr parse_node(std::string_view text) { return Parser(text).whole_node(); }

Query parse_query(std::string_view text) {
  std::optional<Error> node_err;
  try {
    return Query{parse_node(text)};
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Parse) throw;
    node_err = e;
  }
  try {
    return Query{parse_path(text)};
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Parse) throw;
    if (node_err->position().value_or(0) > e.position().value_or(0)) throw *node_err;
    throw;
  }
}

}  // namespace pudg::gx
