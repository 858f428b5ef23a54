#pragma once

#include <cctype>
#include <set>
#include <string>
#include <vector>

#include "term.hpp"

namespace itt {

enum class Tt { Ident, Pragma, LParen, RParen, Colon, Semi, Comma, Arrow, FatArrow, Define, Proj, Eof };

struct Token {
  Tt t;
  std::string text;
  int nat = 0;  // Proj index
  Span span;
};

inline bool ident_start(char c) { return std::isalpha((unsigned char)c) || c == '_'; }
inline bool ident_cont(char c) { return std::isalnum((unsigned char)c) || c == '_' || c == '\''; }

// The surface language is plain ASCII; anything else outside a comment is a
// lexical error.
inline std::vector<Token> tokenize(const std::string& src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto here = [&](int len) { return Span{line, col, len}; };
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; k++) {
      if (src[i + k] == '\n') {
        line++;
        col = 1;
      } else {
        col++;
      }
    }
    i += n;
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      advance(1);
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '-') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if ((unsigned char)c >= 0x80)
      throw Error(ErrorKind::Lex, Diagnostic{Severity::Error, "illegal character (non-ASCII)", "", here(1)});
    if (ident_start(c)) {
      size_t j = i;
      while (j < src.size() && ident_cont(src[j])) j++;
      Token t{Tt::Ident, src.substr(i, j - i), 0, here((int)(j - i))};
      out.push_back(t);
      advance(j - i);
      continue;
    }
    if (c == '#') {
      size_t j = i + 1;
      while (j < src.size() && ident_cont(src[j])) j++;
      if (j == i + 1)
        throw Error(ErrorKind::Lex, Diagnostic{Severity::Error, "expected pragma name after '#'", "", here(1)});
      out.push_back(Token{Tt::Pragma, src.substr(i + 1, j - i - 1), 0, here((int)(j - i))});
      advance(j - i);
      continue;
    }
    if (c == '.') {
      size_t j = i + 1;
      while (j < src.size() && std::isdigit((unsigned char)src[j])) j++;
      if (j == i + 1)
        throw Error(ErrorKind::Lex, Diagnostic{Severity::Error, "expected digits after '.'", "", here(1)});
      Token t{Tt::Proj, src.substr(i, j - i), std::stoi(src.substr(i + 1, j - i - 1)), here((int)(j - i))};
      out.push_back(t);
      advance(j - i);
      continue;
    }
    auto two = [&](char a, char b) { return c == a && i + 1 < src.size() && src[i + 1] == b; };
    if (two(':', '=')) {
      out.push_back(Token{Tt::Define, ":=", 0, here(2)});
      advance(2);
      continue;
    }
    if (two('-', '>')) {
      out.push_back(Token{Tt::Arrow, "->", 0, here(2)});
      advance(2);
      continue;
    }
    if (two('=', '>')) {
      out.push_back(Token{Tt::FatArrow, "=>", 0, here(2)});
      advance(2);
      continue;
    }
    switch (c) {
      case '(': out.push_back(Token{Tt::LParen, "(", 0, here(1)}); advance(1); continue;
      case ')': out.push_back(Token{Tt::RParen, ")", 0, here(1)}); advance(1); continue;
      case ':': out.push_back(Token{Tt::Colon, ":", 0, here(1)}); advance(1); continue;
      case ';': out.push_back(Token{Tt::Semi, ";", 0, here(1)}); advance(1); continue;
      case ',': out.push_back(Token{Tt::Comma, ",", 0, here(1)}); advance(1); continue;
      default:
        throw Error(ErrorKind::Lex,
                    Diagnostic{Severity::Error, std::string("illegal character '") + c + "'", "", here(1)});
    }
  }
  out.push_back(Token{Tt::Eof, "", 0, Span{line, col, 1}});
  return out;
}

enum class DeclKind { Def, Axiom, Pragma };
enum class PragmaKind { Check, Infer, Eval, AssertDefeq, AssertType, AssertIlltyped };

struct Decl {
  DeclKind kind;
  std::string name;  // Def/Axiom name, or synthetic pragma label
  Term ty;           // Def/Axiom declared type
  Term body;         // Def body
  PragmaKind pk{};
  Term t1, t2;       // pragma payload terms
  Span span{};
};

inline const char* pragma_name(PragmaKind k) {
  switch (k) {
    case PragmaKind::Check: return "#check";
    case PragmaKind::Infer: return "#infer";
    case PragmaKind::Eval: return "#eval";
    case PragmaKind::AssertDefeq: return "#assert_defeq";
    case PragmaKind::AssertType: return "#assert_type";
    case PragmaKind::AssertIlltyped: return "#assert_illtyped";
  }
  return "#?";
}

class Parser {
 public:
  explicit Parser(const std::string& src) : toks(tokenize(src)) {}

  std::vector<Decl> parse_file() {
    std::vector<Decl> out;
    std::set<std::string> names;
    while (!at(Tt::Eof)) {
      Decl d = parse_decl();
      if (d.kind != DeclKind::Pragma) {
        if (names.count(d.name))
          throw Error(ErrorKind::Parse,
                      Diagnostic{Severity::Error, "duplicate definition name '" + d.name + "'", "", d.span});
        names.insert(d.name);
      }
      out.push_back(std::move(d));
    }
    return out;
  }

 private:
  std::vector<Token> toks;
  size_t pos = 0;
  std::vector<std::string> scope;
  int depth = 0;

  struct NestGuard {
    Parser* p;
    explicit NestGuard(Parser* q) : p(q) {
      if (++p->depth > 1024) {
        p->depth--;
        p->err("expression nesting too deep");
      }
    }
    ~NestGuard() { p->depth--; }
  };

  const Token& cur() const { return toks[pos]; }
  bool at(Tt t) const { return cur().t == t; }
  bool at_kw(const char* k) const { return cur().t == Tt::Ident && cur().text == k; }
  Token eat() { return toks[pos++]; }
  Token expect(Tt t, const char* what) {
    if (!at(t)) err(std::string("expected ") + what);
    return eat();
  }
  [[noreturn]] void err(const std::string& msg) const {
    throw Error(ErrorKind::Parse,
                Diagnostic{Severity::Error, msg + " (found '" + (cur().t == Tt::Eof ? "end of file" : cur().text) + "')",
                           "", cur().span});
  }

  static bool is_keyword(const std::string& s) {
    static const std::set<std::string> kw = {"def", "axiom", "fun", "Sig", "Eq",   "refl",  "J",
                                             "fst", "snd",   "Type", "Type0", "Type1", "Type2"};
    return kw.count(s) > 0;
  }

  std::string expect_name() {
    if (!at(Tt::Ident) || is_keyword(cur().text)) err("expected an identifier");
    return eat().text;
  }

  // binder ::= "(" ID+ ":" term ")"
  struct BinderGroup {
    std::vector<std::string> ids;
    Term ty;
    Span span;
  };

  BinderGroup parse_binder() {
    BinderGroup g;
    g.span = cur().span;
    expect(Tt::LParen, "'('");
    g.ids.push_back(expect_name());
    while (at(Tt::Ident) && !is_keyword(cur().text)) g.ids.push_back(eat().text);
    expect(Tt::Colon, "':'");
    g.ty = parse_term();
    expect(Tt::RParen, "')'");
    return g;
  }

  Decl parse_decl() {
    Span sp = cur().span;
    if (at_kw("def")) {
      eat();
      Decl d;
      d.kind = DeclKind::Def;
      d.span = sp;
      d.name = expect_name();
      std::vector<BinderGroup> binders;
      while (at(Tt::LParen)) binders.push_back(parse_binder_scoped(binders));
      expect(Tt::Colon, "':'");
      Term ty = parse_term();
      expect(Tt::Define, "':='");
      Term body = parse_term();
      expect(Tt::Semi, "';'");
      pop_binders(binders);
      // def f (x : A) : B := t  desugars to  def f : (x:A) -> B := fun (x:A) => t
      for (int i = (int)binders.size() - 1; i >= 0; i--) {
        const BinderGroup& g = binders[i];
        for (int k = (int)g.ids.size() - 1; k >= 0; k--) {
          Term ann = shift_term(g.ty, k);
          ty = mk::pi(g.ids[k], ann, ty, g.span);
          body = mk::lam(g.ids[k], ann, body, g.span);
        }
      }
      d.ty = ty;
      d.body = body;
      return d;
    }
    if (at_kw("axiom")) {
      eat();
      Decl d;
      d.kind = DeclKind::Axiom;
      d.span = sp;
      d.name = expect_name();
      expect(Tt::Colon, "':'");
      d.ty = parse_term();
      expect(Tt::Semi, "';'");
      return d;
    }
    if (at(Tt::Pragma)) {
      Token p = eat();
      Decl d;
      d.kind = DeclKind::Pragma;
      d.span = p.span;
      if (p.text == "check") d.pk = PragmaKind::Check;
      else if (p.text == "infer") d.pk = PragmaKind::Infer;
      else if (p.text == "eval") d.pk = PragmaKind::Eval;
      else if (p.text == "assert_defeq") d.pk = PragmaKind::AssertDefeq;
      else if (p.text == "assert_type") d.pk = PragmaKind::AssertType;
      else if (p.text == "assert_illtyped") d.pk = PragmaKind::AssertIlltyped;
      else err("unknown pragma '#" + p.text + "'");
      d.t1 = parse_term();
      if (d.pk == PragmaKind::AssertDefeq) {
        expect(Tt::Comma, "','");
        d.t2 = parse_term();
      } else if (d.pk == PragmaKind::AssertType) {
        expect(Tt::Colon, "':'");
        d.t2 = parse_term();
      }
      expect(Tt::Semi, "';'");
      d.name = std::string(pragma_name(d.pk)) + ":" + std::to_string(p.span.line);
      return d;
    }
    err("expected 'def', 'axiom' or a pragma");
  }

  // Parse a binder for def sugar, pushing its names into scope so later
  // binders and the result type can refer to them.
  BinderGroup parse_binder_scoped(const std::vector<BinderGroup>&) {
    BinderGroup g = parse_binder();
    for (auto& id : g.ids) scope.push_back(id);
    return g;
  }
  void pop_binders(const std::vector<BinderGroup>& bs) {
    for (auto& g : bs)
      for (size_t k = 0; k < g.ids.size(); k++) scope.pop_back();
  }

  // term ::= "fun" binder+ "=>" term
  //        | "(" ID+ ":" term ")" "->" term
  //        | app ("->" term)?
  //        | "Sig" "(" ID ":" term ")" "," term
  Term parse_term() {
    NestGuard guard(this);
    Span sp = cur().span;
    if (at_kw("fun")) {
      eat();
      std::vector<BinderGroup> bs;
      while (at(Tt::LParen)) {
        BinderGroup g = parse_binder();
        for (auto& id : g.ids) scope.push_back(id);
        bs.push_back(std::move(g));
      }
      if (bs.empty()) err("expected at least one binder after 'fun'");
      expect(Tt::FatArrow, "'=>'");
      Term body = parse_term();
      pop_binders(bs);
      for (int i = (int)bs.size() - 1; i >= 0; i--) {
        const BinderGroup& g = bs[i];
        for (int k = (int)g.ids.size() - 1; k >= 0; k--)
          body = mk::lam(g.ids[k], shift_term(g.ty, k), body, sp);
      }
      return body;
    }
    if (at_kw("Sig")) {
      eat();
      BinderGroup g = parse_binder();
      expect(Tt::Comma, "','");
      for (auto& id : g.ids) scope.push_back(id);
      Term snd = parse_term();
      for (size_t k = 0; k < g.ids.size(); k++) scope.pop_back();
      for (int k = (int)g.ids.size() - 1; k >= 0; k--)
        snd = mk::sigma(g.ids[k], shift_term(g.ty, k), snd, sp);
      return snd;
    }
    if (at(Tt::LParen)) {
      Term t;
      if (try_parse_pi(t)) return t;
    }
    Term t = parse_app();
    if (at(Tt::Arrow)) {
      eat();
      Term cod = parse_term();
      return mk::pi("", t, shift_term(cod, 1), sp);
    }
    return t;
  }

  // Speculative "(x y : A) -> B"; restores the cursor when the shape does
  // not match (it is then an ascription, tuple or parenthesized term).
  bool try_parse_pi(Term& out) {
    size_t save = pos;
    size_t scope_save = scope.size();
    try {
      Span sp = cur().span;
      expect(Tt::LParen, "'('");
      std::vector<std::string> ids;
      if (!at(Tt::Ident) || is_keyword(cur().text)) throw Error(ErrorKind::Parse, {});
      ids.push_back(eat().text);
      while (at(Tt::Ident) && !is_keyword(cur().text)) ids.push_back(eat().text);
      if (!at(Tt::Colon)) throw Error(ErrorKind::Parse, {});
      eat();
      Term dom = parse_term();
      if (!at(Tt::RParen)) throw Error(ErrorKind::Parse, {});
      eat();
      if (!at(Tt::Arrow)) throw Error(ErrorKind::Parse, {});
      eat();
      for (auto& id : ids) scope.push_back(id);
      Term cod = parse_term();
      for (size_t k = 0; k < ids.size(); k++) scope.pop_back();
      for (int k = (int)ids.size() - 1; k >= 0; k--)
        cod = mk::pi(ids[k], shift_term(dom, k), cod, sp);
      out = cod;
      return true;
    } catch (const Error&) {
      pos = save;
      scope.resize(scope_save);
      return false;
    }
  }

  bool starts_atom() const {
    if (at(Tt::LParen)) return true;
    if (at(Tt::Ident)) {
      const std::string& s = cur().text;
      return s != "def" && s != "axiom" && s != "fun" && s != "Sig";
    }
    return false;
  }

  Term parse_app() {
    Term t = parse_atom();
    while (starts_atom()) {
      // "fun"/"Sig" stop application; "Eq"/"J"/"fst"/"snd"/"refl" are atoms.
      Span sp = cur().span;
      t = mk::app(t, parse_atom(), sp);
    }
    return t;
  }

  Term parse_atom() {
    Span sp = cur().span;
    Term t;
    if (at(Tt::Ident)) {
      std::string s = cur().text;
      if (s == "Type") { eat(); t = mk::univ(Level::impredicative(), sp); }
      else if (s == "Type0") { eat(); t = mk::univ(Level::predicative(0), sp); }
      else if (s == "Type1") { eat(); t = mk::univ(Level::predicative(1), sp); }
      else if (s == "Type2") { eat(); t = mk::univ(Level::predicative(2), sp); }
      else if (s == "refl") { eat(); t = mk::refl(sp); }
      else if (s == "fst") { eat(); t = mk::fst(parse_atom(), sp); }
      else if (s == "snd") { eat(); t = mk::snd(parse_atom(), sp); }
      else if (s == "Eq") {
        eat();
        Term a = parse_atom(), l = parse_atom(), r = parse_atom();
        t = mk::eq(a, l, r, sp);
      } else if (s == "J") {
        eat();
        Term a = parse_atom(), c = parse_atom(), b = parse_atom();
        Term x = parse_atom(), y = parse_atom(), p = parse_atom();
        t = mk::j(a, c, b, x, y, p, sp);
      } else if (s == "fun" || s == "Sig" || s == "def" || s == "axiom") {
        err("unexpected keyword '" + s + "'");
      } else {
        eat();
        t = resolve(s, sp);
      }
    } else if (at(Tt::LParen)) {
      eat();
      t = parse_term();
      if (at(Tt::Colon)) {
        eat();
        Term ty = parse_term();
        expect(Tt::RParen, "')'");
        t = mk::ann(t, ty, sp);
      } else if (at(Tt::Comma)) {
        std::vector<Term> parts{t};
        while (at(Tt::Comma)) {
          eat();
          parts.push_back(parse_term());
        }
        expect(Tt::RParen, "')'");
        Term acc = parts.back();
        for (int i = (int)parts.size() - 2; i >= 0; i--) acc = mk::pair(parts[i], acc, sp);
        t = acc;
      } else {
        expect(Tt::RParen, "')'");
      }
    } else {
      err("expected a term");
    }
    while (at(Tt::Proj)) {
      Token p = eat();
      if (p.nat < 1) err("projection index must be at least 1");
      if (p.nat == 1) {
        t = mk::fst(t, p.span);
      } else {
        for (int k = 1; k < p.nat; k++) t = mk::snd(t, p.span);
      }
    }
    return t;
  }

  Term resolve(const std::string& name, Span sp) {
    for (int i = (int)scope.size() - 1; i >= 0; i--) {
      if (scope[i] == name) return mk::var((int)scope.size() - 1 - i, name, sp);
    }
    return mk::global(name, sp);
  }
};

inline std::vector<Decl> parse_source(const std::string& src) { return Parser(src).parse_file(); }

}  // namespace itt
