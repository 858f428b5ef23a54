#pragma once

#include <memory>
#include <string>
#include <vector>

#include "diag.hpp"
#include "level.hpp"

namespace itt {

// Abstract syntax of the object theory. Bound variables are de Bruijn
// indices; `name` keeps the surface name as a printing hint (and the
// referenced name for Global). Alpha-equivalence is therefore structural
// equality that ignores hints.
enum class Tk {
  Var,     // idx
  Univ,    // lvl
  Pi,      // kid = {domain, codomain(+1)}
  Lam,     // kid = {annotation, body(+1)}
  App,     // kid = {fn, arg}
  Sigma,   // kid = {first, second(+1)}
  Pair,    // kid = {first, second}           checkable only
  Fst,     // kid = {pair}
  Snd,     // kid = {pair}
  Eq,      // kid = {type, lhs, rhs}
  Refl,    //                                 checkable only
  J,       // kid = {ty, motive, base, lhs, rhs, proof}
  Global,  // name
  Ann,     // kid = {term, type}
};

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

struct TermNode {
  Tk tag;
  Level lvl{};
  int idx = 0;
  std::string name;
  std::vector<Term> kid;
  Span span{};
};

namespace mk {

inline Term node(Tk tag, std::vector<Term> kid = {}, Span sp = {}) {
  auto n = std::make_shared<TermNode>();
  n->tag = tag;
  n->kid = std::move(kid);
  n->span = sp;
  return n;
}
inline Term var(int idx, std::string hint = "", Span sp = {}) {
  auto n = std::make_shared<TermNode>();
  n->tag = Tk::Var;
  n->idx = idx;
  n->name = std::move(hint);
  n->span = sp;
  return n;
}
inline Term univ(Level l, Span sp = {}) {
  auto n = std::make_shared<TermNode>();
  n->tag = Tk::Univ;
  n->lvl = l;
  n->span = sp;
  return n;
}
inline Term binder(Tk tag, std::string name, Term a, Term b, Span sp = {}) {
  auto n = std::make_shared<TermNode>();
  n->tag = tag;
  n->name = std::move(name);
  n->kid = {std::move(a), std::move(b)};
  n->span = sp;
  return n;
}
inline Term pi(std::string x, Term dom, Term cod, Span sp = {}) { return binder(Tk::Pi, std::move(x), std::move(dom), std::move(cod), sp); }
inline Term lam(std::string x, Term ann, Term body, Span sp = {}) { return binder(Tk::Lam, std::move(x), std::move(ann), std::move(body), sp); }
inline Term sigma(std::string x, Term a, Term b, Span sp = {}) { return binder(Tk::Sigma, std::move(x), std::move(a), std::move(b), sp); }
inline Term app(Term f, Term a, Span sp = {}) { return node(Tk::App, {std::move(f), std::move(a)}, sp); }
inline Term pair(Term a, Term b, Span sp = {}) { return node(Tk::Pair, {std::move(a), std::move(b)}, sp); }
inline Term fst(Term p, Span sp = {}) { return node(Tk::Fst, {std::move(p)}, sp); }
inline Term snd(Term p, Span sp = {}) { return node(Tk::Snd, {std::move(p)}, sp); }
inline Term eq(Term ty, Term l, Term r, Span sp = {}) { return node(Tk::Eq, {std::move(ty), std::move(l), std::move(r)}, sp); }
inline Term refl(Span sp = {}) { return node(Tk::Refl, {}, sp); }
inline Term j(Term ty, Term motive, Term base, Term lhs, Term rhs, Term proof, Span sp = {}) {
  return node(Tk::J, {std::move(ty), std::move(motive), std::move(base), std::move(lhs), std::move(rhs), std::move(proof)}, sp);
}
inline Term global(std::string name, Span sp = {}) {
  auto n = std::make_shared<TermNode>();
  n->tag = Tk::Global;
  n->name = std::move(name);
  n->span = sp;
  return n;
}
inline Term ann(Term t, Term ty, Span sp = {}) { return node(Tk::Ann, {std::move(t), std::move(ty)}, sp); }

}  // namespace mk

// Alpha-equivalence: structural equality modulo binder names.
inline bool alpha_eq(const Term& a, const Term& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->tag != b->tag) return false;
  switch (a->tag) {
    case Tk::Var: return a->idx == b->idx;
    case Tk::Univ: return a->lvl == b->lvl;
    case Tk::Global: return a->name == b->name;
    case Tk::Refl: return true;
    default: break;
  }
  if (a->kid.size() != b->kid.size()) return false;
  for (size_t i = 0; i < a->kid.size(); i++)
    if (!alpha_eq(a->kid[i], b->kid[i])) return false;
  return true;
}

// Shift free indices >= cutoff by d.
inline Term shift_term(const Term& t, int d, int cutoff = 0) {
  if (!t) return t;
  switch (t->tag) {
    case Tk::Var:
      if (t->idx >= cutoff) return mk::var(t->idx + d, t->name, t->span);
      return t;
    case Tk::Univ:
    case Tk::Global:
    case Tk::Refl:
      return t;
    default: break;
  }
  auto n = std::make_shared<TermNode>(*t);
  bool binds = t->tag == Tk::Pi || t->tag == Tk::Lam || t->tag == Tk::Sigma;
  for (size_t i = 0; i < n->kid.size(); i++) {
    int c = (binds && i == 1) ? cutoff + 1 : cutoff;
    n->kid[i] = shift_term(t->kid[i], d, c);
  }
  return n;
}

namespace detail {
inline Term subst_at(const Term& t, const Term& arg, int depth) {
  if (!t) return t;
  switch (t->tag) {
    case Tk::Var:
      if (t->idx == depth) return shift_term(arg, depth);
      if (t->idx > depth) return mk::var(t->idx - 1, t->name, t->span);
      return t;
    case Tk::Univ:
    case Tk::Global:
    case Tk::Refl:
      return t;
    default: break;
  }
  auto n = std::make_shared<TermNode>(*t);
  bool binds = t->tag == Tk::Pi || t->tag == Tk::Lam || t->tag == Tk::Sigma;
  for (size_t i = 0; i < n->kid.size(); i++) {
    int d = (binds && i == 1) ? depth + 1 : depth;
    n->kid[i] = subst_at(t->kid[i], arg, d);
  }
  return n;
}
}  // namespace detail

// Capture-avoiding substitution of the variable bound at index 0 in `body`.
inline Term substitute(const Term& body, const Term& arg) {
  return detail::subst_at(body, arg, 0);
}

// True if variable with de Bruijn index `idx` occurs free in t.
inline bool occurs_free(const Term& t, int idx) {
  if (!t) return false;
  switch (t->tag) {
    case Tk::Var: return t->idx == idx;
    case Tk::Univ:
    case Tk::Global:
    case Tk::Refl:
      return false;
    default: break;
  }
  bool binds = t->tag == Tk::Pi || t->tag == Tk::Lam || t->tag == Tk::Sigma;
  for (size_t i = 0; i < t->kid.size(); i++) {
    int k = (binds && i == 1) ? idx + 1 : idx;
    if (occurs_free(t->kid[i], k)) return true;
  }
  return false;
}

}  // namespace itt
