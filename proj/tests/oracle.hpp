#pragma once

// Independent brute-force beta reducer over closed Church terms. This is the
// reference computation for the worked examples (Church arithmetic, list
// sums, stream observations): an untyped lambda calculus with named
// variables, capture-avoiding substitution, and normal-order reduction. It
// shares no code with the kernel. Type arguments of the encodings are erased
// to a dummy identity term; pairs are Church pairs, which have the same
// beta behavior as the kernel's Sigma pairs.

#include <memory>
#include <stdexcept>
#include <string>

namespace oracle {

struct E;
using Ep = std::shared_ptr<const E>;

struct E {
  int tag;  // 0 var, 1 lam, 2 app
  std::string v;
  Ep a, b;
};

inline Ep var(const std::string& v) { return std::make_shared<E>(E{0, v, nullptr, nullptr}); }
inline Ep lam(const std::string& v, Ep body) { return std::make_shared<E>(E{1, v, std::move(body), nullptr}); }
inline Ep app(Ep f, Ep x) { return std::make_shared<E>(E{2, "", std::move(f), std::move(x)}); }
inline Ep app(Ep f, Ep x, Ep y) { return app(app(std::move(f), std::move(x)), std::move(y)); }
inline Ep app(Ep f, Ep x, Ep y, Ep z) { return app(app(std::move(f), std::move(x), std::move(y)), std::move(z)); }
inline Ep app(Ep f, Ep a1, Ep a2, Ep a3, Ep a4) { return app(app(std::move(f), a1, a2, a3), a4); }

inline bool free_in(const Ep& t, const std::string& v) {
  switch (t->tag) {
    case 0: return t->v == v;
    case 1: return t->v != v && free_in(t->a, v);
    default: return free_in(t->a, v) || free_in(t->b, v);
  }
}

inline Ep subst(const Ep& t, const std::string& v, const Ep& u, int& fresh) {
  switch (t->tag) {
    case 0: return t->v == v ? u : t;
    case 1: {
      if (t->v == v) return t;
      if (free_in(u, t->v)) {
        std::string nv = t->v + "_" + std::to_string(fresh++);
        Ep renamed = subst(t->a, t->v, var(nv), fresh);
        return lam(nv, subst(renamed, v, u, fresh));
      }
      return lam(t->v, subst(t->a, v, u, fresh));
    }
    default: return app(subst(t->a, v, u, fresh), subst(t->b, v, u, fresh));
  }
}

// One normal-order step; null when already normal.
inline Ep step(const Ep& t, int& fresh) {
  if (t->tag == 2) {
    if (t->a->tag == 1) return subst(t->a->a, t->a->v, t->b, fresh);
    if (Ep f = step(t->a, fresh)) return app(f, t->b);
    if (Ep x = step(t->b, fresh)) return app(t->a, x);
    return nullptr;
  }
  if (t->tag == 1) {
    if (Ep b = step(t->a, fresh)) return lam(t->v, b);
    return nullptr;
  }
  return nullptr;
}

inline Ep normalize(Ep t, long long max_steps = 2'000'000) {
  int fresh = 0;
  while (max_steps-- > 0) {
    Ep n = step(t, fresh);
    if (!n) return t;
    t = n;
  }
  throw std::runtime_error("oracle: step budget exhausted");
}

// Reads \X.\z.\s. s (s ... z) back as an integer; -1 on shape mismatch.
inline int church_value(const Ep& t0) {
  Ep t = t0;
  int lams = 0;
  std::string z, s;
  while (t->tag == 1 && lams < 3) {
    if (lams == 1) z = t->v;
    if (lams == 2) s = t->v;
    t = t->a;
    lams++;
  }
  if (lams != 3) return -1;
  int n = 0;
  while (t->tag == 2) {
    if (!(t->a->tag == 0 && t->a->v == s)) return -1;
    t = t->b;
    n++;
  }
  return (t->tag == 0 && t->v == z) ? n : -1;
}

// ---- erased encodings (type arguments become the dummy identity) ----

inline Ep dummy() { return lam("u", var("u")); }

inline Ep church(int n) {
  Ep body = var("z");
  for (int i = 0; i < n; i++) body = app(var("s"), body);
  return lam("X", lam("z", lam("s", body)));
}
inline Ep zero() { return church(0); }
inline Ep succ() {
  return lam("n", lam("X", lam("z", lam("s", app(var("s"), app(var("n"), var("X"), var("z"), var("s")))))));
}
inline Ep rec_nat() {
  return lam("X", lam("z", lam("s", lam("n", app(var("n"), var("X"), var("z"), var("s"))))));
}
inline Ep add() {
  return lam("n", lam("m", app(rec_nat(), dummy(), var("m"), lam("k", app(succ(), var("k"))), var("n"))));
}
inline Ep double_n() {
  return lam("n", app(rec_nat(), dummy(), zero(), lam("k", app(succ(), app(succ(), var("k")))), var("n")));
}

// Raw lists: nil = \X.\x.\f. x ; cons e l = \X.\x.\f. f e (l X x f).
inline Ep list_nil() { return lam("X", lam("x", lam("f", var("x")))); }
inline Ep list_cons(Ep e, Ep l) {
  return lam("X", lam("x", lam("f", app(var("f"), e, app(l, var("X"), var("x"), var("f"))))));
}
inline Ep rec_list() {
  return lam("X", lam("x", lam("g", lam("l", app(var("l"), var("X"), var("x"), var("g"))))));
}
inline Ep sum_list(Ep l) {
  return app(rec_list(), dummy(), zero(), lam("e", lam("acc", app(add(), var("e"), var("acc")))), l);
}

// Church pairs mirror the kernel's Sigma pairs under beta.
inline Ep cpair(Ep a, Ep b) { return lam("sel", app(var("sel"), a, b)); }
inline Ep cfst(Ep p) { return app(p, lam("a", lam("b", var("a")))); }
inline Ep csnd(Ep p) { return app(p, lam("a", lam("b", var("b")))); }

// Streams: pack X (x, (h, t)) with pack = \X.\p.\Y.\k. k X p.
inline Ep spack(Ep x, Ep h, Ep t) {
  return lam("Y", lam("k", app(var("k"), dummy(), cpair(x, cpair(h, t)))));
}
inline Ep shd(Ep s) {
  return app(s, dummy(), lam("X", lam("w", app(cfst(csnd(var("w"))), cfst(var("w"))))));
}
inline Ep stl(Ep s) {
  return app(s, dummy(),
             lam("X", lam("w", spack(app(csnd(csnd(var("w"))), cfst(var("w"))), cfst(csnd(var("w"))),
                                     csnd(csnd(var("w")))))));
}
inline Ep incr_stream() { return spack(zero(), lam("n", var("n")), succ()); }

}  // namespace oracle
