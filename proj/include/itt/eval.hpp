#pragma once

#include <ostream>

#include "pretty.hpp"
#include "value.hpp"

namespace itt {

inline constexpr long long kDefaultFuel = 10'000'000;

// Normalization-by-evaluation engine. Evaluation is environment based;
// defined globals stay glued to a lazily forced unfolding so conversion can
// compare heads first and unfold only on mismatch. Axioms have no unfolding
// and stay neutral forever.
struct Engine {
  const GlobalEnv* globals = nullptr;
  long long fuel = kDefaultFuel;
  int depth = 0;
  int max_depth = 10'000;
  bool eta = true;
  std::ostream* trace = nullptr;
  int trace_lines = 0;

  void reset_fuel(long long f) {
    fuel = f;
    depth = 0;
  }

  void tick() {
    if (--fuel <= 0) fail(ErrorKind::Fuel, "evaluation step budget exhausted (increase --fuel)");
  }

  // The step budget bounds work; this bounds the C++ stack so runaway terms
  // become a diagnostic instead of a crash.
  struct Depth {
    Engine* e;
    explicit Depth(Engine* en) : e(en) {
      if (++e->depth > e->max_depth) {
        e->depth--;
        fail(ErrorKind::Fuel, "evaluation recursion depth exceeded");
      }
    }
    ~Depth() { e->depth--; }
  };

  Value instantiate(const Closure& c, Value v) {
    if (c.fn) return c.fn(std::move(v));
    return eval(env_cons(std::move(v), c.env), c.body);
  }

  Value eval(const Env& env, const Term& t) {
    tick();
    Depth guard_(this);
    switch (t->tag) {
      case Tk::Var: return env_lookup(env, t->idx);
      case Tk::Univ: return vk::univ(t->lvl);
      case Tk::Pi: return vk::pi(eval(env, t->kid[0]), Closure{t->kid[1], env, nullptr, t->name});
      case Tk::Lam: return vk::lam(eval(env, t->kid[0]), Closure{t->kid[1], env, nullptr, t->name});
      case Tk::Sigma: return vk::sigma(eval(env, t->kid[0]), Closure{t->kid[1], env, nullptr, t->name});
      case Tk::App: return apply(eval(env, t->kid[0]), eval(env, t->kid[1]));
      case Tk::Pair: return vk::pair(eval(env, t->kid[0]), eval(env, t->kid[1]));
      case Tk::Fst: return vfst(eval(env, t->kid[0]));
      case Tk::Snd: return vsnd(eval(env, t->kid[0]));
      case Tk::Eq: return vk::eq(eval(env, t->kid[0]), eval(env, t->kid[1]), eval(env, t->kid[2]));
      case Tk::Refl: return vk::refl();
      case Tk::J: {
        std::array<Value, 5> js{eval(env, t->kid[0]), eval(env, t->kid[1]), eval(env, t->kid[2]),
                                eval(env, t->kid[3]), eval(env, t->kid[4])};
        return vj(js, eval(env, t->kid[5]));
      }
      case Tk::Global: {
        const GlobalEntry* g = globals ? globals->find(t->name) : nullptr;
        if (!g) fail(ErrorKind::Type, "unknown identifier '" + t->name + "'", t->span);
        if (g->axiom) return vk::global_neutral(g->name, nullptr);
        return vk::global_neutral(g->name, lazy_ready(g->vbody));
      }
      case Tk::Ann: return eval(env, t->kid[0]);
    }
    fail(ErrorKind::Type, "internal: unreachable eval case");
  }

  Value apply(Value f, Value x) {
    tick();
    Depth guard_(this);
    if (f->k == Vk::Lam) return instantiate(f->clo, std::move(x));
    if (f->k == Vk::Neut) {
      LazyPtr un;
      if (f->unfold) {
        un = lazy_of([this, f, x]() { return apply(f->unfold->force(), x); });
      }
      return vk::push_elim(f, Elim{Ek::App, std::move(x), {}}, un);
    }
    fail(ErrorKind::Type, "internal: application of a non-function value");
  }

  Value vfst(Value p) {
    tick();
    Depth guard_(this);
    if (p->k == Vk::Pair) return p->a;
    if (p->k == Vk::Neut) {
      LazyPtr un;
      if (p->unfold) un = lazy_of([this, p]() { return vfst(p->unfold->force()); });
      return vk::push_elim(p, Elim{Ek::Fst, nullptr, {}}, un);
    }
    fail(ErrorKind::Type, "internal: first projection of a non-pair value");
  }

  Value vsnd(Value p) {
    tick();
    Depth guard_(this);
    if (p->k == Vk::Pair) return p->b;
    if (p->k == Vk::Neut) {
      LazyPtr un;
      if (p->unfold) un = lazy_of([this, p]() { return vsnd(p->unfold->force()); });
      return vk::push_elim(p, Elim{Ek::Snd, nullptr, {}}, un);
    }
    fail(ErrorKind::Type, "internal: second projection of a non-pair value");
  }

  Value vj(const std::array<Value, 5>& js, Value proof) {
    tick();
    Depth guard_(this);
    if (proof->k == Vk::Refl) return apply(js[2], js[3]);
    if (proof->k == Vk::Neut) {
      LazyPtr un;
      if (proof->unfold) un = lazy_of([this, js, proof]() { return vj(js, proof->unfold->force()); });
      return vk::push_elim(proof, Elim{Ek::J, nullptr, js}, un);
    }
    fail(ErrorKind::Type, "internal: J applied to a non-identity value");
  }

  // Weak head form through delta: forces glued unfoldings until the value is
  // canonical or a truly stuck neutral (local variable or axiom head).
  Value force(Value v) {
    while (v->k == Vk::Neut && v->unfold) {
      tick();
      v = v->unfold->force();
    }
    return v;
  }

  // Beta-normal readback. With unfold_globals the result is the full
  // beta-delta normal form (axioms stay as heads); without it defined
  // globals are kept by name, which is what diagnostics print.
  Term readback(int depth, const Value& v, bool unfold_globals) {
    tick();
    Depth guard_(this);
    switch (v->k) {
      case Vk::Univ: return mk::univ(v->lvl);
      case Vk::Pi: {
        Value fresh = vk::local(depth, v->clo.hint);
        return mk::pi(v->clo.hint.empty() ? "x" : v->clo.hint, readback(depth, v->a, unfold_globals),
                      readback(depth + 1, instantiate(v->clo, fresh), unfold_globals));
      }
      case Vk::Lam: {
        Value fresh = vk::local(depth, v->clo.hint);
        return mk::lam(v->clo.hint.empty() ? "x" : v->clo.hint, readback(depth, v->a, unfold_globals),
                       readback(depth + 1, instantiate(v->clo, fresh), unfold_globals));
      }
      case Vk::Sigma: {
        Value fresh = vk::local(depth, v->clo.hint);
        return mk::sigma(v->clo.hint.empty() ? "x" : v->clo.hint, readback(depth, v->a, unfold_globals),
                         readback(depth + 1, instantiate(v->clo, fresh), unfold_globals));
      }
      case Vk::Pair:
        return mk::pair(readback(depth, v->a, unfold_globals), readback(depth, v->b, unfold_globals));
      case Vk::Eq:
        return mk::eq(readback(depth, v->a, unfold_globals), readback(depth, v->b, unfold_globals),
                      readback(depth, v->c, unfold_globals));
      case Vk::Refl: return mk::refl();
      case Vk::Neut: {
        if (unfold_globals && v->unfold) return readback(depth, force(v), unfold_globals);
        Term h;
        if (v->head_lvl >= 0) {
          int idx = depth - 1 - v->head_lvl;
          h = mk::var(idx, v->head_name);
        } else {
          h = mk::global(v->head_name);
        }
        for (const Elim& e : v->spine) {
          switch (e.k) {
            case Ek::App: h = mk::app(h, readback(depth, e.arg, unfold_globals)); break;
            case Ek::Fst: h = mk::fst(h); break;
            case Ek::Snd: h = mk::snd(h); break;
            case Ek::J:
              h = mk::j(readback(depth, e.j[0], unfold_globals), readback(depth, e.j[1], unfold_globals),
                        readback(depth, e.j[2], unfold_globals), readback(depth, e.j[3], unfold_globals),
                        readback(depth, e.j[4], unfold_globals), h);
              break;
          }
        }
        return h;
      }
    }
    fail(ErrorKind::Type, "internal: unreachable readback case");
  }

  bool same_head(const Value& a, const Value& b) {
    if (a->head_lvl >= 0 || b->head_lvl >= 0) return a->head_lvl == b->head_lvl;
    return a->head_name == b->head_name;
  }

  bool conv_spine(int depth, const Value& a, const Value& b) {
    if (a->spine.size() != b->spine.size()) return false;
    for (size_t i = 0; i < a->spine.size(); i++) {
      const Elim& x = a->spine[i];
      const Elim& y = b->spine[i];
      if (x.k != y.k) return false;
      if (x.k == Ek::App && !conv(depth, x.arg, y.arg)) return false;
      if (x.k == Ek::J) {
        for (int j = 0; j < 5; j++)
          if (!conv(depth, x.j[j], y.j[j])) return false;
      }
    }
    return true;
  }

  // Definitional equality: beta, delta, and (unless disabled) eta for Pi and
  // Sigma. Universe levels compare exactly here; cumulativity lives only in
  // subtype().
  bool conv(int depth, Value a, Value b) {
    tick();
    Depth guard_(this);
    if (trace && trace_lines < 2000) {
      trace_lines++;
      *trace << "  conv: " << pretty(readback(depth, a, false)) << "  ~  " << pretty(readback(depth, b, false))
             << "\n";
    }
    if (a.get() == b.get()) return true;

    if (a->k == b->k) {
      switch (a->k) {
        case Vk::Univ: return a->lvl == b->lvl;
        case Vk::Pi:
        case Vk::Sigma: {
          if (!conv(depth, a->a, b->a)) return false;
          Value fresh = vk::local(depth, a->clo.hint);
          return conv(depth + 1, instantiate(a->clo, fresh), instantiate(b->clo, fresh));
        }
        case Vk::Lam: {
          Value fresh = vk::local(depth, a->clo.hint);
          return conv(depth + 1, instantiate(a->clo, fresh), instantiate(b->clo, fresh));
        }
        case Vk::Pair:
          return conv(depth, a->a, b->a) && conv(depth, a->b, b->b);
        case Vk::Eq:
          return conv(depth, a->a, b->a) && conv(depth, a->b, b->b) && conv(depth, a->c, b->c);
        case Vk::Refl: return true;
        case Vk::Neut: break;
      }
    }

    // Eta: functions compare by application, pairs by projections.
    if (eta) {
      if (a->k == Vk::Lam || b->k == Vk::Lam) {
        Value fresh = vk::local(depth, "x");
        return conv(depth + 1, apply(a, fresh), apply(b, fresh));
      }
      if (a->k == Vk::Pair || b->k == Vk::Pair) {
        return conv(depth, vfst(a), vfst(b)) && conv(depth, vsnd(a), vsnd(b));
      }
    } else {
      if (a->k == Vk::Lam && b->k == Vk::Lam) {
        Value fresh = vk::local(depth, "x");
        return conv(depth + 1, apply(a, fresh), apply(b, fresh));
      }
    }

    if (a->k == Vk::Neut && b->k == Vk::Neut) {
      if (same_head(a, b)) {
        if (conv_spine(depth, a, b)) return true;
        // Same defined global but different spines may still unfold equal.
        if (a->unfold) return conv(depth, force(a), force(b));
        return false;
      }
      bool ua = a->unfold != nullptr, ub = b->unfold != nullptr;
      if (ua || ub) return conv(depth, ua ? force(a) : a, ub ? force(b) : b);
      return false;
    }
    if (a->k == Vk::Neut && a->unfold) return conv(depth, force(a), b);
    if (b->k == Vk::Neut && b->unfold) return conv(depth, a, force(b));
    return false;
  }

  // Cumulativity-aware subtyping used at the check/infer boundary:
  // Universe(l1) <= Universe(l2) when l1 <= l2; Pi is invariant in domains
  // and covariant in codomains; Sigma is covariant in both components;
  // anything else falls back to conversion.
  bool subtype(int depth, Value a, Value b) {
    tick();
    Depth guard_(this);
    a = force(a);
    b = force(b);
    if (a->k == Vk::Univ && b->k == Vk::Univ) return leq_level(a->lvl, b->lvl);
    if (a->k == Vk::Pi && b->k == Vk::Pi) {
      if (!conv(depth, a->a, b->a)) return false;
      Value fresh = vk::local(depth, a->clo.hint);
      return subtype(depth + 1, instantiate(a->clo, fresh), instantiate(b->clo, fresh));
    }
    if (a->k == Vk::Sigma && b->k == Vk::Sigma) {
      if (!subtype(depth, a->a, b->a)) return false;
      Value fresh = vk::local(depth, a->clo.hint);
      return subtype(depth + 1, instantiate(a->clo, fresh), instantiate(b->clo, fresh));
    }
    return conv(depth, a, b);
  }
};

}  // namespace itt
