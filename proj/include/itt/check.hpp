#pragma once

#include "eval.hpp"

namespace itt {

// Typing context: an ordered telescope of locals (types as values) plus the
// evaluation environment where each local is its own neutral variable.
struct Ctx {
  std::vector<std::pair<std::string, Value>> locals;
  Env env;

  int depth() const { return (int)locals.size(); }
  void push(const std::string& n, Value ty) {
    env = env_cons(vk::local(depth(), n), env);
    locals.emplace_back(n, std::move(ty));
  }
  void pop() {
    locals.pop_back();
    env = env->next;
  }
};

struct Checker {
  Engine& en;

  std::string show_value(const Ctx& ctx, const Value& v) {
    return pretty(en.readback(ctx.depth(), v, false));
  }

  [[noreturn]] void type_error(const Term& at, const std::string& msg) {
    fail(ErrorKind::Type, msg, at->span);
  }

  // The term must be a type, i.e. its inferred type is a universe.
  Level check_is_type(Ctx& ctx, const Term& t) {
    Value u = en.force(infer(ctx, t));
    if (u->k != Vk::Univ) type_error(t, "expected a type, but this term has type " + show_value(ctx, u));
    return u->lvl;
  }

  Value infer(Ctx& ctx, const Term& t) {
    en.tick();
    switch (t->tag) {
      case Tk::Var: {
        int i = ctx.depth() - 1 - t->idx;
        if (t->idx < 0 || i < 0)
          type_error(t, "unbound variable" + (t->name.empty() ? "" : " '" + t->name + "'"));
        return ctx.locals[i].second;
      }
      case Tk::Univ:
        return vk::univ(t->lvl.succ());
      case Tk::Global: {
        const GlobalEntry* g = en.globals->find(t->name);
        if (!g) type_error(t, "unknown identifier '" + t->name + "'");
        return g->vty;
      }
      case Tk::Pi: {
        Level l1 = check_is_type(ctx, t->kid[0]);
        Value dom = en.eval(ctx.env, t->kid[0]);
        ctx.push(t->name, dom);
        Level l2 = check_is_type(ctx, t->kid[1]);
        ctx.pop();
        // Impredicative rule: a Pi landing in the bottom universe lives in
        // the bottom universe whatever the domain's universe is.
        return vk::univ(l2.impred() ? Level::impredicative() : max_level(l1, l2));
      }
      case Tk::Sigma: {
        Level l1 = check_is_type(ctx, t->kid[0]);
        Value dom = en.eval(ctx.env, t->kid[0]);
        ctx.push(t->name, dom);
        Level l2 = check_is_type(ctx, t->kid[1]);
        ctx.pop();
        // Both components must already live in the bottom universe for the
        // Sigma to live there; otherwise the predicative max applies.
        return vk::univ(max_level(l1, l2));
      }
      case Tk::Lam: {
        check_is_type(ctx, t->kid[0]);
        Value dom = en.eval(ctx.env, t->kid[0]);
        Env outer = ctx.env;
        ctx.push(t->name, dom);
        Value body_ty = infer(ctx, t->kid[1]);
        Term cod = en.readback(ctx.depth(), body_ty, false);
        ctx.pop();
        return vk::pi(dom, Closure{cod, outer, nullptr, t->name});
      }
      case Tk::App: {
        Value fty = en.force(infer(ctx, t->kid[0]));
        if (fty->k != Vk::Pi)
          type_error(t, "cannot apply a term of type " + show_value(ctx, fty) + "; a function was expected");
        check(ctx, t->kid[1], fty->a);
        return en.instantiate(fty->clo, en.eval(ctx.env, t->kid[1]));
      }
      case Tk::Fst: {
        Value pty = en.force(infer(ctx, t->kid[0]));
        if (pty->k != Vk::Sigma)
          type_error(t, "fst expects a pair; this term has type " + show_value(ctx, pty));
        return pty->a;
      }
      case Tk::Snd: {
        Value pty = en.force(infer(ctx, t->kid[0]));
        if (pty->k != Vk::Sigma)
          type_error(t, "snd expects a pair; this term has type " + show_value(ctx, pty));
        return en.instantiate(pty->clo, en.vfst(en.eval(ctx.env, t->kid[0])));
      }
      case Tk::Eq: {
        Level l = check_is_type(ctx, t->kid[0]);
        Value ty = en.eval(ctx.env, t->kid[0]);
        check(ctx, t->kid[1], ty);
        check(ctx, t->kid[2], ty);
        return vk::univ(l);
      }
      case Tk::Pair:
        type_error(t, "cannot infer the type of a pair; add an annotation");
      case Tk::Refl:
        type_error(t, "cannot infer the type of refl; add an annotation");
      case Tk::J: {
        check_is_type(ctx, t->kid[0]);
        Value va = en.eval(ctx.env, t->kid[0]);
        Value tc = en.force(infer(ctx, t->kid[1]));
        int d = ctx.depth();
        {
          if (tc->k != Vk::Pi || !en.conv(d, tc->a, va))
            type_error(t->kid[1], "J motive must abstract over two endpoints and a proof");
          Value fx = vk::local(d, "x");
          Value w2 = en.force(en.instantiate(tc->clo, fx));
          if (w2->k != Vk::Pi || !en.conv(d + 1, w2->a, va))
            type_error(t->kid[1], "J motive must abstract over two endpoints and a proof");
          Value fy = vk::local(d + 1, "y");
          Value w3 = en.force(en.instantiate(w2->clo, fy));
          if (w3->k != Vk::Pi || !en.conv(d + 2, w3->a, vk::eq(va, fx, fy)))
            type_error(t->kid[1], "J motive's third argument must be an equality proof");
          Value fp = vk::local(d + 2, "p");
          Value w4 = en.force(en.instantiate(w3->clo, fp));
          if (w4->k != Vk::Univ) type_error(t->kid[1], "J motive must land in a universe");
        }
        Value vc = en.eval(ctx.env, t->kid[1]);
        Engine* e = &en;
        Value base_ty = vk::pi(va, Closure{nullptr, nullptr,
                                           [e, vc](Value z) {
                                             return e->apply(e->apply(e->apply(vc, z), z), vk::refl());
                                           },
                                           "z"});
        check(ctx, t->kid[2], base_ty);
        check(ctx, t->kid[3], va);
        Value vl = en.eval(ctx.env, t->kid[3]);
        check(ctx, t->kid[4], va);
        Value vr = en.eval(ctx.env, t->kid[4]);
        check(ctx, t->kid[5], vk::eq(va, vl, vr));
        Value vp = en.eval(ctx.env, t->kid[5]);
        return en.apply(en.apply(en.apply(vc, vl), vr), vp);
      }
      case Tk::Ann: {
        check_is_type(ctx, t->kid[1]);
        Value ty = en.eval(ctx.env, t->kid[1]);
        check(ctx, t->kid[0], ty);
        return ty;
      }
    }
    fail(ErrorKind::Type, "internal: unreachable infer case");
  }

  void check(Ctx& ctx, const Term& t, const Value& expected) {
    en.tick();
    switch (t->tag) {
      case Tk::Lam: {
        Value w = en.force(expected);
        if (w->k != Vk::Pi)
          type_error(t, "a function literal cannot have type " + show_value(ctx, w));
        check_is_type(ctx, t->kid[0]);
        Value ann = en.eval(ctx.env, t->kid[0]);
        if (!en.conv(ctx.depth(), ann, w->a))
          type_error(t->kid[0], "lambda annotation " + show_value(ctx, ann) +
                                    " does not match the expected domain " + show_value(ctx, w->a));
        Value fresh = vk::local(ctx.depth(), t->name);
        Value cod = en.instantiate(w->clo, fresh);
        ctx.push(t->name, w->a);
        check(ctx, t->kid[1], cod);
        ctx.pop();
        return;
      }
      case Tk::Pair: {
        Value w = en.force(expected);
        if (w->k != Vk::Sigma)
          type_error(t, "a pair cannot have type " + show_value(ctx, w));
        check(ctx, t->kid[0], w->a);
        check(ctx, t->kid[1], en.instantiate(w->clo, en.eval(ctx.env, t->kid[0])));
        return;
      }
      case Tk::Refl: {
        Value w = en.force(expected);
        if (w->k != Vk::Eq)
          type_error(t, "refl cannot have type " + show_value(ctx, w));
        if (!en.conv(ctx.depth(), w->b, w->c))
          type_error(t, "refl endpoints are not convertible: " +
                            pretty(en.readback(ctx.depth(), w->b, true)) + " vs " +
                            pretty(en.readback(ctx.depth(), w->c, true)));
        return;
      }
      default: {
        Value got = infer(ctx, t);
        if (!en.subtype(ctx.depth(), got, expected))
          type_error(t, "type mismatch: expected " + pretty(en.readback(ctx.depth(), expected, false)) +
                            ", found " + pretty(en.readback(ctx.depth(), got, false)));
        return;
      }
    }
  }
};

}  // namespace itt
