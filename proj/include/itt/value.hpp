#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "term.hpp"

namespace itt {

struct ValueNode;
using Value = std::shared_ptr<const ValueNode>;

struct EnvNode {
  Value v;
  std::shared_ptr<const EnvNode> next;
};
using Env = std::shared_ptr<const EnvNode>;

inline Env env_cons(Value v, Env e) {
  auto n = std::make_shared<EnvNode>();
  n->v = std::move(v);
  n->next = std::move(e);
  return n;
}
inline const Value& env_lookup(const Env& e, int idx) {
  const EnvNode* p = e.get();
  while (idx > 0 && p) {
    p = p->next.get();
    idx--;
  }
  if (!p) fail(ErrorKind::Type, "internal: de Bruijn index escapes environment");
  return p->v;
}

// A closure binding one variable: either a term under an environment, or a
// host-level function (used by the checker to synthesize types).
struct Closure {
  Term body;
  Env env;
  std::function<Value(Value)> fn;
  std::string hint;
};

// Deferred value for call-by-need delta unfolding; memoized.
struct Lazy {
  mutable std::optional<Value> memo;
  std::function<Value()> make;
  const Value& force() const {
    if (!memo) memo = make();
    return *memo;
  }
};
using LazyPtr = std::shared_ptr<const Lazy>;

inline LazyPtr lazy_of(std::function<Value()> f) {
  auto l = std::make_shared<Lazy>();
  l->make = std::move(f);
  return l;
}
inline LazyPtr lazy_ready(Value v) {
  auto l = std::make_shared<Lazy>();
  l->memo = std::move(v);
  return l;
}

enum class Vk { Univ, Pi, Lam, Sigma, Pair, Eq, Refl, Neut };
enum class Ek { App, Fst, Snd, J };

// An elimination frame on a neutral spine. For J the frame carries the
// non-subject arguments (ty, motive, base, lhs, rhs); the stuck proof is the
// spine's head side.
struct Elim {
  Ek k;
  Value arg;                  // App
  std::array<Value, 5> j{};   // J: ty, motive, base, lhs, rhs
};

struct ValueNode {
  Vk k;
  Level lvl{};          // Univ
  Value a, b, c;        // Pi: a=dom; Sigma: a=fst; Pair: a,b; Eq: a=ty,b=lhs,c=rhs; Lam: a=annotation type
  Closure clo;          // Pi codomain / Lam body / Sigma second
  // Neutral data: local head (de Bruijn level) or global head by name.
  int head_lvl = -1;
  std::string head_name;
  std::vector<Elim> spine;
  LazyPtr unfold;       // present iff the head is a defined global
};

namespace vk {

inline Value univ(Level l) {
  auto n = std::make_shared<ValueNode>();
  n->k = Vk::Univ;
  n->lvl = l;
  return n;
}
inline Value pi(Value dom, Closure cod) {
  auto n = std::make_shared<ValueNode>();
  n->k = Vk::Pi;
  n->a = std::move(dom);
  n->clo = std::move(cod);
  return n;
}
inline Value lam(Value ann, Closure body) {
  auto n = std::make_shared<ValueNode>();
  n->k = Vk::Lam;
  n->a = std::move(ann);
  n->clo = std::move(body);
  return n;
}
inline Value sigma(Value fst, Closure snd) {
  auto n = std::make_shared<ValueNode>();
  n->k = Vk::Sigma;
  n->a = std::move(fst);
  n->clo = std::move(snd);
  return n;
}
inline Value pair(Value a, Value b) {
  auto n = std::make_shared<ValueNode>();
  n->k = Vk::Pair;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}
inline Value eq(Value ty, Value l, Value r) {
  auto n = std::make_shared<ValueNode>();
  n->k = Vk::Eq;
  n->a = std::move(ty);
  n->b = std::move(l);
  n->c = std::move(r);
  return n;
}
inline Value refl() {
  auto n = std::make_shared<ValueNode>();
  n->k = Vk::Refl;
  return n;
}
inline Value local(int lvl, std::string hint = "") {
  auto n = std::make_shared<ValueNode>();
  n->k = Vk::Neut;
  n->head_lvl = lvl;
  n->head_name = std::move(hint);
  return n;
}
inline Value global_neutral(std::string name, LazyPtr unfold) {
  auto n = std::make_shared<ValueNode>();
  n->k = Vk::Neut;
  n->head_name = std::move(name);
  n->unfold = std::move(unfold);
  return n;
}
inline Value push_elim(const Value& neut, Elim e, LazyPtr unfold) {
  auto n = std::make_shared<ValueNode>(*neut);
  n->spine.push_back(std::move(e));
  n->unfold = std::move(unfold);
  return n;
}

}  // namespace vk

// One checked global declaration. Axioms have no body and never unfold.
struct GlobalEntry {
  std::string name;
  Term ty;
  Term body;  // null for axioms
  Value vty;
  Value vbody;  // null for axioms
  bool axiom = false;
};

struct GlobalEnv {
  std::vector<GlobalEntry> items;
  std::unordered_map<std::string, int> index;

  const GlobalEntry* find(const std::string& n) const {
    auto it = index.find(n);
    return it == index.end() ? nullptr : &items[it->second];
  }
  void add(GlobalEntry e) {
    if (index.count(e.name)) fail(ErrorKind::Type, "duplicate definition name '" + e.name + "'");
    index[e.name] = (int)items.size();
    items.push_back(std::move(e));
  }
};

}  // namespace itt
