#pragma once

#include <set>
#include <string>
#include <vector>

#include "term.hpp"

namespace itt {

// Deterministic pretty printer for the surface grammar. Binder hints are
// freshened with numeric suffixes when they would shadow an enclosing
// binder, so output re-parses to an alpha-equal term.
class Printer {
 public:
  std::string show(const Term& t) {
    std::vector<std::string> scope;
    return go(t, scope, 0);
  }

 private:
  // prec: 0 = term (arrows, fun, Sig), 1 = application, 2 = atom
  std::string go(const Term& t, std::vector<std::string>& sc, int prec) {
    switch (t->tag) {
      case Tk::Var: {
        int i = (int)sc.size() - 1 - t->idx;
        if (i < 0) return "?" + std::to_string(t->idx);
        return sc[i];
      }
      case Tk::Univ:
        return show_level(t->lvl);
      case Tk::Global:
        return t->name;
      case Tk::Refl:
        return "refl";
      case Tk::Pi: {
        std::string s;
        if (!occurs_free(t->kid[1], 0)) {
          std::string dom = go(t->kid[0], sc, 1);
          sc.push_back("");
          s = dom + " -> " + go(t->kid[1], sc, 0);
          sc.pop_back();
        } else {
          std::string dom = go(t->kid[0], sc, 0);
          std::string x = freshen(t->name, sc);
          sc.push_back(x);
          s = "(" + x + " : " + dom + ") -> " + go(t->kid[1], sc, 0);
          sc.pop_back();
        }
        return wrap(s, prec > 0);
      }
      case Tk::Lam: {
        // Consecutive lambdas print as one fun with several binder groups.
        std::string s = "fun";
        const TermNode* cur = t.get();
        int pushed = 0;
        while (true) {
          std::string x = freshen(cur->name, sc);
          std::string ann = go(cur->kid[0], sc, 0);
          s += " (" + x + " : " + ann + ")";
          sc.push_back(x);
          pushed++;
          if (cur->kid[1]->tag == Tk::Lam)
            cur = cur->kid[1].get();
          else
            break;
        }
        s += " => " + go(cur->kid[1], sc, 0);
        while (pushed-- > 0) sc.pop_back();
        return wrap(s, prec > 0);
      }
      case Tk::Sigma: {
        std::string x = freshen(t->name, sc);
        std::string a = go(t->kid[0], sc, 0);
        sc.push_back(x);
        std::string s = "Sig (" + x + " : " + a + ") , " + go(t->kid[1], sc, 0);
        sc.pop_back();
        return wrap(s, prec > 0);
      }
      case Tk::App: {
        std::string s = go(t->kid[0], sc, 1) + " " + go(t->kid[1], sc, 2);
        return wrap(s, prec > 1);
      }
      case Tk::Pair:
        return "(" + go(t->kid[0], sc, 0) + " , " + go(t->kid[1], sc, 0) + ")";
      case Tk::Fst:
        return wrap("fst " + go(t->kid[0], sc, 2), prec > 1);
      case Tk::Snd:
        return wrap("snd " + go(t->kid[0], sc, 2), prec > 1);
      case Tk::Eq:
        return wrap("Eq " + go(t->kid[0], sc, 2) + " " + go(t->kid[1], sc, 2) + " " + go(t->kid[2], sc, 2), prec > 1);
      case Tk::J: {
        std::string s = "J";
        for (auto& k : t->kid) s += " " + go(k, sc, 2);
        return wrap(s, prec > 1);
      }
      case Tk::Ann:
        return "(" + go(t->kid[0], sc, 0) + " : " + go(t->kid[1], sc, 0) + ")";
    }
    return "?";
  }

  static std::string wrap(const std::string& s, bool paren) { return paren ? "(" + s + ")" : s; }

  static std::string freshen(const std::string& hint, const std::vector<std::string>& sc) {
    std::string base = hint.empty() ? "x" : hint;
    bool taken = false;
    for (auto& s : sc)
      if (s == base) taken = true;
    if (!taken) return base;
    for (int i = 1;; i++) {
      std::string cand = base + std::to_string(i);
      bool t2 = false;
      for (auto& s : sc)
        if (s == cand) t2 = true;
      if (!t2) return cand;
    }
  }
};

inline std::string pretty(const Term& t) { return Printer{}.show(t); }

}  // namespace itt
