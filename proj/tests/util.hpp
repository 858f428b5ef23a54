#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "itt/driver.hpp"

namespace tutil {

using namespace itt;

inline std::string source_dir() { return ITT_SOURCE_DIR; }

inline std::vector<std::string> stdlib_files() {
  return {
      source_dir() + "/stdlib/00_prelude.itt",  source_dir() + "/stdlib/01_systemf.itt",
      source_dir() + "/stdlib/02_nat.itt",      source_dir() + "/stdlib/03_list.itt",
      source_dir() + "/stdlib/04_quotient.itt", source_dir() + "/stdlib/05_exists.itt",
      source_dir() + "/stdlib/06_stream.itt",   source_dir() + "/stdlib/07_wtypes.itt",
      source_dir() + "/stdlib/08_mtypes.itt",
  };
}

// A loaded checking session with string-based helpers for the tests.
struct Kernel {
  std::ostringstream out, errs;
  Session s;
  RunReport rep;

  explicit Kernel(Options o = {}) : s(o, out, errs) {}

  bool load_file(const std::string& path) { return s.run_file(path, rep); }
  bool load_source(const std::string& src, const std::string& name = "<test>") {
    return s.run_source(name, src, rep);
  }
  bool load_stdlib() {
    bool ok = true;
    for (auto& f : stdlib_files()) ok = load_file(f) && ok;
    return ok && rep.ok();
  }

  Term parse_term(const std::string& expr) {
    std::vector<Decl> ds = parse_source("#check " + expr + " ;");
    return ds[0].t1;
  }

  // Pretty beta-delta normal form of a closed expression.
  std::string nf(const std::string& expr) {
    Term t = parse_term(expr);
    Ctx ctx;
    s.eng.reset_fuel(s.opt.fuel);
    s.chk.infer(ctx, t);
    return pretty(s.eng.readback(0, s.eng.eval(nullptr, t), true));
  }

  std::string infer_ty(const std::string& expr) {
    Term t = parse_term(expr);
    Ctx ctx;
    s.eng.reset_fuel(s.opt.fuel);
    return pretty(s.eng.readback(0, s.chk.infer(ctx, t), false));
  }

  bool well_typed(const std::string& expr) {
    try {
      Term t = parse_term(expr);
      Ctx ctx;
      s.eng.reset_fuel(s.opt.fuel);
      s.chk.infer(ctx, t);
      return true;
    } catch (const Error& e) {
      if (e.kind != ErrorKind::Type) throw;
      return false;
    }
  }

  bool defeq(const std::string& a, const std::string& b) {
    Term ta = parse_term(a);
    Term tb = parse_term(b);
    Ctx ctx;
    s.eng.reset_fuel(s.opt.fuel);
    Value ty = s.chk.infer(ctx, ta);
    s.chk.check(ctx, tb, ty);
    return s.eng.conv(0, s.eng.eval(nullptr, ta), s.eng.eval(nullptr, tb));
  }

  Value eval(const std::string& expr) {
    Term t = parse_term(expr);
    Ctx ctx;
    s.eng.reset_fuel(s.opt.fuel);
    s.chk.infer(ctx, t);
    return s.eng.eval(nullptr, t);
  }
};

// Extract a Church numeral's value from a fully evaluated kernel term
// fun (X : Type) (z : X) (s : X -> X) => s (s ... z); returns -1 on shape
// mismatch.
inline int church_value(const Term& t) {
  const TermNode* cur = t.get();
  int lams = 0;
  while (cur->tag == Tk::Lam && lams < 3) {
    cur = cur->kid[1].get();
    lams++;
  }
  if (lams != 3) return -1;
  int n = 0;
  while (cur->tag == Tk::App) {
    if (cur->kid[0]->tag != Tk::Var || cur->kid[0]->idx != 0) return -1;
    cur = cur->kid[1].get();
    n++;
  }
  if (cur->tag != Tk::Var || cur->idx != 1) return -1;
  return n;
}

}  // namespace tutil
