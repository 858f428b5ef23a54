#pragma once

#include <chrono>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "check.hpp"
#include "parser.hpp"

namespace itt {

struct Options {
  long long fuel = kDefaultFuel;
  bool eta = true;
  bool json = false;
  std::string trace;
};

struct DeclResult {
  std::string file, name, kind, status;
  long long millis = 0;
};

struct FileReport {
  std::string file;
  int decls_checked = 0;
  int pragmas_passed = 0;
  int pragmas_failed = 0;
  int errors = 0;
  long long millis = 0;
};

struct RunReport {
  std::vector<FileReport> files;
  std::vector<DeclResult> decls;
  bool io_or_usage_error = false;

  bool ok() const {
    if (io_or_usage_error) return false;
    for (auto& f : files)
      if (f.errors > 0 || f.pragmas_failed > 0) return false;
    return true;
  }
  int exit_code() const { return io_or_usage_error ? 2 : (ok() ? 0 : 1); }
};

inline std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// A check session: one growing global environment shared by all files.
struct Session {
  GlobalEnv env;
  Engine eng;
  Checker chk{eng};
  Options opt;
  std::ostream& out;
  std::ostream& errs;

  Session(Options o, std::ostream& o1, std::ostream& e1) : opt(std::move(o)), out(o1), errs(e1) {
    eng.globals = &env;
    eng.eta = opt.eta;
  }

  Value eval_closed(const Term& t) { return eng.eval(nullptr, t); }

  // Definition bodies check against their declared types; axiom types check
  // as types; pragmas run against the current environment.
  void run_decl(const Decl& d, const std::string& file, RunReport& rep, FileReport& fr) {
    auto t0 = std::chrono::steady_clock::now();
    DeclResult res;
    res.file = file;
    res.name = d.name;
    res.kind = d.kind == DeclKind::Def ? "def" : d.kind == DeclKind::Axiom ? "axiom" : pragma_name(d.pk);
    res.status = "ok";

    eng.reset_fuel(opt.fuel);
    bool tracing = !opt.trace.empty() && d.name == opt.trace;
    if (tracing) {
      eng.trace = &errs;
      eng.trace_lines = 0;
      errs << "-- trace " << d.name << "\n";
    }

    try {
      Ctx ctx;
      switch (d.kind) {
        case DeclKind::Def: {
          chk.check_is_type(ctx, d.ty);
          Value vty = eng.eval(nullptr, d.ty);
          chk.check(ctx, d.body, vty);
          Value vbody = eng.eval(nullptr, d.body);
          env.add(GlobalEntry{d.name, d.ty, d.body, vty, vbody, false});
          fr.decls_checked++;
          break;
        }
        case DeclKind::Axiom: {
          chk.check_is_type(ctx, d.ty);
          Value vty = eng.eval(nullptr, d.ty);
          env.add(GlobalEntry{d.name, d.ty, nullptr, vty, nullptr, true});
          fr.decls_checked++;
          break;
        }
        case DeclKind::Pragma: {
          run_pragma(d, ctx);
          fr.pragmas_passed++;
          break;
        }
      }
    } catch (const Error& e) {
      Diagnostic diag = e.diag;
      diag.file = file;
      if (diag.span.line == 0) diag.span = d.span;
      errs << diag.render() << "\n";
      if (d.kind == DeclKind::Pragma) {
        fr.pragmas_failed++;
        res.status = "failed";
      } else {
        fr.errors++;
        res.status = "error";
      }
    }

    if (tracing) eng.trace = nullptr;
    res.millis =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    if (opt.json) {
      out << "{\"file\":\"" << json_escape(res.file) << "\",\"name\":\"" << json_escape(res.name)
          << "\",\"kind\":\"" << res.kind << "\",\"status\":\"" << res.status << "\",\"millis\":" << res.millis
          << "}\n";
    }
    rep.decls.push_back(std::move(res));
  }

  void run_pragma(const Decl& d, Ctx& ctx) {
    switch (d.pk) {
      case PragmaKind::Check: {
        chk.infer(ctx, d.t1);
        return;
      }
      case PragmaKind::Infer: {
        Value ty = chk.infer(ctx, d.t1);
        if (!opt.json) out << "#infer: " << pretty(eng.readback(0, ty, false)) << "\n";
        return;
      }
      case PragmaKind::Eval: {
        Value ty = chk.infer(ctx, d.t1);
        Value v = eval_closed(d.t1);
        if (!opt.json)
          out << "#eval: " << pretty(eng.readback(0, v, true)) << " : " << pretty(eng.readback(0, ty, false))
              << "\n";
        return;
      }
      case PragmaKind::AssertDefeq: {
        Value ty = chk.infer(ctx, d.t1);
        chk.check(ctx, d.t2, ty);
        Value v1 = eval_closed(d.t1);
        Value v2 = eval_closed(d.t2);
        if (!eng.conv(0, v1, v2))
          fail(ErrorKind::Type,
               "assert_defeq failed: " + pretty(eng.readback(0, v1, true)) + "  is not definitionally equal to  " +
                   pretty(eng.readback(0, v2, true)),
               d.span);
        return;
      }
      case PragmaKind::AssertType: {
        chk.check_is_type(ctx, d.t2);
        Value ty = eval_closed(d.t2);
        chk.check(ctx, d.t1, ty);
        return;
      }
      case PragmaKind::AssertIlltyped: {
        bool well_typed = false;
        try {
          chk.infer(ctx, d.t1);
          well_typed = true;
        } catch (const Error& e) {
          if (e.kind != ErrorKind::Type) throw;  // fuel exhaustion is not "ill-typed"
        }
        if (well_typed)
          fail(ErrorKind::Type, "assert_illtyped failed: the term type-checks", d.span);
        return;
      }
    }
  }

  // Returns false on a parse/lex error (whole file skipped).
  bool run_file(const std::string& path, RunReport& rep) {
    return run_source(path, read_file(path), rep);
  }

  bool run_source(const std::string& path, const std::string& src, RunReport& rep) {
    FileReport fr;
    fr.file = path;
    auto t0 = std::chrono::steady_clock::now();
    try {
      std::vector<Decl> decls = parse_source(src);
      for (const Decl& d : decls) run_decl(d, path, rep, fr);
    } catch (const Error& e) {
      Diagnostic diag = e.diag;
      diag.file = path;
      errs << diag.render() << "\n";
      fr.errors++;
    }
    fr.millis =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
    if (!opt.json) {
      out << path << ": " << fr.decls_checked << " declarations, " << fr.pragmas_passed << " pragmas passed, "
          << fr.pragmas_failed << " failed, " << fr.errors << " errors\n";
    }
    errs << path << ": " << fr.millis << " ms\n";
    rep.files.push_back(fr);
    return fr.errors == 0;
  }
};

// Expand a manifest (one path per line, relative to the manifest location)
// or pass .itt paths through.
inline std::vector<std::string> expand_paths(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  for (const std::string& a : args) {
    if (a.size() > 4 && a.substr(a.size() - 4) == ".txt") {
      std::string src = read_file(a);
      std::filesystem::path base = std::filesystem::path(a).parent_path();
      std::istringstream in(src);
      std::string line;
      while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        out.push_back((base / line).string());
      }
    } else {
      out.push_back(a);
    }
  }
  return out;
}

inline RunReport cmd_check(const std::vector<std::string>& paths, const Options& opt, std::ostream& out,
                           std::ostream& errs) {
  RunReport rep;
  Session s(opt, out, errs);
  try {
    std::vector<std::string> files = expand_paths(paths);
    for (const std::string& f : files) s.run_file(f, rep);
  } catch (const Error& e) {
    errs << e.diag.render() << "\n";
    rep.io_or_usage_error = true;
    return rep;
  }
  if (!opt.json) out << (rep.ok() ? "ok" : "FAIL") << "\n";
  return rep;
}

inline int cmd_eval(const std::string& path, const std::string& expr, const Options& opt, std::ostream& out,
                    std::ostream& errs) {
  RunReport rep;
  Session s(opt, out, errs);
  try {
    std::vector<std::string> files = expand_paths({path});
    bool all = true;
    for (const std::string& f : files) all = s.run_file(f, rep) && all;
    if (!rep.ok()) return 1;
    std::vector<Token> toks = tokenize(expr);
    // Reuse the declaration parser by wrapping the expression in a pragma.
    std::vector<Decl> ds = parse_source("#eval " + expr + " ;");
    Ctx ctx;
    s.eng.reset_fuel(opt.fuel);
    Value ty = s.chk.infer(ctx, ds[0].t1);
    Value v = s.eng.eval(nullptr, ds[0].t1);
    out << pretty(s.eng.readback(0, v, true)) << " : " << pretty(s.eng.readback(0, ty, false)) << "\n";
    return 0;
  } catch (const Error& e) {
    errs << e.diag.render() << "\n";
    return e.kind == ErrorKind::Io || e.kind == ErrorKind::Usage ? 2 : 1;
  }
}

inline void usage(std::ostream& errs) {
  errs << "usage: itt check [flags] <paths|manifest.txt>...\n"
          "       itt eval  [flags] <path|manifest.txt> <expr>\n"
          "flags: --fuel N     evaluation step budget per declaration (default 10000000)\n"
          "       --no-eta     disable eta rules in conversion\n"
          "       --json       print one JSON object per declaration on stdout\n"
          "       --trace NAME print conversion traces while checking declaration NAME\n";
}

inline int itt_main(std::vector<std::string> args, std::ostream& out, std::ostream& errs) {
  Options opt;
  std::vector<std::string> rest;
  std::string cmd;
  for (size_t i = 0; i < args.size(); i++) {
    const std::string& a = args[i];
    if (a == "--fuel") {
      if (i + 1 >= args.size()) { usage(errs); return 2; }
      try {
        opt.fuel = std::stoll(args[++i]);
      } catch (...) { usage(errs); return 2; }
    } else if (a == "--no-eta") {
      opt.eta = false;
    } else if (a == "--json") {
      opt.json = true;
    } else if (a == "--trace") {
      if (i + 1 >= args.size()) { usage(errs); return 2; }
      opt.trace = args[++i];
    } else if (cmd.empty()) {
      cmd = a;
    } else {
      rest.push_back(a);
    }
  }
  if (cmd == "check") {
    if (rest.empty()) { usage(errs); return 2; }
    return cmd_check(rest, opt, out, errs).exit_code();
  }
  if (cmd == "eval") {
    if (rest.size() != 2) { usage(errs); return 2; }
    return cmd_eval(rest[0], rest[1], opt, out, errs);
  }
  usage(errs);
  return 2;
}

}  // namespace itt
