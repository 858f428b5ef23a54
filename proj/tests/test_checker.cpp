#include <catch2/catch_amalgamated.hpp>

#include "micro.hpp"
#include "util.hpp"

using namespace itt;
using tutil::Kernel;

TEST_CASE("the inference rule suite checks clean") {
  Kernel k;
  REQUIRE(k.load_source(tutil::kMicroSuite, "<micro>"));
  REQUIRE(k.rep.ok());
  int judgments = 0;
  for (auto& f : k.rep.files) judgments += f.decls_checked + f.pragmas_passed;
  CHECK(judgments >= 25);
  CHECK(k.errs.str().find("error") == std::string::npos);
}

TEST_CASE("impredicativity witness") {
  Kernel k;
  REQUIRE(k.load_stdlib());
  // the naturals' type itself lives in the bottom universe
  CHECK(k.infer_ty("Nat'") == "Type");
  // and the recursor instantiates at the type being defined
  CHECK(k.well_typed("recNat' Nat' zero' succ'"));
  CHECK(k.well_typed("doubleN"));
}

TEST_CASE("checking reports readable mismatches") {
  Kernel k;
  REQUIRE(k.load_stdlib());
  try {
    k.infer_ty("succ' tt'");
    FAIL("expected a type error");
  } catch (const Error& e) {
    REQUIRE(e.kind == ErrorKind::Type);
    CHECK(e.diag.message.find("Nat'") != std::string::npos);
  }
}

TEST_CASE("soundness harness: stdlib bodies re-check against their types") {
  Kernel k;
  REQUIRE(k.load_stdlib());
  int rechecked = 0;
  for (const auto& g : k.s.env.items) {
    if (g.axiom) continue;
    Ctx ctx;
    k.s.eng.reset_fuel(k.s.opt.fuel);
    k.s.chk.check(ctx, g.body, g.vty);
    rechecked++;
  }
  CHECK(rechecked > 150);
}

TEST_CASE("subject reduction spot-check on stdlib defeq pragmas") {
  Kernel k;
  REQUIRE(k.load_stdlib());
  int checked = 0;
  for (const std::string& path : tutil::stdlib_files()) {
    for (const Decl& d : parse_source(read_file(path))) {
      if (d.kind != DeclKind::Pragma || d.pk != PragmaKind::AssertDefeq) continue;
      Ctx ctx;
      k.s.eng.reset_fuel(k.s.opt.fuel);
      Value t1 = k.s.chk.infer(ctx, d.t1);
      // the right-hand side may be a checkable-only form (a bare refl or
      // pair); the comparison only applies where both sides infer
      Value t2;
      try {
        t2 = k.s.chk.infer(ctx, d.t2);
      } catch (const Error& e) {
        if (e.kind != ErrorKind::Type) throw;
        continue;
      }
      INFO(path << ":" << d.span.line);
      CHECK(k.s.eng.conv(0, t1, t2));
      checked++;
    }
  }
  CHECK(checked >= 25);
}

TEST_CASE("declaration errors recover at declaration granularity") {
  Kernel k;
  REQUIRE(k.load_file(tutil::source_dir() + "/stdlib/00_prelude.itt"));
  bool ok = k.load_source(
      "def bad : Type := fun (x : PolyId) => x ;\n"
      "def stillFine : Type := (X : Type) -> X -> X ;\n"
      "#check stillFine ;\n",
      "<recovery>");
  CHECK_FALSE(ok);
  CHECK(k.rep.files.back().errors == 1);
  CHECK(k.rep.files.back().decls_checked == 1);
  CHECK(k.rep.files.back().pragmas_passed == 1);
}

TEST_CASE("checked environments refuse duplicate names") {
  Kernel k;
  REQUIRE(k.load_source("def a : Type := (X : Type) -> X -> X ;", "<one>"));
  bool ok = k.load_source("def a : Type := (X : Type) -> X -> X ;", "<two>");
  CHECK_FALSE(ok);
}
