#include "doctest.h"

#include "support.hpp"

#include <filesystem>
#include <fstream>

using namespace pcells;
using pcells::testing::P;

namespace {

const char* kC2Header = "format pcan v1\ntype C2\np 2\nconvention soergel-v\ncomplete true\n";

std::string kinds(const std::vector<Violation>& v) {
  std::string out;
  for (const auto& x : v)
    out += x.kind + ";";
  return out;
}

} // namespace

TEST_CASE("identity and builtin tables") {
  auto c2 = CoxeterSystem::build(CartanSpec::parse("C2"));
  const BasisTable id = BasisTable::identity(*c2);
  CHECK(id.complete());
  CHECK(id.non_identity().empty());
  CHECK(validate(id).empty());
  CHECK(BasisTable::builtin(*c2, 0).non_identity().empty());

  const BasisTable t = BasisTable::builtin(*c2, 2);
  CHECK(t.complete());
  CHECK(validate(t).empty());
  REQUIRE(t.non_identity().size() == 1);
  CHECK(format_word(c2->word(t.non_identity()[0])) == "121");
  CHECK(t.non_perverse().empty());

  auto c3 = CoxeterSystem::build(CartanSpec::parse("C3"));
  const BasisTable p = BasisTable::builtin(*c3, 2);
  CHECK(!p.complete());
  CHECK(validate(p).empty());
  CHECK(p.domain().size() == 4);
  REQUIRE(p.non_perverse().size() == 1);
  CHECK(format_word(c3->word(p.non_perverse()[0])) == "121321");
  CHECK(!p.in_domain(c3->parse("13").index()));

  auto g2 = CoxeterSystem::build(CartanSpec::parse("G2"));
  CHECK_THROWS_AS(BasisTable::builtin(*g2, 3), PcanError);
}

TEST_CASE("c_sts in C2 at p = 2 expands as b_sts + b_s") {
  auto sys = CoxeterSystem::build(CartanSpec::parse("C2"));
  const KLTable kl = KLTable::compute(*sys);
  const BasisTable t = BasisTable::builtin(*sys, 2);
  const HeckeElt c = pcan_element(t, kl, sys->parse("121"));
  CHECK(c == kl.element(sys->parse("121")) + kl.element(sys->parse("1")));
  CHECK(bar(c) == c);
}

TEST_CASE("parse, format and re-parse are stable") {
  auto sys = CoxeterSystem::build(CartanSpec::parse("C3"));
  const BasisTable t = BasisTable::builtin(*sys, 2);
  const std::string text = format_pcan(t);
  const BasisTable back = parse_pcan(*sys, text, 2);
  CHECK(format_pcan(back) == text);
  for (std::uint32_t w : t.domain())
    CHECK(*back.row(w) == *t.row(w));
  CHECK(text.find("121321 : 1*121321 ; v^-1+v*121") != std::string::npos);
}

TEST_CASE("parser accepts comments and an omitted diagonal") {
  auto sys = CoxeterSystem::build(CartanSpec::parse("C2"));
  const std::string text = std::string("# hand written\n") + kC2Header + "121 : 1*1   # c_sts\n";
  const BasisTable t = parse_pcan(*sys, text, 2, "c2.pcan");
  CHECK(*t.row(sys->parse("121").index()) == *BasisTable::builtin(*sys, 2).row(sys->parse("121").index()));
  CHECK(t.id() == "c2.pcan");
}

TEST_CASE("parser errors") {
  auto sys = CoxeterSystem::build(CartanSpec::parse("C2"));
  auto fails = [&](const std::string& text, const std::string& needle) {
    CAPTURE(text);
    try {
      parse_pcan(*sys, text, 2, "t.pcan");
      FAIL("expected PcanError");
    } catch (const PcanError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  fails(std::string(kC2Header) + "121 : 1*1\n121 : 1*2\n", "second entry");
  fails(std::string(kC2Header) + "121 : 1*1 ; 2*1\n", "repeated term");
  fails(std::string(kC2Header) + "121 : 1\n", "POLY*WORD");
  fails(std::string(kC2Header) + "15 : 1*1\n", "t.pcan:6");
  fails("format pcan v1\ntype C3\np 2\nconvention soergel-v\ncomplete true\n", "type mismatch");
  fails("format pcan v1\ntype C2\np 3\nconvention soergel-v\ncomplete true\n", "prime mismatch");
  fails("format pcan v1\ntype C2\np 2\nconvention other\ncomplete true\n", "convention");
  fails("format pcan v2\ntype C2\np 2\nconvention soergel-v\ncomplete true\n", "format");
  fails("format pcan v1\ntype C2\np 2\nconvention soergel-v\n", "missing header 'complete'");
  fails("format pcan v1\ntype C2\np 2\nconvention soergel-v\ncomplete maybe\n", "complete");
  fails("bogus line\n", "unknown header");
}

TEST_CASE("validation reports every violated invariant") {
  auto sys = CoxeterSystem::build(CartanSpec::parse("C2"));
  std::map<std::uint32_t, KLRow> e;
  const auto w = [&](const char* s) { return sys->parse(s).index(); };
  e[w("121")] = {{w("121"), P("2")}, {w("1"), P("v")}};
  e[w("12")] = {{w("21"), P("-1")}};
  const BasisTable t = BasisTable::from_entries(*sys, 2, true, e, "bad", "test");
  const auto v = validate(t);
  const std::string k = kinds(v);
  CHECK(k.find("diagonal") != std::string::npos);
  CHECK(k.find("self-duality") != std::string::npos);
  CHECK(k.find("support") != std::string::npos);
  CHECK(k.find("nonnegativity") != std::string::npos);

  try {
    parse_pcan(*sys, std::string(kC2Header) + "121 : 1*121 ; v*1\n12 : -1*21\n", 2, "bad.pcan");
    FAIL("expected rejection");
  } catch (const PcanError& err) {
    const std::string msg = err.what();
    CHECK(msg.find("121: self-duality") != std::string::npos);
    CHECK(msg.find("12: support") != std::string::npos);
    CHECK(msg.find("12: nonnegativity") != std::string::npos);
  }
}

TEST_CASE("completeness check and files") {
  auto sys = CoxeterSystem::build(CartanSpec::parse("C3"));
  const BasisTable t = BasisTable::builtin(*sys, 2);
  const std::vector<Element> need{sys->parse("121"), sys->parse("13"), sys->longest()};
  const auto missing = completeness_check(t, need);
  REQUIRE(missing.size() == 1);
  CHECK(missing[0].str() == "13");

  const auto path = std::filesystem::temp_directory_path() / "pcells-test-c3.pcan";
  {
    std::ofstream f(path);
    f << format_pcan(t);
  }
  CHECK(load_pcan(*sys, path, 2).domain() == t.domain());
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_pcan(*sys, path), PcanError);
}
