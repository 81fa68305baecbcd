#include "doctest.h"

#include "pcells/report.hpp"
#include "support.hpp"

#include <regex>

using namespace pcells;
using pcells::testing::Fixture;

namespace {

std::size_t count_matches(const std::string& s, const std::regex& re) {
  return static_cast<std::size_t>(std::distance(std::sregex_iterator(s.begin(), s.end(), re), std::sregex_iterator()));
}

} // namespace

TEST_CASE("A1 graph has two nodes and one edge") {
  Fixture f("A1");
  const auto two = decompose(*f.basis, CellSide::TwoSided);
  const auto left = decompose(*f.basis, CellSide::Left);
  const auto rep = verify(left, two);
  const std::string dot = emit_dot(two, &rep);
  CHECK(count_matches(dot, std::regex(R"(\n  c\d+ \[label=)")) == 2);
  CHECK(count_matches(dot, std::regex(R"(c\d+ -> c\d+;)")) == 1);
  CHECK(dot.find("c0 -> c1;") != std::string::npos);
  CHECK(dot.find("[[e]]") != std::string::npos);
  CHECK(dot.find("[[w0]]") != std::string::npos);
  CHECK(dot.rfind("digraph", 0) == 0);
}

TEST_CASE("DOT labels prefer the shorter of w and w0*u") {
  auto sys = CoxeterSystem::build(CartanSpec::parse("C3"));
  CHECK(dot_label(*sys, 0) == "[[e]]");
  CHECK(dot_label(*sys, sys->parse("121").index()) == "[[121]]");
  CHECK(dot_label(*sys, sys->longest().index()) == "[[w0]]");
  const auto w0u = sys->mul_gen(3, sys->longest().index(), Side::Right);
  CHECK(dot_label(*sys, w0u) == "[[w0*3]]");
}

TEST_CASE("TSV table for C2") {
  Fixture f("C2");
  const auto two = decompose(*f.basis, CellSide::TwoSided);
  const auto left = decompose(*f.basis, CellSide::Left);
  const auto rep = verify(left, two);
  const std::string tsv = emit_tsv(make_table(two, &rep));
  CHECK(tsv == "cell\tx\tsign\tmembers\n"
               "[id]\t4\t+\te\n"
               "[1]\t0\t-\t(1, 121), (2, 212), 12, 21\n"
               "[1212]\t-4\t+\t1212\n");
  const std::string plain = emit_tsv(make_table(left));
  CHECK(plain.find("[2]\t\t\t2, 12, 212\n") != std::string::npos);
}

TEST_CASE("JSON table for C2 at p = 2") {
  Fixture f("C2", 2);
  const auto two = decompose(*f.basis, CellSide::TwoSided);
  const auto left = decompose(*f.basis, CellSide::Left);
  const auto rep = verify(left, two);
  const auto dist = distinguished(left);
  const auto j = nlohmann::json::parse(emit_json(make_table(left, &rep, &dist)));
  CHECK(j["type"] == "C2");
  CHECK(j["p"] == 2);
  CHECK(j["cells"].size() == 5);
  CHECK(j["stats"]["left_cells"] == 5);
  CHECK(j["stats"]["two_sided_cells"] == 4);
  CHECK(j["stats"]["schu_fixed"] == 6);
  CHECK(j["stats"]["schu_moving"] == 2);
  for (const auto& c : j["cells"]) {
    CHECK(c["side"] == "left");
    CHECK(c["distinguished"].size() == 1);
    CHECK(c.contains("x"));
    CHECK(c.contains("schu_pairs"));
  }
  const auto two_json = to_json(make_table(two));
  CHECK(two_json["order"].size() == 3);
  CHECK(two_json["stats"].empty());
  CHECK(two_json["cells"][0]["x"].is_null());
}
