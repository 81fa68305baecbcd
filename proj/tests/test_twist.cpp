#include "doctest.h"

#include "support.hpp"

#include <set>

using namespace pcells;
using pcells::testing::Fixture;
using pcells::testing::P;

namespace {

struct Verified {
  CellDecomposition left, two;
  TwistReport report;
  explicit Verified(const Basis& b)
      : left(decompose(b, CellSide::Left)), two(decompose(b, CellSide::TwoSided)), report(verify(left, two)) {}
};

std::pair<int, int> value_of(const Verified& v, std::uint32_t w) {
  const auto& cv = v.report.two_values().at(v.two.cell_of(w));
  REQUIRE(cv.constant);
  return {cv.x, cv.sign};
}

} // namespace

TEST_CASE("exact half twist agrees with standard-basis multiplication") {
  for (const auto& [type, p] : std::vector<std::pair<const char*, int>>{{"C2", 0}, {"C2", 2}, {"G2", 0}, {"A3", 0}}) {
    CAPTURE(type);
    Fixture f(type, p);
    const auto& b = *f.basis;
    const HeckeElt ht = half_twist(*f.sys);
    const HeckeElt ft = full_twist(*f.sys);
    for (std::uint32_t w = 0; w < f.sys->order(); ++w) {
      CHECK(act_half(b, w) == change_basis(ht * b.standard(w), b.tag(), b.kl(), b.table()));
      CHECK(act_full(b, w) == change_basis(ft * b.standard(w), b.tag(), b.kl(), b.table()));
    }
  }
}

TEST_CASE("reduced half twist equals the reduction of the exact one") {
  for (const auto& [type, p] : std::vector<std::pair<const char*, int>>{{"C2", 2}, {"B3", 0}, {"C3", 0}}) {
    CAPTURE(type);
    Fixture f(type, p);
    const auto two = decompose(*f.basis, CellSide::TwoSided);
    for (std::uint32_t w = 0; w < f.sys->order(); ++w) {
      const std::size_t c = two.cell_of(w);
      CHECK(act_half_reduced(f.basis->element(w), c, two) == ideal_reduce(act_half(*f.basis, w), c, two));
    }
  }
}

TEST_CASE("C2 eigenvalues at p = 0") {
  Fixture f("C2");
  Verified v(*f.basis);
  CHECK(v.report.all_ok());
  CHECK(value_of(v, 0) == std::pair{4, 1});
  CHECK(value_of(v, f.idx("1")) == std::pair{0, -1});
  CHECK(value_of(v, f.idx("1212")) == std::pair{-4, 1});
  CHECK(*v.report.at(f.idx("1")).schu == f.idx("121"));
  CHECK(*v.report.at(f.idx("212")).schu == f.idx("2"));
  CHECK(*v.report.at(f.idx("12")).schu == f.idx("12"));
  CHECK(stats(v.report) == StatRow{4, 3, 3, 4, 4});
  for (const auto& fc : full_check(v.report)) {
    CHECK(fc.ok);
    CHECK(fc.exponent == 2 * v.report.at(fc.w).x);
  }
}

TEST_CASE("C2 eigenvalues at p = 2") {
  Fixture f("C2", 2);
  Verified v(*f.basis);
  CHECK(v.report.all_ok());
  CHECK(value_of(v, f.idx("1")) == std::pair{0, 1});
  CHECK(value_of(v, f.idx("2")) == std::pair{0, -1});
  CHECK(*v.report.at(f.idx("121")).schu == f.idx("121"));
  CHECK(*v.report.at(f.idx("1")).schu == f.idx("1"));
  CHECK(stats(v.report) == StatRow{5, 4, 4, 6, 2});
  for (const auto& fc : full_check(v.report))
    CHECK(fc.ok);
}

TEST_CASE("signed monomial eigenvalues in rank 2 and 3") {
  const std::vector<std::pair<const char*, StatRow>> cases{
      {"G2", {4, 3, 3, 4, 8}}, {"B3", {14, 6, 6, 32, 16}}, {"C3", {14, 6, 6, 32, 16}}};
  for (const auto& [type, row] : cases) {
    CAPTURE(type);
    Fixture f(type);
    Verified v(*f.basis);
    CHECK(v.report.all_ok());
    CHECK(v.report.involution_failures().empty());
    CHECK(stats(v.report) == row);
    // x is minus the a-function plus the a-function of the w0-image cell
    const auto a = a_function_batch(*f.basis);
    for (std::uint32_t w = 0; w < f.sys->order(); ++w) {
      const auto u = f.sys->w0_translate(f.sys->element(w)).index();
      CHECK(v.report.at(w).x == a[u] - a[w]);
    }
    for (const auto& fc : full_check(v.report))
      CHECK(fc.ok);
  }
}

TEST_CASE("G2 two-sided values") {
  Fixture f("G2");
  Verified v(*f.basis);
  std::set<std::pair<int, int>> got;
  for (const auto& cv : v.report.two_values())
    got.insert({cv.x, cv.sign});
  CHECK(got == std::set<std::pair<int, int>>{{6, 1}, {0, -1}, {-6, 1}});
}

TEST_CASE("x-values swap between sts and stsuts in C3 at p = 2") {
  Fixture kl("C3");
  auto table = std::make_shared<const BasisTable>(BasisTable::builtin(*kl.sys, 2));
  Basis bp(kl.sys, kl.kl, table);
  const std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs{{kl.idx("121"), kl.idx("121321")}};
  const auto r = swap_probe(*kl.basis, bp, pairs);
  REQUIRE(r.size() == 1);
  CHECK(r[0].xa0 == -1);
  CHECK(r[0].xb0 == -3);
  CHECK(r[0].xap == -3);
  CHECK(r[0].xbp == -1);
  CHECK(r[0].swapped);

  // the p = 0 values agree with the full report
  Verified v(*kl.basis);
  const auto with = swap_probe(*kl.basis, *kl.basis, pairs, &v.report, &v.report);
  CHECK(with[0].xa0 == -1);
  CHECK(with[0].xb0 == -3);
  CHECK(!with[0].swapped);

  // partial table: exact identities over its domain
  const std::uint32_t w0 = kl.sys->longest().index();
  const std::uint32_t w0u = kl.sys->mul_gen(3, w0, Side::Right);
  HeckeElt want(*kl.sys, bp.tag());
  want.add(w0, P("v^-3"));
  want.add(w0u, P("-v^-2"));
  want.add(kl.idx("121321"), P("v^-2"));
  want.add(kl.idx("121"), P("-v^-3"));
  CHECK(act_half(bp, kl.idx("121")) == want);
  HeckeElt want2(*kl.sys, bp.tag());
  want2.add(w0, P("v^-6+v^-4+v^-2"));
  want2.add(w0u, P("-v^-3-v^-1"));
  want2.add(kl.idx("121321"), P("v^-1"));
  CHECK(act_half(bp, kl.idx("121321")) == want2);
}
