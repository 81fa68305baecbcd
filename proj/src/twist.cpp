#include "pcells/twist.hpp"

#include <algorithm>
#include <set>

namespace pcells {

namespace {

HeckeElt half_twist_kl(const KLTable& kl, HeckeElt f) {
  const auto& sys = kl.system();
  const auto& word = sys.word(sys.longest().index());
  for (auto it = word.rbegin(); it != word.rend(); ++it)
    f = kl_mul_std_gen(kl, *it, f, Side::Left);
  return f;
}

} // namespace

HeckeElt act_half(const Basis& basis, std::uint32_t w) {
  return basis.from_kl(half_twist_kl(basis.kl(), basis.to_kl(basis.element(w))));
}

HeckeElt act_full(const Basis& basis, std::uint32_t w) {
  const KLTable& kl = basis.kl();
  return basis.from_kl(half_twist_kl(kl, half_twist_kl(kl, basis.to_kl(basis.element(w)))));
}

HeckeElt act_half_reduced(const HeckeElt& h, std::size_t cell, const CellDecomposition& two) {
  const Basis& basis = two.basis();
  const auto& sys = basis.system();
  const auto& word = sys.word(sys.longest().index());
  HeckeElt f = h;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    // H_s = b_s - v
    HeckeElt g = basis.gen_action(*it, f, Side::Left);
    for (const auto& [y, c] : f.coeffs())
      g.add(y, c, -1, 1);
    HeckeElt pruned(sys, g.basis());
    for (const auto& [y, c] : g.coeffs())
      if (!two.strictly_below(two.cell_of(y), cell))
        pruned.add(y, c);
    f = std::move(pruned);
  }
  return ideal_reduce(f, cell, two);
}

EigenDatum eigen_extract(std::uint32_t w, const CellDecomposition& left, const CellDecomposition& two) {
  const auto& sys = two.system();
  EigenDatum d;
  d.w = w;
  d.cell = two.cell_of(w);
  d.left_cell = left.cell_of(w);
  HeckeElt r(sys);
  try {
    r = act_half_reduced(two.basis().element(w), d.cell, two);
  } catch (const CellError& e) {
    d.kind = "incomparable";
    d.details = e.what();
    return d;
  }
  if (r.size() != 1) {
    d.kind = r.is_zero() ? "zero" : "multiple-terms";
    d.details = "H_w0 c_" + format_word(sys.word(w)) + " = " + (r.is_zero() ? "0" : r.str()) +
                " modulo lower cells";
    return d;
  }
  const auto& [y, f] = *r.coeffs().begin();
  const auto cls = classify(f);
  if (!cls.signed_monomial) {
    d.kind = "non-monomial";
    d.details = "coefficient " + format(f) + " on c_" + format_word(sys.word(y));
    return d;
  }
  d.x = cls.signed_monomial->exp;
  d.sign = cls.signed_monomial->sign;
  d.schu = y;
  if (left.cell_of(y) != d.left_cell) {
    d.kind = "left-cell";
    d.details = "survivor " + format_word(sys.word(y)) + " lies in left cell " + left.label(left.cell_of(y)) +
                ", not " + left.label(d.left_cell);
    return d;
  }
  d.ok = true;
  return d;
}

namespace {

std::vector<CellValue> consolidate(const CellDecomposition& dec, const std::vector<EigenDatum>& data) {
  std::vector<CellValue> out;
  for (std::size_t c = 0; c < dec.size(); ++c) {
    CellValue v;
    v.cell = c;
    bool first = true;
    for (std::uint32_t w : dec.members(c)) {
      const auto& d = data[w];
      if (!d.schu) {
        v.constant = false;
        continue;
      }
      if (first) {
        v.x = d.x;
        v.sign = d.sign;
        first = false;
      } else if (d.x != v.x || d.sign != v.sign) {
        v.constant = false;
      }
    }
    out.push_back(v);
  }
  return out;
}

} // namespace

TwistReport verify(const CellDecomposition& left, const CellDecomposition& two) {
  if (&left.basis() != &two.basis())
    throw CellError("left and two-sided decompositions use different bases");
  if (left.side() != CellSide::Left || two.side() != CellSide::TwoSided)
    throw CellError("verify needs a left and a two-sided decomposition");
  const auto& sys = two.system();
  TwistReport r;
  r.left_ = &left;
  r.two_ = &two;
  for (std::uint32_t w = 0; w < sys.order(); ++w)
    r.data_.push_back(eigen_extract(w, left, two));
  r.left_values_ = consolidate(left, r.data_);
  r.two_values_ = consolidate(two, r.data_);
  for (const auto& d : r.data_) {
    if (!d.schu)
      continue;
    const auto& back = r.data_[*d.schu];
    if (!back.schu || *back.schu != d.w)
      r.involution_failures_.push_back(d.w);
    if (d.ok)
      ++(*d.schu == d.w ? r.fixed_ : r.moving_);
  }
  for (const auto& [lo, up] : two.hasse()) {
    const auto& a = r.two_values_[lo];
    const auto& b = r.two_values_[up];
    if (a.constant && b.constant && a.x > b.x)
      r.x_reversals_.push_back({lo, up});
  }
  return r;
}

std::size_t TwistReport::unique_pairs() const {
  std::set<std::pair<int, int>> s;
  for (const auto& v : two_values_)
    if (v.constant)
      s.insert({v.x, v.sign});
  return s.size();
}

std::vector<std::string> TwistReport::violations() const {
  std::vector<std::string> out;
  const auto& sys = two_->system();
  for (const auto& d : data_)
    if (!d.ok)
      out.push_back(format_word(sys.word(d.w)) + ": " + d.kind + ": " + d.details);
  for (const auto& v : left_values_)
    if (!v.constant)
      out.push_back("left cell " + left_->label(v.cell) + ": (x, sign) not constant");
  for (const auto& v : two_values_)
    if (!v.constant)
      out.push_back("two-sided cell " + two_->label(v.cell) + ": (x, sign) not constant");
  for (std::uint32_t w : involution_failures_)
    out.push_back(format_word(sys.word(w)) + ": Schu is not an involution here");
  return out;
}

std::vector<FullCheck> full_check(const TwistReport& report) {
  const auto& two = report.two();
  const Basis& basis = two.basis();
  std::vector<FullCheck> out;
  for (const auto& d : report.data()) {
    FullCheck fc;
    fc.w = d.w;
    if (!d.ok) {
      fc.details = "half-twist datum is a violation";
      out.push_back(fc);
      continue;
    }
    HeckeElt once = act_half_reduced(basis.element(d.w), d.cell, two);
    HeckeElt twice = act_half_reduced(once, d.cell, two);
    HeckeElt expected(basis.system(), basis.tag());
    expected.add(d.w, LaurentPoly::v(2 * d.x));
    fc.ok = twice == expected;
    fc.exponent = 2 * d.x;
    if (!fc.ok)
      fc.details = "H_w0^2 c_w = " + twice.str() + " modulo lower cells, expected " + expected.str();
    out.push_back(std::move(fc));
  }
  return out;
}

StatRow stats(const TwistReport& report) {
  return {report.left().size(), report.two().size(), report.unique_pairs(), report.fixed(), report.moving()};
}

namespace {

std::optional<int> probe_x(const Basis& basis, const TwistReport* report, std::uint32_t w,
                           std::string& details) {
  const auto& sys = basis.system();
  if (report) {
    const auto& d = report->at(w);
    if (d.ok)
      return d.x;
    details += format_word(sys.word(w)) + ": " + d.details + "; ";
    return std::nullopt;
  }
  try {
    const LaurentPoly f = act_half(basis, w).coeff(w);
    const auto cls = classify(f);
    if (cls.signed_monomial)
      return cls.signed_monomial->exp;
    details += format_word(sys.word(w)) + ": diagonal coefficient " + format(f) + " is not a signed monomial; ";
  } catch (const PartialTableError& e) {
    details += std::string(e.what()) + "; ";
  }
  return std::nullopt;
}

} // namespace

std::vector<SwapEntry> swap_probe(const Basis& basis0, const Basis& basisp,
                                  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs,
                                  const TwistReport* report0, const TwistReport* reportp) {
  if (&basis0.system() != &basisp.system())
    throw CellError("swap_probe needs bases over one Coxeter system");
  std::vector<SwapEntry> out;
  for (const auto& [a, b] : pairs) {
    SwapEntry e;
    e.a = a;
    e.b = b;
    e.xa0 = probe_x(basis0, report0, a, e.details);
    e.xb0 = probe_x(basis0, report0, b, e.details);
    e.xap = probe_x(basisp, reportp, a, e.details);
    e.xbp = probe_x(basisp, reportp, b, e.details);
    e.swapped = e.xa0 && e.xb0 && e.xap && e.xbp && *e.xa0 != *e.xb0 && *e.xa0 == *e.xbp && *e.xb0 == *e.xap;
    out.push_back(std::move(e));
  }
  return out;
}

} // namespace pcells
