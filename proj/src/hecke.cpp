#include "pcells/hecke.hpp"

#include "pcells/pcan.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

namespace pcells {

std::string to_string(const BasisTag& tag) {
  switch (tag.kind) {
  case BasisKind::Standard: return "standard";
  case BasisKind::KL: return "kl";
  case BasisKind::PCan: return "pcan(p=" + std::to_string(tag.p) + "," + tag.table_id + ")";
  }
  return "?";
}

namespace {
std::string join_words(const std::vector<std::string>& words) {
  std::string s;
  for (const auto& w : words)
    s += (s.empty() ? "" : ", ") + w;
  return s;
}
} // namespace

PartialTableError::PartialTableError(std::vector<std::string> missing)
    : HeckeError("partial table: no basis row for " + join_words(missing)),
      missing_(std::move(missing)) {}

// ---------------------------------------------------------------------------
// HeckeElt

HeckeElt::HeckeElt(const CoxeterSystem& system, BasisTag basis, Coeffs coeffs)
    : system_(&system), basis_(std::move(basis)), coeffs_(std::move(coeffs)) {
  std::erase_if(coeffs_, [](const auto& kv) { return kv.second.is_zero(); });
}

LaurentPoly HeckeElt::coeff(std::uint32_t w) const {
  auto it = coeffs_.find(w);
  return it == coeffs_.end() ? LaurentPoly{} : it->second;
}

LaurentPoly HeckeElt::coeff(const Element& w) const {
  if (w.system() != system_)
    throw HeckeError("element from a different Coxeter system");
  return coeff(w.index());
}

void HeckeElt::add(std::uint32_t w, const LaurentPoly& f, const Integer& c, int shift) {
  if (f.is_zero() || c == 0)
    return;
  auto [it, inserted] = coeffs_.try_emplace(w);
  it->second.add_scaled(f, c, shift);
  if (it->second.is_zero())
    coeffs_.erase(it);
}

void HeckeElt::add(const Element& w, const LaurentPoly& f) {
  if (w.system() != system_)
    throw HeckeError("element from a different Coxeter system");
  add(w.index(), f);
}

void HeckeElt::check_compatible(const HeckeElt& o) const {
  if (system_ != o.system_)
    throw HeckeError("Hecke elements from different Coxeter systems");
  if (!(basis_ == o.basis_))
    throw HeckeError("Hecke elements in different bases: " + to_string(basis_) + " vs " +
                     to_string(o.basis_));
}

HeckeElt& HeckeElt::operator+=(const HeckeElt& o) {
  check_compatible(o);
  for (const auto& [w, f] : o.coeffs_)
    add(w, f);
  return *this;
}

HeckeElt& HeckeElt::operator-=(const HeckeElt& o) {
  check_compatible(o);
  for (const auto& [w, f] : o.coeffs_)
    add(w, f, -1);
  return *this;
}

HeckeElt& HeckeElt::operator*=(const LaurentPoly& f) {
  if (f.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  for (auto& [w, g] : coeffs_)
    g = g * f;
  return *this;
}

std::string HeckeElt::str() const {
  if (coeffs_.empty())
    return "0";
  std::string out;
  // highest element first, matching how expansions are usually written
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    const auto terms = it->second.terms();
    const bool negative = std::all_of(terms.begin(), terms.end(), [](const auto& t) { return t.coeff < 0; });
    const std::string poly = format(negative ? -it->second : it->second);
    const bool compound = it->second.size() > 1;
    if (!out.empty())
      out += negative ? " - " : " + ";
    else if (negative)
      out += "-";
    out += compound ? "(" + poly + ")" : poly;
    out += "*" + format_word(system_->word(it->first));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Standard basis arithmetic

HeckeElt std_of(const Element& w) {
  HeckeElt h(*w.system());
  h.add(w.index(), LaurentPoly(1));
  return h;
}

HeckeElt unit(const CoxeterSystem& system) { return std_of(system.identity()); }

HeckeElt mul_std_gen(const HeckeElt& h, int s, Side side) {
  if (h.basis().kind != BasisKind::Standard)
    throw HeckeError("mul_std_gen expects a standard-basis element");
  const auto& sys = h.system();
  sys.generator(s);
  HeckeElt out(sys);
  for (const auto& [x, f] : h.coeffs()) {
    const std::uint32_t y = sys.mul_gen(s, x, side);
    out.add(y, f);
    if (sys.length(y) < sys.length(x)) {
      out.add(x, f, 1, -1);
      out.add(x, f, -1, 1);
    }
  }
  return out;
}

HeckeElt operator*(const HeckeElt& a, const HeckeElt& b) {
  if (&a.system() != &b.system())
    throw HeckeError("Hecke elements from different Coxeter systems");
  if (a.basis().kind != BasisKind::Standard || b.basis().kind != BasisKind::Standard)
    throw HeckeError("multiplication is defined on standard-basis elements");
  const auto& sys = a.system();

  // a * H_y, memoized along ShortLex prefixes of y
  std::map<std::uint32_t, HeckeElt> memo;
  std::function<const HeckeElt&(std::uint32_t)> times = [&](std::uint32_t y) -> const HeckeElt& {
    if (auto it = memo.find(y); it != memo.end())
      return it->second;
    if (y == 0)
      return memo.emplace(0, a).first->second;
    const int s = sys.word(y).back();
    HeckeElt next = mul_std_gen(times(sys.mul_gen(s, y, Side::Right)), s, Side::Right);
    return memo.emplace(y, std::move(next)).first->second;
  };

  HeckeElt out(sys);
  for (const auto& [y, g] : b.coeffs())
    for (const auto& [x, f] : times(y).coeffs())
      out.add(x, f * g);
  return out;
}

HeckeElt bar(const HeckeElt& h) {
  if (h.basis().kind != BasisKind::Standard)
    throw HeckeError("bar expects a standard-basis element");
  const auto& sys = h.system();
  // bar(H_x) = bar(H_{xs}) * (H_s + v - v^-1) for the last letter s of x
  std::map<std::uint32_t, HeckeElt> memo;
  std::function<const HeckeElt&(std::uint32_t)> bar_std = [&](std::uint32_t x) -> const HeckeElt& {
    if (auto it = memo.find(x); it != memo.end())
      return it->second;
    if (x == 0)
      return memo.emplace(0, unit(sys)).first->second;
    const int s = sys.word(x).back();
    const HeckeElt& prev = bar_std(sys.mul_gen(s, x, Side::Right));
    HeckeElt next = mul_std_gen(prev, s, Side::Right);
    for (const auto& [y, f] : prev.coeffs()) {
      next.add(y, f, 1, 1);
      next.add(y, f, -1, -1);
    }
    return memo.emplace(x, std::move(next)).first->second;
  };

  HeckeElt out(sys);
  for (const auto& [x, f] : h.coeffs()) {
    const LaurentPoly fb = f.bar();
    for (const auto& [y, g] : bar_std(x).coeffs())
      out.add(y, fb * g);
  }
  return out;
}

HeckeElt half_twist(const CoxeterSystem& system) { return std_of(system.longest()); }

HeckeElt full_twist(const CoxeterSystem& system) {
  const HeckeElt ht = half_twist(system);
  return ht * ht;
}

// ---------------------------------------------------------------------------
// KL table

KLTable KLTable::compute(const CoxeterSystem& sys) {
  KLTable t;
  t.system_ = &sys;
  t.provenance_ = "pcells klcache v1 computed " + sys.spec().label();
  const std::size_t N = sys.order();
  t.rows_.reserve(N);
  t.mu_.reserve(N);

  std::vector<LaurentPoly> scratch(N);
  std::vector<char> touched(N, 0);
  std::vector<std::uint32_t> touched_list;
  auto bump = [&](std::uint32_t x, const LaurentPoly& f, const Integer& c, int shift) {
    if (!touched[x]) {
      touched[x] = 1;
      touched_list.push_back(x);
    }
    scratch[x].add_scaled(f, c, shift);
  };

  t.rows_.push_back({{0u, LaurentPoly(1)}});
  t.build_mu(0);

  // Elements are ordered by length, so every row used below lies in a
  // lower stratum and is already final.
  for (std::uint32_t w = 1; w < N; ++w) {
    const int s = sys.word(w)[0];
    const std::uint32_t u = sys.mul_gen(s, w, Side::Left);

    // b_s * b_u: coefficient at x is h_{sx,u} + v^{-1 or +1} h_{x,u}
    for (const auto& [y, h] : t.rows_[u]) {
      const std::uint32_t sy = sys.mul_gen(s, y, Side::Left);
      bump(sy, h, 1, 0);
      bump(y, h, 1, sys.length(sy) < sys.length(y) ? -1 : 1);
    }
    for (const auto& [z, m] : t.mu_[u]) {
      if (!sys.is_descent(s, z, Side::Left))
        continue;
      for (const auto& [x, h] : t.rows_[z])
        bump(x, h, -m, 0);
    }

    std::sort(touched_list.begin(), touched_list.end());
    KLRow row;
    for (auto x : touched_list) {
      if (!scratch[x].is_zero())
        row.emplace_back(x, std::move(scratch[x]));
      scratch[x] = LaurentPoly{};
      touched[x] = 0;
    }
    touched_list.clear();
    t.rows_.push_back(std::move(row));
    t.build_mu(w);
  }
  return t;
}

KLTable KLTable::from_rows(const CoxeterSystem& sys, std::vector<KLRow> rows, std::string provenance) {
  KLTable t;
  t.system_ = &sys;
  t.rows_ = std::move(rows);
  t.provenance_ = std::move(provenance);
  t.mu_.reserve(t.rows_.size());
  for (std::uint32_t w = 0; w < t.rows_.size(); ++w)
    t.build_mu(w);
  return t;
}

void KLTable::build_mu(std::uint32_t w) {
  MuRow mu;
  for (const auto& [z, h] : rows_[w]) {
    if (z == w)
      continue;
    Integer c = h.coeff(1);
    if (c != 0)
      mu.emplace_back(z, std::move(c));
  }
  if (mu_.size() <= w)
    mu_.resize(w + 1);
  mu_[w] = std::move(mu);
}

LaurentPoly KLTable::h(std::uint32_t x, std::uint32_t w) const {
  const auto& r = rows_.at(w);
  auto it = std::lower_bound(r.begin(), r.end(), x,
                             [](const auto& kv, std::uint32_t key) { return kv.first < key; });
  return (it != r.end() && it->first == x) ? it->second : LaurentPoly{};
}

Integer KLTable::mu(std::uint32_t z, std::uint32_t w) const {
  const auto& r = mu_.at(w);
  auto it = std::lower_bound(r.begin(), r.end(), z,
                             [](const auto& kv, std::uint32_t key) { return kv.first < key; });
  return (it != r.end() && it->first == z) ? it->second : Integer(0);
}

HeckeElt KLTable::element(const Element& w) const {
  if (w.system() != system_)
    throw HeckeError("element from a different Coxeter system");
  HeckeElt h(*system_);
  for (const auto& [x, f] : row(w.index()))
    h.add(x, f);
  return h;
}

HeckeElt kl_mul_gen(const KLTable& kl, int s, const HeckeElt& f, Side side) {
  if (f.basis().kind != BasisKind::KL)
    throw HeckeError("kl_mul_gen expects a KL-basis element");
  const auto& sys = kl.system();
  HeckeElt out(sys, f.basis());
  for (const auto& [y, g] : f.coeffs()) {
    if (sys.is_descent(s, y, side)) {
      out.add(y, g, 1, 1);
      out.add(y, g, 1, -1);
      continue;
    }
    out.add(sys.mul_gen(s, y, side), g);
    for (const auto& [z, m] : kl.mu_row(y))
      if (sys.is_descent(s, z, side))
        out.add(z, g, m);
  }
  return out;
}

HeckeElt kl_mul_std_gen(const KLTable& kl, int s, const HeckeElt& f, Side side) {
  HeckeElt out = kl_mul_gen(kl, s, f, side);
  for (const auto& [y, g] : f.coeffs())
    out.add(y, g, -1, 1);
  return out;
}

std::vector<std::string> validate_kl(const KLTable& kl, std::size_t exhaustive_bar_limit) {
  const auto& sys = kl.system();
  const std::size_t N = sys.order();
  std::vector<std::string> issues;
  if (kl.built() != N) {
    issues.push_back("table has " + std::to_string(kl.built()) + " rows, group order is " +
                     std::to_string(N));
    return issues;
  }

  for (std::uint32_t w = 0; w < N; ++w) {
    const std::string ws = format_word(sys.word(w));
    bool diag = false;
    for (const auto& [x, h] : kl.row(w)) {
      if (x == w) {
        diag = true;
        if (h != LaurentPoly(1))
          issues.push_back(ws + ": coefficient of H_" + ws + " is " + format(h) + ", expected 1");
        continue;
      }
      const std::string xs = format_word(sys.word(x));
      if (!sys.bruhat_leq(x, w))
        issues.push_back(ws + ": term H_" + xs + " is not below in Bruhat order");
      else if (h.is_zero() || h.val() < 1)
        issues.push_back(ws + ": coefficient of H_" + xs + " is " + format(h) + ", not in vZ[v]");
    }
    if (!diag)
      issues.push_back(ws + ": missing diagonal term");
  }
  if (!issues.empty())
    return issues;

  // Rows must satisfy b_w = b_s b_{sw} - sum mu(z, sw) b_z.
  for (std::uint32_t w = 1; w < N; ++w) {
    const int s = sys.word(w)[0];
    const std::uint32_t u = sys.mul_gen(s, w, Side::Left);
    HeckeElt expect = mul_std_gen(kl.element(sys.element(u)), s, Side::Left);
    for (const auto& [y, h] : kl.row(u))
      expect.add(y, h, 1, 1);
    for (const auto& [z, m] : kl.mu_row(u))
      if (sys.is_descent(s, z, Side::Left))
        for (const auto& [x, h] : kl.row(z))
          expect.add(x, h, -m);
    if (!(expect == kl.element(sys.element(w))))
      issues.push_back(format_word(sys.word(w)) + ": row disagrees with the b_s b_{sw} recursion");
  }

  std::vector<std::uint32_t> sample;
  if (N <= exhaustive_bar_limit) {
    for (std::uint32_t w = 0; w < N; ++w)
      sample.push_back(w);
  } else {
    const std::uint32_t span = static_cast<std::uint32_t>(std::min<std::size_t>(N, 256));
    for (std::uint32_t k = 0; k < 8; ++k)
      sample.push_back(k * (span - 1) / 7);
  }
  for (auto w : sample) {
    HeckeElt b = kl.element(sys.element(w));
    if (!(bar(b) == b))
      issues.push_back(format_word(sys.word(w)) + ": b_w is not bar-invariant");
  }
  return issues;
}

// ---------------------------------------------------------------------------
// Basis changes

namespace {

/// Top-down unitriangular elimination: expresses `f` (coefficients on some
/// basis {a_x}) in a basis {c_x} with c_x = a_x + sum_{y<x} r(y,x) a_y.
template <typename RowFn>
Coeffs eliminate(Coeffs f, RowFn row_of, const CoxeterSystem& sys) {
  Coeffs out;
  std::vector<std::string> missing;
  while (!f.empty()) {
    auto it = std::prev(f.end());
    const std::uint32_t x = it->first;
    LaurentPoly g = std::move(it->second);
    f.erase(it);
    const KLRow* row = row_of(x);
    if (!row) {
      missing.push_back(format_word(sys.word(x)));
      continue;
    }
    for (const auto& [y, r] : *row) {
      if (y == x)
        continue;
      auto& slot = f[y];
      slot.add_scaled(g * r, -1, 0);
      if (slot.is_zero())
        f.erase(y);
    }
    out.emplace(x, std::move(g));
  }
  if (!missing.empty())
    throw PartialTableError(std::move(missing));
  return out;
}

/// Bottom-up expansion: sum_w g_w c_w with c_w = sum_x r(x,w) a_x.
template <typename RowFn>
Coeffs expand(const Coeffs& g, RowFn row_of, const CoxeterSystem& sys) {
  Coeffs out;
  std::vector<std::string> missing;
  for (const auto& [w, f] : g) {
    const KLRow* row = row_of(w);
    if (!row) {
      missing.push_back(format_word(sys.word(w)));
      continue;
    }
    for (const auto& [x, r] : *row) {
      auto& slot = out[x];
      slot += f * r;
      if (slot.is_zero())
        out.erase(x);
    }
  }
  if (!missing.empty())
    throw PartialTableError(std::move(missing));
  return out;
}

} // namespace

HeckeElt change_basis(const HeckeElt& h, const BasisTag& target, const KLTable& kl,
                      const BasisTable* pcan) {
  const auto& sys = h.system();
  if (&kl.system() != &sys)
    throw HeckeError("KL table belongs to a different Coxeter system");
  auto need_pcan = [&](const BasisTag& tag) {
    if (!pcan)
      throw HeckeError("basis change to or from " + to_string(tag) + " needs a p-canonical table");
    if (&pcan->system() != &sys)
      throw HeckeError("p-canonical table belongs to a different Coxeter system");
    if (!(pcan->tag() == tag))
      throw HeckeError("element basis " + to_string(tag) + " does not match table " +
                       to_string(pcan->tag()));
  };
  auto kl_row = [&](std::uint32_t x) -> const KLRow* { return &kl.row(x); };
  auto pcan_row = [&](std::uint32_t x) -> const KLRow* { return pcan->row(x); };

  if (h.basis() == target)
    return h;

  Coeffs hub;
  switch (h.basis().kind) {
  case BasisKind::Standard: hub = eliminate(h.coeffs(), kl_row, sys); break;
  case BasisKind::KL: hub = h.coeffs(); break;
  case BasisKind::PCan:
    need_pcan(h.basis());
    hub = expand(h.coeffs(), pcan_row, sys);
    break;
  }

  switch (target.kind) {
  case BasisKind::Standard: return HeckeElt(sys, target, expand(hub, kl_row, sys));
  case BasisKind::KL: return HeckeElt(sys, target, std::move(hub));
  case BasisKind::PCan:
    need_pcan(target);
    return HeckeElt(sys, target, eliminate(std::move(hub), pcan_row, sys));
  }
  throw HeckeError("unknown basis");
}

// ---------------------------------------------------------------------------
// Cache files

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

std::string hex64(std::uint64_t x) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, x >>= 4)
    s[i] = digits[x & 15];
  return s;
}

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
    ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
    --b;
  return std::string(s.substr(a, b - a));
}

} // namespace

std::string format_kl_cache(const KLTable& kl) {
  const auto& sys = kl.system();
  std::ostringstream os;
  os << "format klcache v1\n";
  os << "type " << sys.spec().label() << "\n";
  os << "order " << sys.order() << "\n";
  for (std::uint32_t w = 0; w < kl.built(); ++w) {
    os << format_word(sys.word(w)) << " :";
    bool first = true;
    for (const auto& [x, h] : kl.row(w)) {
      os << (first ? " " : " ; ") << format(h) << "*" << format_word(sys.word(x));
      first = false;
    }
    os << "\n";
  }
  std::string body = os.str();
  return body + "end " + hex64(fnv1a64(body)) + "\n";
}

KLTable parse_kl_cache(const CoxeterSystem& sys, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  std::size_t consumed = 0; // bytes before the current line
  auto fail = [&](const std::string& msg) -> CacheError {
    return CacheError("kl cache line " + std::to_string(lineno) + ": " + msg);
  };
  auto header = [&](const std::string& key) {
    if (!std::getline(in, line))
      throw fail("missing '" + key + "' header");
    ++lineno;
    consumed += line.size() + 1;
    const std::string t = trim(line);
    if (t.rfind(key + " ", 0) != 0)
      throw fail("expected '" + key + " ...', got '" + t + "'");
    return trim(std::string_view(t).substr(key.size() + 1));
  };

  if (header("format") != "klcache v1")
    throw fail("unsupported format version");
  if (header("type") != sys.spec().label())
    throw fail("type mismatch: file is not for " + sys.spec().label());
  if (header("order") != std::to_string(sys.order()))
    throw fail("order mismatch");

  std::vector<KLRow> rows;
  bool ended = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t line_start = consumed;
    consumed += line.size() + 1;
    const std::string t = trim(line);
    if (t.empty())
      continue;
    if (t.rfind("end ", 0) == 0) {
      const std::string want = hex64(fnv1a64(std::string_view(text).substr(0, line_start)));
      if (trim(t.substr(4)) != want)
        throw fail("checksum mismatch");
      ended = true;
      break;
    }
    const auto colon = t.find(':');
    if (colon == std::string::npos)
      throw fail("expected 'WORD : POLY*WORD ; ...'");
    Element w;
    try {
      w = sys.parse(trim(std::string_view(t).substr(0, colon)));
    } catch (const CoxeterError& e) {
      throw fail(e.what());
    }
    if (w.index() != rows.size())
      throw fail("row for " + w.str() + " is out of order");
    KLRow row;
    std::string_view rest = std::string_view(t).substr(colon + 1);
    while (!rest.empty()) {
      const auto semi = rest.find(';');
      const std::string term = trim(rest.substr(0, semi));
      rest = semi == std::string_view::npos ? std::string_view{} : rest.substr(semi + 1);
      const auto star = term.rfind('*');
      if (star == std::string::npos)
        throw fail("expected POLY*WORD, got '" + term + "'");
      try {
        LaurentPoly f = parse_laurent(term.substr(0, star));
        Element x = sys.parse(trim(std::string_view(term).substr(star + 1)));
        row.emplace_back(x.index(), std::move(f));
      } catch (const std::exception& e) {
        throw fail(e.what());
      }
    }
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < row.size(); ++i)
      if (row[i].first == row[i - 1].first)
        throw fail("repeated term");
    rows.push_back(std::move(row));
  }
  if (!ended)
    throw fail("missing 'end' checksum line");
  if (rows.size() != sys.order())
    throw fail("expected " + std::to_string(sys.order()) + " rows, found " + std::to_string(rows.size()));

  KLTable kl = KLTable::from_rows(sys, std::move(rows), "pcells klcache v1 loaded " + sys.spec().label());
  auto issues = validate_kl(kl);
  if (!issues.empty())
    throw CacheError("kl cache validation failed: " + issues.front() +
                     (issues.size() > 1 ? " (+" + std::to_string(issues.size() - 1) + " more)" : ""));
  return kl;
}

void cache_save(const KLTable& kl, const std::filesystem::path& path) {
  if (kl.built() != kl.system().order())
    throw CacheError("refusing to save an incomplete KL table");
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out)
      throw CacheError("cannot write " + tmp);
    out << format_kl_cache(kl);
    if (!out)
      throw CacheError("write failed for " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

KLTable cache_load(const CoxeterSystem& sys, const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw CacheError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_kl_cache(sys, ss.str());
}

} // namespace pcells
