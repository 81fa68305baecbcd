#include "pcells/cells.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace pcells {

// ---------------------------------------------------------------------------
// Basis

Basis::Basis(std::shared_ptr<const CoxeterSystem> system, std::shared_ptr<const KLTable> kl,
             std::shared_ptr<const BasisTable> table)
    : system_(std::move(system)), kl_(std::move(kl)), table_(std::move(table)) {
  if (&kl_->system() != system_.get())
    throw CellError("KL table belongs to a different Coxeter system");
  if (table_ && &table_->system() != system_.get())
    throw CellError("p-canonical table belongs to a different Coxeter system");
  if (!table_)
    table_ = std::make_shared<const BasisTable>(BasisTable::identity(*system_));
  is_kl_ = table_->p() == 0 && table_->complete() && table_->non_identity().empty();
  tag_ = is_kl_ ? BasisTag::kl() : table_->tag();
  cache_.resize(system_->order() * system_->rank() * 2);
}

std::string Basis::label() const {
  if (is_kl_)
    return "KL";
  return "p=" + std::to_string(table_->p()) + " (" + table_->id() + ")";
}

HeckeElt Basis::element(std::uint32_t w) const {
  if (!in_domain(w))
    throw PartialTableError({format_word(system_->word(w))});
  HeckeElt h(*system_, tag_);
  h.add(w, LaurentPoly(1));
  return h;
}

const KLRow& Basis::kl_row(std::uint32_t w) const {
  const KLRow* row = table_->row(w);
  if (!row)
    throw PartialTableError({format_word(system_->word(w))});
  return *row;
}

HeckeElt Basis::standard(std::uint32_t w) const {
  HeckeElt out(*system_);
  for (const auto& [x, m] : kl_row(w))
    for (const auto& [y, h] : kl_->row(x))
      out.add(y, m * h);
  return out;
}

HeckeElt Basis::to_kl(const HeckeElt& h) const {
  return change_basis(h, BasisTag::kl(), *kl_, table());
}

HeckeElt Basis::from_kl(const HeckeElt& h) const {
  if (is_kl_)
    return change_basis(h, BasisTag::kl(), *kl_);
  return change_basis(h, tag_, *kl_, table_.get());
}

const HeckeElt& Basis::gen_action(int s, std::uint32_t w, Side side) const {
  const std::size_t slot = (static_cast<std::size_t>(w) * system_->rank() + (s - 1)) * 2 +
                           (side == Side::Left ? 0 : 1);
  {
    std::lock_guard lock(cache_mutex_);
    if (cache_.at(slot))
      return *cache_[slot];
  }
  HeckeElt c(*system_, BasisTag::kl());
  for (const auto& [x, m] : kl_row(w))
    c.add(x, m);
  HeckeElt result = from_kl(kl_mul_gen(*kl_, s, c, side));
  std::lock_guard lock(cache_mutex_);
  if (!cache_[slot])
    cache_[slot] = std::move(result);
  return *cache_[slot];
}

HeckeElt Basis::gen_action(int s, const HeckeElt& h, Side side) const {
  if (!(h.basis() == tag_))
    throw CellError("element is not expressed in basis " + label());
  HeckeElt out(*system_, tag_);
  for (const auto& [w, f] : h.coeffs())
    for (const auto& [y, g] : gen_action(s, w, side).coeffs())
      out.add(y, f * g);
  return out;
}

namespace {

/// H_u f for f in the KL basis, memoized along canonical prefixes.
class StdLeftAction {
public:
  StdLeftAction(const KLTable& kl, HeckeElt f) : kl_(kl), memo_(kl.system().order()) {
    memo_[0] = std::move(f);
  }

  const HeckeElt& operator()(std::uint32_t u) {
    if (memo_[u])
      return *memo_[u];
    const auto& sys = kl_.system();
    const int s = sys.word(u)[0];
    const std::uint32_t rest = sys.mul_gen(s, u, Side::Left);
    HeckeElt r = kl_mul_std_gen(kl_, s, (*this)(rest), Side::Left);
    memo_[u] = std::move(r);
    return *memo_[u];
  }

private:
  const KLTable& kl_;
  std::vector<std::optional<HeckeElt>> memo_;
};

HeckeElt kl_element(const Basis& basis, std::uint32_t x) {
  HeckeElt f(basis.system(), BasisTag::kl());
  for (const auto& [z, m] : basis.kl_row(x))
    f.add(z, m);
  return f;
}

HeckeElt combine(const Basis& basis, const HeckeElt& c_w_std, StdLeftAction& act) {
  HeckeElt acc(basis.system(), BasisTag::kl());
  for (const auto& [u, g] : c_w_std.coeffs()) {
    const HeckeElt& hu = act(u);
    for (const auto& [y, f] : hu.coeffs())
      acc.add(y, g * f);
  }
  return basis.from_kl(acc);
}

} // namespace

HeckeElt Basis::product(std::uint32_t w, std::uint32_t x) const {
  StdLeftAction act(*kl_, kl_element(*this, x));
  return combine(*this, standard(w), act);
}

std::vector<HeckeElt> Basis::products_with(std::uint32_t x) const {
  StdLeftAction act(*kl_, kl_element(*this, x));
  std::vector<HeckeElt> out;
  out.reserve(system_->order());
  for (std::uint32_t w = 0; w < system_->order(); ++w)
    out.push_back(combine(*this, standard(w), act));
  return out;
}

LaurentPoly mu(const Basis& basis, std::uint32_t w, std::uint32_t x, std::uint32_t y) {
  return basis.product(w, x).coeff(y);
}

LaurentPoly h_coeff(const Basis& basis, std::uint32_t x, std::uint32_t y) {
  LaurentPoly out;
  for (const auto& [z, m] : basis.kl_row(x))
    out += m * basis.kl().h(y, z);
  return out;
}

// ---------------------------------------------------------------------------
// Preorders and cells

std::string to_string(CellSide side) {
  switch (side) {
  case CellSide::Left: return "left";
  case CellSide::Right: return "right";
  case CellSide::TwoSided: return "two-sided";
  }
  return "?";
}

Preorder preorder(const Basis& basis, CellSide side) {
  const auto& sys = basis.system();
  if (!basis.complete()) {
    std::vector<std::string> missing;
    for (std::uint32_t w = 0; w < sys.order(); ++w)
      if (!basis.in_domain(w))
        missing.push_back(format_word(sys.word(w)));
    throw PartialTableError(std::move(missing));
  }
  Preorder pre;
  pre.basis = &basis;
  pre.side = side;
  pre.edges.resize(sys.order());
  std::vector<Side> sides;
  if (side != CellSide::Right)
    sides.push_back(Side::Left);
  if (side != CellSide::Left)
    sides.push_back(Side::Right);
  for (std::uint32_t w = 0; w < sys.order(); ++w) {
    auto& out = pre.edges[w];
    for (Side sd : sides)
      for (int s = 1; s <= sys.rank(); ++s)
        for (const auto& [y, f] : basis.gen_action(s, w, sd).coeffs())
          if (y != w)
            out.push_back(y);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
  }
  return pre;
}

CellDecomposition cell_partition(const Preorder& pre) {
  const std::size_t n = pre.edges.size();
  constexpr std::size_t unset = std::numeric_limits<std::size_t>::max();

  // Tarjan, iterative.
  std::vector<std::size_t> index(n, unset), low(n, 0), comp(n, unset);
  std::vector<char> on_stack(n, 0);
  std::vector<std::uint32_t> stack;
  std::vector<std::pair<std::uint32_t, std::size_t>> call;
  std::size_t counter = 0, ncomp = 0;
  for (std::uint32_t root = 0; root < n; ++root) {
    if (index[root] != unset)
      continue;
    call.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      auto& [v, next] = call.back();
      if (next < pre.edges[v].size()) {
        const std::uint32_t y = pre.edges[v][next++];
        if (index[y] == unset) {
          index[y] = low[y] = counter++;
          stack.push_back(y);
          on_stack[y] = 1;
          call.push_back({y, 0});
        } else if (on_stack[y]) {
          low[v] = std::min(low[v], index[y]);
        }
        continue;
      }
      const std::uint32_t done = v;
      call.pop_back();
      if (!call.empty())
        low[call.back().first] = std::min(low[call.back().first], low[done]);
      if (low[done] == index[done]) {
        std::uint32_t y;
        do {
          y = stack.back();
          stack.pop_back();
          on_stack[y] = 0;
          comp[y] = ncomp;
        } while (y != done);
        ++ncomp;
      }
    }
  }

  // Renumber components by least element.
  std::vector<std::size_t> rename(ncomp, unset);
  std::size_t next_id = 0;
  for (std::uint32_t w = 0; w < n; ++w)
    if (rename[comp[w]] == unset)
      rename[comp[w]] = next_id++;

  CellDecomposition dec;
  dec.basis_ = pre.basis;
  dec.side_ = pre.side;
  dec.cells_.resize(ncomp);
  dec.cell_of_.resize(n);
  for (std::uint32_t w = 0; w < n; ++w) {
    dec.cell_of_[w] = rename[comp[w]];
    dec.cells_[dec.cell_of_[w]].push_back(w);
  }

  const std::size_t k = ncomp;
  std::vector<std::vector<std::size_t>> down(k);
  for (std::uint32_t w = 0; w < n; ++w)
    for (std::uint32_t y : pre.edges[w])
      if (dec.cell_of_[y] != dec.cell_of_[w])
        down[dec.cell_of_[w]].push_back(dec.cell_of_[y]);
  for (auto& d : down) {
    std::sort(d.begin(), d.end());
    d.erase(std::unique(d.begin(), d.end()), d.end());
  }

  dec.below_.assign(k * k, 0);
  std::vector<std::size_t> todo;
  for (std::size_t b = 0; b < k; ++b) {
    std::vector<char> seen(k, 0);
    todo.assign(down[b].begin(), down[b].end());
    while (!todo.empty()) {
      const std::size_t a = todo.back();
      todo.pop_back();
      if (seen[a])
        continue;
      seen[a] = 1;
      dec.below_[a * k + b] = 1;
      for (std::size_t c : down[a])
        if (!seen[c])
          todo.push_back(c);
    }
  }

  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      if (!dec.below_[a * k + b])
        continue;
      bool cover = true;
      for (std::size_t c = 0; c < k && cover; ++c)
        if (dec.below_[a * k + c] && dec.below_[c * k + b])
          cover = false;
      if (cover)
        dec.hasse_.emplace_back(a, b);
    }
  return dec;
}

CellDecomposition decompose(const Basis& basis, CellSide side) {
  return cell_partition(preorder(basis, side));
}

std::string CellDecomposition::label(std::size_t cell) const {
  const std::uint32_t r = representative(cell);
  return "[" + (r == 0 ? std::string("id") : format_word(system().word(r))) + "]";
}

HeckeElt ideal_reduce(const HeckeElt& h, std::size_t cell, const CellDecomposition& dec) {
  if (!(h.basis() == dec.basis().tag()))
    throw CellError("element basis " + to_string(h.basis()) + " does not match decomposition basis " +
                    to_string(dec.basis().tag()));
  HeckeElt out(h.system(), h.basis());
  for (const auto& [y, f] : h.coeffs()) {
    const std::size_t c = dec.cell_of(y);
    if (c == cell) {
      out.add(y, f);
      continue;
    }
    if (dec.strictly_below(c, cell))
      continue;
    throw CellError("term " + format(f) + "*" + format_word(dec.system().word(y)) + " lies in cell " +
                    dec.label(c) + ", which is not below " + dec.label(cell));
  }
  return out;
}

std::vector<std::string> check_decomposition(const CellDecomposition& dec, const CellDecomposition* left) {
  std::vector<std::string> out;
  const auto& sys = dec.system();
  std::vector<int> seen(sys.order(), 0);
  for (std::size_t c = 0; c < dec.size(); ++c)
    for (std::uint32_t w : dec.members(c)) {
      ++seen[w];
      if (dec.cell_of(w) != c)
        out.push_back("cell_of(" + format_word(sys.word(w)) + ") disagrees with membership");
    }
  for (std::uint32_t w = 0; w < sys.order(); ++w)
    if (seen[w] != 1)
      out.push_back(format_word(sys.word(w)) + " lies in " + std::to_string(seen[w]) + " cells");
  for (std::size_t a = 0; a < dec.size(); ++a)
    for (std::size_t b = 0; b < dec.size(); ++b)
      if (dec.strictly_below(a, b) && dec.strictly_below(b, a))
        out.push_back("cycle between " + dec.label(a) + " and " + dec.label(b));

  if (left) {
    for (std::size_t l = 0; l < left->size(); ++l) {
      const auto& m = left->members(l);
      const std::size_t home = dec.cell_of(m.front());
      for (std::uint32_t w : m)
        if (dec.cell_of(w) != home)
          out.push_back("left cell " + left->label(l) + " is not inside one two-sided cell");
    }
    for (std::size_t a = 0; a < left->size(); ++a)
      for (std::size_t b = 0; b < left->size(); ++b) {
        if (a == b || !left->strictly_below(a, b))
          continue;
        if (dec.cell_of(left->representative(a)) == dec.cell_of(left->representative(b)))
          out.push_back("left cells " + left->label(a) + " < " + left->label(b) +
                        " inside one two-sided cell");
      }
  }
  return out;
}

// ---------------------------------------------------------------------------
// a-function and distinguished involutions

std::vector<int> a_function_batch(const Basis& basis) {
  const auto& sys = basis.system();
  std::vector<int> a(sys.order(), std::numeric_limits<int>::min());
  for (std::uint32_t y = 0; y < sys.order(); ++y)
    for (const HeckeElt& prod : basis.products_with(y))
      for (const auto& [z, f] : prod.coeffs())
        a[z] = std::max(a[z], -f.val());
  return a;
}

int a_function(const Basis& basis, std::uint32_t z) {
  const auto& sys = basis.system();
  int a = std::numeric_limits<int>::min();
  for (std::uint32_t y = 0; y < sys.order(); ++y)
    for (const HeckeElt& prod : basis.products_with(y)) {
      LaurentPoly f = prod.coeff(z);
      if (!f.is_zero())
        a = std::max(a, -f.val());
    }
  return a;
}

std::vector<DistinguishedCell> distinguished(const CellDecomposition& left) {
  const Basis& basis = left.basis();
  const auto& sys = basis.system();
  std::vector<DistinguishedCell> out;
  for (std::size_t c = 0; c < left.size(); ++c) {
    DistinguishedCell dc;
    dc.cell = c;
    for (std::uint32_t d : left.members(c)) {
      if (!sys.is_involution(d))
        continue;
      const LaurentPoly m = mu(basis, d, d, d);
      const LaurentPoly h = h_coeff(basis, d, 0);
      if (m.is_zero() || h.is_zero())
        continue;
      if (-m.val() >= h.val()) {
        dc.winners.push_back(d);
        dc.equality.push_back(-m.val() == h.val());
      }
    }
    out.push_back(std::move(dc));
  }
  return out;
}

// ---------------------------------------------------------------------------
// diff

DiffReport diff(const CellDecomposition& dec0, const CellDecomposition& decp) {
  if (&dec0.system() != &decp.system())
    throw CellError("decompositions belong to different Coxeter systems");
  if (dec0.side() != decp.side())
    throw CellError("decompositions have different sides");
  DiffReport r;

  for (std::size_t c = 0; c < dec0.size(); ++c) {
    std::vector<std::size_t> parts;
    for (std::uint32_t w : dec0.members(c))
      parts.push_back(decp.cell_of(w));
    std::sort(parts.begin(), parts.end());
    parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
    if (parts.size() > 1)
      r.splits.push_back({c, std::move(parts)});
  }

  for (std::size_t c = 0; c < decp.size(); ++c) {
    std::map<std::size_t, std::size_t> count;
    for (std::uint32_t w : decp.members(c))
      ++count[dec0.cell_of(w)];
    std::size_t home = count.begin()->first;
    for (const auto& [c0, n] : count)
      if (n > count[home])
        home = c0;
    for (std::uint32_t w : decp.members(c))
      if (dec0.cell_of(w) != home)
        r.migrations.push_back({w, dec0.cell_of(w), home, c});
  }

  auto strict = [](const CellDecomposition& d, std::uint32_t lo, std::uint32_t hi) {
    return d.strictly_below(d.cell_of(lo), d.cell_of(hi));
  };
  std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
  for (const auto& [a, b] : dec0.hasse()) {
    const std::uint32_t lo = dec0.representative(a), hi = dec0.representative(b);
    if (!strict(decp, lo, hi) && seen.insert({lo, hi}).second)
      r.order_changes.push_back({lo, hi, true, false});
  }
  for (const auto& [a, b] : decp.hasse()) {
    const std::uint32_t lo = decp.representative(a), hi = decp.representative(b);
    if (!strict(dec0, lo, hi) && seen.insert({lo, hi}).second)
      r.order_changes.push_back({lo, hi, false, true});
  }
  return r;
}

} // namespace pcells
