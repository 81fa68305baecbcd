#pragma once

// Cells of a basis of the Hecke algebra: structure constants, preorders,
// cell partitions with their order, lower-ideal reduction, a-function,
// distinguished involutions and p-vs-0 comparison.

#include "pcells/hecke.hpp"
#include "pcells/pcan.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace pcells {

class CellError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A basis {c_w}: the KL basis, or a p-canonical table over it. The identity
/// table at p = 0 is the KL basis.
class Basis {
public:
  Basis(std::shared_ptr<const CoxeterSystem> system, std::shared_ptr<const KLTable> kl,
        std::shared_ptr<const BasisTable> table = nullptr);
  Basis(const Basis&) = delete;
  Basis& operator=(const Basis&) = delete;

  const CoxeterSystem& system() const { return *system_; }
  const std::shared_ptr<const CoxeterSystem>& system_ptr() const { return system_; }
  const KLTable& kl() const { return *kl_; }
  const std::shared_ptr<const KLTable>& kl_ptr() const { return kl_; }
  /// nullptr for the KL basis.
  const BasisTable* table() const { return is_kl_ ? nullptr : table_.get(); }
  BasisTag tag() const { return tag_; }
  int p() const { return table_->p(); }
  bool is_kl() const { return is_kl_; }
  bool complete() const { return table_->complete(); }
  bool in_domain(std::uint32_t w) const { return table_->in_domain(w); }
  /// "KL" or "p=2 (builtin-C2-p2)".
  std::string label() const;

  /// c_w as a one-term element of this basis.
  HeckeElt element(std::uint32_t w) const;
  /// c_w in the standard basis.
  HeckeElt standard(std::uint32_t w) const;
  /// Row of c_w over the KL basis.
  const KLRow& kl_row(std::uint32_t w) const;
  HeckeElt to_kl(const HeckeElt& h) const;
  HeckeElt from_kl(const HeckeElt& h) const;

  /// b_s c_w (Left) or c_w b_s (Right) in this basis. Cached; safe to call
  /// from several threads.
  const HeckeElt& gen_action(int s, std::uint32_t w, Side side) const;
  /// b_s * h or h * b_s for h in this basis.
  HeckeElt gen_action(int s, const HeckeElt& h, Side side) const;

  /// c_w c_x in this basis.
  HeckeElt product(std::uint32_t w, std::uint32_t x) const;
  /// c_w c_x for every w, in this basis (index = w).
  std::vector<HeckeElt> products_with(std::uint32_t x) const;

private:
  std::shared_ptr<const CoxeterSystem> system_;
  std::shared_ptr<const KLTable> kl_;
  std::shared_ptr<const BasisTable> table_;
  bool is_kl_ = true;
  BasisTag tag_;

  mutable std::mutex cache_mutex_;
  mutable std::vector<std::optional<HeckeElt>> cache_;
};

/// Coefficient of c_y in c_w c_x.
LaurentPoly mu(const Basis& basis, std::uint32_t w, std::uint32_t x, std::uint32_t y);
/// Coefficient of H_y in c_x.
LaurentPoly h_coeff(const Basis& basis, std::uint32_t x, std::uint32_t y);

enum class CellSide { Left, Right, TwoSided };
std::string to_string(CellSide side);

/// Edge w -> y whenever c_y occurs in b_s c_w (left), c_w b_s (right), or
/// either (two-sided). y is then below w in the preorder.
struct Preorder {
  const Basis* basis = nullptr;
  CellSide side = CellSide::Left;
  std::vector<std::vector<std::uint32_t>> edges;
};

Preorder preorder(const Basis& basis, CellSide side);

class CellDecomposition {
public:
  const Basis& basis() const { return *basis_; }
  const CoxeterSystem& system() const { return basis_->system(); }
  CellSide side() const { return side_; }

  std::size_t size() const { return cells_.size(); }
  /// Cells ordered by their least element; members in index order.
  const std::vector<std::vector<std::uint32_t>>& cells() const { return cells_; }
  const std::vector<std::uint32_t>& members(std::size_t cell) const { return cells_.at(cell); }
  std::size_t cell_of(std::uint32_t w) const { return cell_of_.at(w); }
  std::uint32_t representative(std::size_t cell) const { return cells_.at(cell).front(); }
  /// "[13]", "[id]".
  std::string label(std::size_t cell) const;

  bool strictly_below(std::size_t a, std::size_t b) const { return below_[a * cells_.size() + b]; }
  bool leq(std::size_t a, std::size_t b) const { return a == b || strictly_below(a, b); }
  /// Covering relations (lower, upper), sorted.
  const std::vector<std::pair<std::size_t, std::size_t>>& hasse() const { return hasse_; }

private:
  friend CellDecomposition cell_partition(const Preorder& pre);

  const Basis* basis_ = nullptr;
  CellSide side_ = CellSide::Left;
  std::vector<std::vector<std::uint32_t>> cells_;
  std::vector<std::size_t> cell_of_;
  std::vector<char> below_;
  std::vector<std::pair<std::size_t, std::size_t>> hasse_;
};

CellDecomposition cell_partition(const Preorder& pre);
CellDecomposition decompose(const Basis& basis, CellSide side);

/// Drops terms in cells strictly below `cell`. Throws CellError if a term
/// lies in a cell that is neither `cell` nor below it.
HeckeElt ideal_reduce(const HeckeElt& h, std::size_t cell, const CellDecomposition& dec);

/// Structural checks: cells partition W, the order is acyclic, and when
/// `left` is given, each two-sided cell of `two` is a union of left cells
/// that are pairwise incomparable. Returns the failures.
std::vector<std::string> check_decomposition(const CellDecomposition& dec,
                                             const CellDecomposition* left = nullptr);

/// a(z) = max over x, y of -val(coefficient of c_z in c_x c_y). Costs |W|^2
/// products.
std::vector<int> a_function_batch(const Basis& basis);
int a_function(const Basis& basis, std::uint32_t z);

struct DistinguishedCell {
  std::size_t cell = 0;
  /// Involutions d with -val(mu_{d,d}^d) >= val(h_d^1).
  std::vector<std::uint32_t> winners;
  /// Parallel to winners: whether equality holds.
  std::vector<bool> equality;
  bool conforming() const { return winners.size() == 1; }
};

std::vector<DistinguishedCell> distinguished(const CellDecomposition& left);

struct DiffReport {
  struct Split {
    std::size_t cell0;
    std::vector<std::size_t> parts;
  };
  struct Migration {
    std::uint32_t element;
    std::size_t from0;  // the element's own 0-cell
    std::size_t to0;    // the 0-cell most of its p-cell comes from
    std::size_t cellp;
  };
  struct OrderChange {
    std::uint32_t lower;
    std::uint32_t upper;
    bool in0;  // strict relation holds at p = 0
    bool inp;  // strict relation holds at p
  };
  std::vector<Split> splits;
  std::vector<Migration> migrations;
  std::vector<OrderChange> order_changes;
  bool empty() const { return splits.empty() && migrations.empty() && order_changes.empty(); }
};

/// Compares two decompositions of the same group on the same side. Order
/// changes are read off Hasse covers between cell representatives.
DiffReport diff(const CellDecomposition& dec0, const CellDecomposition& decp);

} // namespace pcells
