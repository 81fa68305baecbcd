#pragma once

// Half and full twist actions on a basis, and extraction of the eigenvalue
// data (x, sign, Schu) from
//   H_{w0} c_w = sign * v^x * c_{Schu(w)}  modulo lower cells.

#include "pcells/cells.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pcells {

/// H_{w0} c_w in the basis, exactly.
HeckeElt act_half(const Basis& basis, std::uint32_t w);
/// H_{w0} h modulo the span of cells strictly below `cell` of the two-sided
/// decomposition. Lower terms are dropped after every generator step.
HeckeElt act_half_reduced(const HeckeElt& h, std::size_t cell, const CellDecomposition& two);
/// H_{w0}^2 c_w in the basis, exactly.
HeckeElt act_full(const Basis& basis, std::uint32_t w);

struct EigenDatum {
  std::uint32_t w = 0;
  std::size_t cell = 0;       // two-sided
  std::size_t left_cell = 0;
  int x = 0;
  int sign = 1;
  std::optional<std::uint32_t> schu;
  bool ok = false;
  std::string kind;     // violation kind when !ok
  std::string details;
};

EigenDatum eigen_extract(std::uint32_t w, const CellDecomposition& left, const CellDecomposition& two);

struct CellValue {
  std::size_t cell = 0;
  bool constant = true;
  int x = 0;
  int sign = 1;
};

struct XReversal {
  std::size_t lower = 0;  // two-sided cells, lower < upper
  std::size_t upper = 0;
};

class TwistReport {
public:
  const CellDecomposition& left() const { return *left_; }
  const CellDecomposition& two() const { return *two_; }
  const std::vector<EigenDatum>& data() const { return data_; }
  const EigenDatum& at(std::uint32_t w) const { return data_.at(w); }
  const std::vector<CellValue>& left_values() const { return left_values_; }
  const std::vector<CellValue>& two_values() const { return two_values_; }

  /// Elements where Schu(Schu(w)) != w.
  const std::vector<std::uint32_t>& involution_failures() const { return involution_failures_; }
  std::size_t fixed() const { return fixed_; }
  std::size_t moving() const { return moving_; }
  /// Hasse covers whose x-values decrease going up. Informational.
  const std::vector<XReversal>& x_reversals() const { return x_reversals_; }
  /// Distinct (x, sign) pairs over two-sided cells.
  std::size_t unique_pairs() const;

  /// Human-readable list of all failed checks.
  std::vector<std::string> violations() const;
  bool all_ok() const { return violations().empty(); }

private:
  friend TwistReport verify(const CellDecomposition& left, const CellDecomposition& two);

  const CellDecomposition* left_ = nullptr;
  const CellDecomposition* two_ = nullptr;
  std::vector<EigenDatum> data_;
  std::vector<CellValue> left_values_;
  std::vector<CellValue> two_values_;
  std::vector<std::uint32_t> involution_failures_;
  std::size_t fixed_ = 0;
  std::size_t moving_ = 0;
  std::vector<XReversal> x_reversals_;
};

/// Runs eigen_extract on every element and checks constancy on left and
/// two-sided cells, the involution property and left-cell preservation.
TwistReport verify(const CellDecomposition& left, const CellDecomposition& two);

struct FullCheck {
  std::uint32_t w = 0;
  bool ok = false;
  int exponent = 0;  // 2x when ok
  std::string details;
};

/// H_{w0}^2 c_w reduced modulo lower cells must equal v^{2x} c_w.
std::vector<FullCheck> full_check(const TwistReport& report);

struct StatRow {
  std::size_t left_cells = 0;
  std::size_t two_sided_cells = 0;
  std::size_t unique_pairs = 0;
  std::size_t fixed = 0;
  std::size_t moving = 0;
  bool operator==(const StatRow&) const = default;
};

StatRow stats(const TwistReport& report);

struct SwapEntry {
  std::uint32_t a = 0, b = 0;
  std::optional<int> xa0, xb0, xap, xbp;
  bool swapped = false;
  std::string details;
};

/// x-values of each pair at p = 0 and at p. Uses the reports when given;
/// otherwise reads the coefficient of c_w in H_{w0} c_w, which must be a
/// signed monomial.
std::vector<SwapEntry> swap_probe(const Basis& basis0, const Basis& basisp,
                                  const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs,
                                  const TwistReport* report0 = nullptr,
                                  const TwistReport* reportp = nullptr);

} // namespace pcells
