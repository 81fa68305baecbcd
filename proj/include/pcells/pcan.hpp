#pragma once

// p-canonical basis tables, stored over the KL basis:
//   c_w = b_w + sum_{x < w} m_{x,w} b_x.

#include "pcells/hecke.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pcells {

class PcanError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Violation {
  std::string word;
  std::string kind; // diagonal | support | self-duality | nonnegativity
  std::string details;
};

class BasisTable {
public:
  /// p = 0: c_w = b_w for all w, complete.
  static BasisTable identity(const CoxeterSystem& system);
  /// Tables shipped with the library: (any, 0), (C2, 2), and the partial (C3, 2).
  static BasisTable builtin(const CoxeterSystem& system, int p);
  /// Rows map w to (x, m_{x,w}) pairs. A missing diagonal term is implied.
  /// For complete tables, elements without a row get the identity row.
  static BasisTable from_entries(const CoxeterSystem& system, int p, bool complete,
                                 std::map<std::uint32_t, KLRow> entries, std::string id,
                                 std::string provenance);

  const CoxeterSystem& system() const { return *system_; }
  int p() const { return p_; }
  bool complete() const { return complete_; }
  const std::string& id() const { return id_; }
  const std::string& provenance() const { return provenance_; }
  BasisTag tag() const { return BasisTag::pcan(p_, id_); }

  /// Row of w, or nullptr when w is outside a partial table's domain.
  const KLRow* row(std::uint32_t w) const;
  bool in_domain(std::uint32_t w) const { return row(w) != nullptr; }
  std::vector<std::uint32_t> domain() const;
  /// Elements whose row has an off-diagonal term.
  std::vector<std::uint32_t> non_identity() const;
  /// Elements whose row has a non-constant coefficient.
  std::vector<std::uint32_t> non_perverse() const;

private:
  const CoxeterSystem* system_ = nullptr;
  int p_ = 0;
  bool complete_ = true;
  std::string id_;
  std::string provenance_;
  std::vector<std::optional<KLRow>> rows_;
};

/// Every violated invariant, with the offending word. Empty means accepted.
std::vector<Violation> validate(const BasisTable& table);

/// File grammar:
///   # comment
///   format pcan v1
///   type <label>
///   p <integer>
///   convention soergel-v
///   complete <true|false>
///   WORD : POLY*WORD [; POLY*WORD]...
/// Throws PcanError with line numbers, header mismatches, or (when `check`
/// is set) the full list of validation failures.
BasisTable parse_pcan(const CoxeterSystem& system, std::string_view text,
                      std::optional<int> expected_p = std::nullopt,
                      const std::string& source = "<memory>", bool check = true);
BasisTable load_pcan(const CoxeterSystem& system, const std::filesystem::path& path,
                     std::optional<int> expected_p = std::nullopt, bool check = true);
/// Canonical text form; parse_pcan(format_pcan(t)) reproduces t and
/// re-formatting is byte-stable.
std::string format_pcan(const BasisTable& table);

/// c_w expanded in the standard basis.
HeckeElt pcan_element(const BasisTable& table, const KLTable& kl, const Element& w);

/// Elements of `needed` outside the table's domain (empty means covered).
std::vector<Element> completeness_check(const BasisTable& table, std::span<const Element> needed);

} // namespace pcells
