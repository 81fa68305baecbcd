#pragma once

// Tables (TSV, JSON) and graphs (DOT) for cell decompositions.

#include "pcells/twist.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pcells {

struct CellRow {
  std::string id;       // "[13]"
  std::string side;
  std::vector<std::string> members;
  std::string members_text;  // "(1, 12321), (21, 2321), 321"
  std::optional<int> x;
  std::optional<int> sign;
  std::vector<std::pair<std::string, std::string>> schu_pairs;
  std::vector<std::string> distinguished;
};

struct CellTable {
  std::string type;
  int p = 0;
  std::vector<CellRow> rows;
  std::vector<std::pair<std::string, std::string>> order;  // Hasse covers (lower, upper)
  std::optional<StatRow> stats;
};

/// One row per cell. Eigen data comes from `report` when given; members are
/// listed in index order with Schu pairs printed at their first member.
CellTable make_table(const CellDecomposition& dec, const TwistReport* report = nullptr,
                     const std::vector<DistinguishedCell>* dist = nullptr);

std::string emit_tsv(const CellTable& table);
nlohmann::ordered_json to_json(const CellTable& table);
std::string emit_json(const CellTable& table);

/// "[[121]]", or "[[w0*u]]" when that word is shorter.
std::string dot_label(const CoxeterSystem& system, std::uint32_t w);
/// One node per cell, labelled with its representative and (x, sign); one
/// edge per Hasse cover, from upper to lower.
std::string emit_dot(const CellDecomposition& dec, const TwistReport* report = nullptr);

std::string sign_char(int sign);

} // namespace pcells
