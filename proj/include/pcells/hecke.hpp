#pragma once

// Iwahori-Hecke algebra over Z[v, v^-1].
//
// Normalization: H_s^2 = H_e + (v^-1 - v) H_s, b_s = H_s + v, and
// b_w = H_w + sum_{x < w} h_{x,w} H_x with h_{x,w} in vZ[v].

#include "pcells/coxeter.hpp"
#include "pcells/laurent.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace pcells {

class BasisTable;

enum class BasisKind { Standard, KL, PCan };

struct BasisTag {
  BasisKind kind = BasisKind::Standard;
  int p = 0;
  std::string table_id;

  static BasisTag standard() { return {}; }
  static BasisTag kl() { return {BasisKind::KL, 0, {}}; }
  static BasisTag pcan(int p, std::string id) { return {BasisKind::PCan, p, std::move(id)}; }
  bool operator==(const BasisTag&) const = default;
};

std::string to_string(const BasisTag& tag);

class HeckeError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Raised when a computation needs basis rows a partial table does not have.
class PartialTableError : public HeckeError {
public:
  explicit PartialTableError(std::vector<std::string> missing);
  const std::vector<std::string>& missing() const { return missing_; }

private:
  std::vector<std::string> missing_;
};

using Coeffs = std::map<std::uint32_t, LaurentPoly>;

/// Sparse element of the Hecke algebra, tagged with the basis its
/// coefficients refer to. Keys are element indices of `system()`.
class HeckeElt {
public:
  HeckeElt(const CoxeterSystem& system, BasisTag basis = {}) : system_(&system), basis_(std::move(basis)) {}
  HeckeElt(const CoxeterSystem& system, BasisTag basis, Coeffs coeffs);

  const CoxeterSystem& system() const { return *system_; }
  const BasisTag& basis() const { return basis_; }
  const Coeffs& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  std::size_t size() const { return coeffs_.size(); }

  LaurentPoly coeff(const Element& w) const;
  LaurentPoly coeff(std::uint32_t w) const;
  void add(const Element& w, const LaurentPoly& f);
  void add(std::uint32_t w, const LaurentPoly& f, const Integer& c = 1, int shift = 0);

  HeckeElt& operator+=(const HeckeElt& o);
  HeckeElt& operator-=(const HeckeElt& o);
  HeckeElt& operator*=(const LaurentPoly& f);
  friend HeckeElt operator+(HeckeElt a, const HeckeElt& b) { return a += b; }
  friend HeckeElt operator-(HeckeElt a, const HeckeElt& b) { return a -= b; }
  friend HeckeElt operator*(const LaurentPoly& f, HeckeElt a) { return a *= f; }

  bool operator==(const HeckeElt& o) const {
    return system_ == o.system_ && basis_ == o.basis_ && coeffs_ == o.coeffs_;
  }

  /// "v^-3*121321323 - v^-2*12132132 + v^-1*121" style rendering.
  std::string str() const;

private:
  void check_compatible(const HeckeElt& o) const;

  const CoxeterSystem* system_;
  BasisTag basis_;
  Coeffs coeffs_;
};

HeckeElt std_of(const Element& w);
HeckeElt unit(const CoxeterSystem& system);

/// Product in the standard basis.
HeckeElt operator*(const HeckeElt& a, const HeckeElt& b);
/// h * H_s in the standard basis.
HeckeElt mul_std_gen(const HeckeElt& h, int s, Side side);
/// Bar involution on a standard-basis element.
HeckeElt bar(const HeckeElt& h);

HeckeElt half_twist(const CoxeterSystem& system);
HeckeElt full_twist(const CoxeterSystem& system);

using KLRow = std::vector<std::pair<std::uint32_t, LaurentPoly>>;
using MuRow = std::vector<std::pair<std::uint32_t, Integer>>;

/// Standard-basis expansions of every KL basis element, plus the mu-graph.
class KLTable {
public:
  /// Builds all rows by the b_s * b_{sw} recursion, one length stratum at a time.
  static KLTable compute(const CoxeterSystem& system);
  /// Wraps externally supplied rows (cache files); does not validate.
  static KLTable from_rows(const CoxeterSystem& system, std::vector<KLRow> rows, std::string provenance);

  const CoxeterSystem& system() const { return *system_; }
  const std::string& provenance() const { return provenance_; }
  /// Number of elements whose row has been built.
  std::size_t built() const { return rows_.size(); }

  /// (x, h_{x,w}) sorted by x, including (w, 1).
  const KLRow& row(std::uint32_t w) const { return rows_.at(w); }
  LaurentPoly h(std::uint32_t x, std::uint32_t w) const;
  /// b_w in the standard basis.
  HeckeElt element(const Element& w) const;

  /// (z, mu(z, w)) for z < w with nonzero mu, sorted by z.
  const MuRow& mu_row(std::uint32_t w) const { return mu_.at(w); }
  Integer mu(std::uint32_t z, std::uint32_t w) const;

private:
  void build_mu(std::uint32_t w);

  const CoxeterSystem* system_ = nullptr;
  std::vector<KLRow> rows_;
  std::vector<MuRow> mu_;
  std::string provenance_;
};

/// b_s * f (Left) or f * b_s (Right) for f expressed in the KL basis.
HeckeElt kl_mul_gen(const KLTable& kl, int s, const HeckeElt& f, Side side);
/// H_s * f or f * H_s for f in the KL basis, staying in the KL basis.
HeckeElt kl_mul_std_gen(const KLTable& kl, int s, const HeckeElt& f, Side side);

/// Invariant violations of a KL table. Unitriangularity is scanned on every
/// row; bar-invariance on every row when the group has at most
/// `exhaustive_bar_limit` elements, otherwise on a fixed sample.
std::vector<std::string> validate_kl(const KLTable& kl, std::size_t exhaustive_bar_limit = 200);

/// Exact re-expression between Standard, KL and PCan. `pcan` is required
/// whenever the source or target basis is PCan.
HeckeElt change_basis(const HeckeElt& h, const BasisTag& target, const KLTable& kl,
                      const BasisTable* pcan = nullptr);

// KL cache files:
//   format klcache v1
//   type <label>
//   order <|W|>
//   WORD : POLY*WORD ; POLY*WORD ; ...      (one line per element)
//   end <16 hex digits>                      (FNV-1a 64 of everything above)

class CacheError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

std::string format_kl_cache(const KLTable& kl);
/// Parses and validates. Throws CacheError naming the offending line.
KLTable parse_kl_cache(const CoxeterSystem& system, const std::string& text);
void cache_save(const KLTable& kl, const std::filesystem::path& path);
KLTable cache_load(const CoxeterSystem& system, const std::filesystem::path& path);

std::uint64_t fnv1a64(std::string_view data);

} // namespace pcells
