#pragma once

// Finite Weyl groups: Cartan data, ShortLex-canonical elements, descents,
// Bruhat order.

#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pcells {

enum class CartanFamily { A, B, C, D, E, F, G };

/// Cartan type with generator numbering
///   A_n, B_n, C_n : chain 1-2-...-n; for B_n the double edge points from
///                   n-1 to n, for C_n from n to n-1.
///   D_n           : chain 1-...-(n-2), with n-1 and n both attached to n-2.
///   E_6           : 1-3-4-5-6 with 2 attached to 4.
///   F_4           : 1-2=>3-4.
///   G_2           : triple edge, <a_1, a_2^v> = -3.
/// A double edge from i to j means <a_j, a_i^v> = -1 and <a_i, a_j^v> = -2.
struct CartanSpec {
  CartanFamily family = CartanFamily::A;
  int rank = 1;

  /// "C3", "B4", "D4", "F4", "G2", "E6", "A2", ...
  static CartanSpec parse(std::string_view label);
  std::string label() const;
  bool operator==(const CartanSpec&) const = default;
};

class CoxeterError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class CoxeterSystem;

/// A group element. Identity is the ShortLex-least reduced word; the index is
/// the element's position in enumeration order (length, then ShortLex), so
/// comparing indices of elements of one system compares in that order.
class Element {
public:
  Element() = default;
  Element(const CoxeterSystem* system, std::uint32_t index) : system_(system), index_(index) {}

  const CoxeterSystem* system() const { return system_; }
  std::uint32_t index() const { return index_; }
  int length() const;
  /// Canonical word, generators numbered from 1.
  const std::vector<std::uint8_t>& word() const;
  /// "121321323", or "e" for the identity.
  std::string str() const;

  bool operator==(const Element& o) const { return system_ == o.system_ && index_ == o.index_; }
  bool operator<(const Element& o) const { return index_ < o.index_; }

private:
  const CoxeterSystem* system_ = nullptr;
  std::uint32_t index_ = 0;
};

enum class Side { Left, Right };

class CoxeterSystem {
public:
  static std::shared_ptr<const CoxeterSystem> build(const CartanSpec& spec);

  const CartanSpec& spec() const { return spec_; }
  int rank() const { return rank_; }
  std::size_t order() const { return lengths_.size(); }
  /// <a_j, a_i^v>, generators 1-based.
  int cartan(int i, int j) const { return cartan_[(i - 1) * rank_ + (j - 1)]; }
  /// m_ij
  int coxeter_order(int i, int j) const;
  /// Positive roots in simple-root coordinates.
  const std::vector<std::vector<int>>& positive_roots() const { return positive_roots_; }

  Element identity() const { return {this, 0}; }
  Element longest() const { return {this, static_cast<std::uint32_t>(order() - 1)}; }
  Element element(std::uint32_t index) const;
  /// All elements in enumeration order.
  std::vector<Element> elements() const;

  /// Product of an arbitrary word. Throws CoxeterError on out-of-range letters.
  Element canonicalize(std::span<const int> word) const;
  /// Word syntax: digits ("121321323"), or "e" / "" for the identity.
  Element parse(std::string_view word) const;
  Element generator(int s) const;

  Element mul(const Element& a, const Element& b) const;
  Element inverse(const Element& a) const;
  /// s*w (Left) or w*s (Right); s is 1-based.
  Element mul_gen(int s, const Element& w, Side side = Side::Left) const;
  std::uint32_t mul_gen(int s, std::uint32_t w, Side side) const {
    return (side == Side::Left ? left_ : right_)[w * rank_ + (s - 1)];
  }

  int length(std::uint32_t w) const { return lengths_[w]; }
  const std::vector<std::uint8_t>& word(std::uint32_t w) const { return words_[w]; }
  bool is_descent(int s, std::uint32_t w, Side side) const {
    return length(mul_gen(s, w, side)) < length(w);
  }
  std::vector<int> descents(const Element& a, Side side) const;
  bool is_involution(std::uint32_t w) const { return inverse_[w] == w; }

  bool bruhat_leq(const Element& a, const Element& b) const;
  bool bruhat_leq(std::uint32_t a, std::uint32_t b) const;

  /// w0 * w
  Element w0_translate(const Element& w) const { return mul(longest(), w); }

private:
  CoxeterSystem() = default;
  void check(const Element& a) const;
  void enumerate();
  void build_bruhat() const;

  CartanSpec spec_;
  int rank_ = 0;
  std::vector<int> cartan_;
  std::vector<std::vector<int>> positive_roots_;
  std::vector<int> lengths_;
  std::vector<std::vector<std::uint8_t>> words_;
  std::vector<std::uint32_t> left_;
  std::vector<std::uint32_t> right_;
  std::vector<std::uint32_t> inverse_;

  // Lower Bruhat intervals as bitsets, built on first use.
  mutable std::once_flag bruhat_once_;
  mutable std::vector<std::vector<std::uint64_t>> below_;
};

std::string format_word(const std::vector<std::uint8_t>& word);

} // namespace pcells

template <> struct std::hash<pcells::Element> {
  std::size_t operator()(const pcells::Element& e) const noexcept { return e.index(); }
};
