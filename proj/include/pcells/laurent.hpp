#pragma once

// Integer Laurent polynomials in one variable v.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pcells {

using Integer = boost::multiprecision::cpp_int;

/// Sparse Z[v, v^-1] element. Terms are kept sorted by exponent and no
/// stored coefficient is zero, so structural equality is value equality.
class LaurentPoly {
public:
  struct Term {
    int exp;
    Integer coeff;
    bool operator==(const Term&) const = default;
  };

  LaurentPoly() = default;
  LaurentPoly(long long constant); // NOLINT: implicit on purpose, 0 and 1 read naturally
  explicit LaurentPoly(const Integer& constant);

  static LaurentPoly monomial(const Integer& coeff, int exp);
  /// v^exp
  static LaurentPoly v(int exp = 1) { return monomial(Integer(1), exp); }
  /// Builds from unsorted (exp, coeff) pairs; repeated exponents are summed.
  static LaurentPoly from_terms(std::vector<Term> terms);

  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  std::span<const Term> terms() const { return terms_; }
  Integer coeff(int exp) const;

  /// Smallest exponent. Throws std::domain_error on the zero polynomial.
  int val() const;
  /// Largest exponent. Throws std::domain_error on the zero polynomial.
  int deg() const;

  /// v -> v^-1
  LaurentPoly bar() const;
  /// Multiplication by v^k.
  LaurentPoly shifted(int k) const;
  bool is_selfdual() const { return bar() == *this; }
  bool has_nonnegative_coeffs() const;

  /// *this += c * v^shift * f, without temporaries in the common case.
  void add_scaled(const LaurentPoly& f, const Integer& c = 1, int shift = 0);

  LaurentPoly& operator+=(const LaurentPoly& g);
  LaurentPoly& operator-=(const LaurentPoly& g);
  LaurentPoly& operator*=(const LaurentPoly& g);
  LaurentPoly& operator*=(const Integer& c);

  friend LaurentPoly operator+(LaurentPoly f, const LaurentPoly& g) { return f += g; }
  friend LaurentPoly operator-(LaurentPoly f, const LaurentPoly& g) { return f -= g; }
  friend LaurentPoly operator*(const LaurentPoly& f, const LaurentPoly& g);
  friend LaurentPoly operator*(LaurentPoly f, const Integer& c) { return f *= c; }
  friend LaurentPoly operator*(const Integer& c, LaurentPoly f) { return f *= c; }
  LaurentPoly operator-() const;

  bool operator==(const LaurentPoly&) const = default;

private:
  std::vector<Term> terms_;
};

struct SignedMonomial {
  int sign; // +1 or -1
  int exp;
  bool operator==(const SignedMonomial&) const = default;
};

struct Classification {
  bool is_selfdual = false;
  /// Populated iff the polynomial is exactly +v^k or -v^k.
  std::optional<SignedMonomial> signed_monomial;
};

Classification classify(const LaurentPoly& f);

class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t position);
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

/// Grammar: optional sign, then terms joined by + or -; a term is
/// `N`, `Nv`, `v`, or `[N]v^K` with K a signed integer. Whitespace is ignored.
LaurentPoly parse_laurent(std::string_view text);

/// Deterministic rendering, increasing exponent order: "-3v^-4+2", "v^-1+v", "0".
std::string format(const LaurentPoly& f);

std::ostream& operator<<(std::ostream& os, const LaurentPoly& f);

} // namespace pcells
