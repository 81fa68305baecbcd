#include "pcells/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>
#include <sstream>

namespace pcells {

LaurentPoly::LaurentPoly(long long constant) {
  if (constant != 0)
    terms_.push_back({0, Integer(constant)});
}

LaurentPoly::LaurentPoly(const Integer& constant) {
  if (constant != 0)
    terms_.push_back({0, constant});
}

LaurentPoly LaurentPoly::monomial(const Integer& coeff, int exp) {
  LaurentPoly f;
  if (coeff != 0)
    f.terms_.push_back({exp, coeff});
  return f;
}

LaurentPoly LaurentPoly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return a.exp < b.exp; });
  LaurentPoly f;
  for (auto& t : terms) {
    if (!f.terms_.empty() && f.terms_.back().exp == t.exp)
      f.terms_.back().coeff += t.coeff;
    else
      f.terms_.push_back(std::move(t));
    if (f.terms_.back().coeff == 0)
      f.terms_.pop_back();
  }
  return f;
}

Integer LaurentPoly::coeff(int exp) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), exp,
                             [](const Term& t, int e) { return t.exp < e; });
  if (it != terms_.end() && it->exp == exp)
    return it->coeff;
  return 0;
}

int LaurentPoly::val() const {
  if (terms_.empty())
    throw std::domain_error("val of the zero Laurent polynomial is undefined");
  return terms_.front().exp;
}

int LaurentPoly::deg() const {
  if (terms_.empty())
    throw std::domain_error("deg of the zero Laurent polynomial is undefined");
  return terms_.back().exp;
}

LaurentPoly LaurentPoly::bar() const {
  LaurentPoly f;
  f.terms_.reserve(terms_.size());
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it)
    f.terms_.push_back({-it->exp, it->coeff});
  return f;
}

LaurentPoly LaurentPoly::shifted(int k) const {
  LaurentPoly f = *this;
  for (auto& t : f.terms_)
    t.exp += k;
  return f;
}

bool LaurentPoly::has_nonnegative_coeffs() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const Term& t) { return t.coeff > 0; });
}

void LaurentPoly::add_scaled(const LaurentPoly& f, const Integer& c, int shift) {
  if (f.is_zero() || c == 0)
    return;
  std::vector<Term> out;
  out.reserve(terms_.size() + f.terms_.size());
  auto a = terms_.begin();
  auto b = f.terms_.begin();
  while (a != terms_.end() || b != f.terms_.end()) {
    if (b == f.terms_.end() || (a != terms_.end() && a->exp < b->exp + shift)) {
      out.push_back(std::move(*a++));
    } else if (a == terms_.end() || b->exp + shift < a->exp) {
      out.push_back({b->exp + shift, b->coeff * c});
      ++b;
    } else {
      Integer sum = a->coeff + b->coeff * c;
      if (sum != 0)
        out.push_back({a->exp, std::move(sum)});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& g) {
  add_scaled(g, 1, 0);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& g) {
  add_scaled(g, -1, 0);
  return *this;
}

LaurentPoly operator*(const LaurentPoly& f, const LaurentPoly& g) {
  if (f.is_zero() || g.is_zero())
    return {};
  if (g.size() == 1)
    return f.shifted(g.terms_[0].exp) * g.terms_[0].coeff;
  if (f.size() == 1)
    return g.shifted(f.terms_[0].exp) * f.terms_[0].coeff;
  std::vector<LaurentPoly::Term> prod;
  prod.reserve(f.size() * g.size());
  for (const auto& a : f.terms_)
    for (const auto& b : g.terms_)
      prod.push_back({a.exp + b.exp, a.coeff * b.coeff});
  return LaurentPoly::from_terms(std::move(prod));
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& g) {
  *this = *this * g;
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const Integer& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_)
    t.coeff *= c;
  return *this;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly f = *this;
  for (auto& t : f.terms_)
    t.coeff = -t.coeff;
  return f;
}

Classification classify(const LaurentPoly& f) {
  Classification c;
  c.is_selfdual = f.is_selfdual();
  if (f.size() == 1) {
    const auto& t = f.terms()[0];
    if (t.coeff == 1 || t.coeff == -1)
      c.signed_monomial = SignedMonomial{t.coeff == 1 ? 1 : -1, t.exp};
  }
  return c;
}

ParseError::ParseError(const std::string& what, std::size_t position)
    : std::runtime_error(what + " at position " + std::to_string(position)),
      position_(position) {}

namespace {

class PolyParser {
public:
  explicit PolyParser(std::string_view text) {
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (!std::isspace(static_cast<unsigned char>(text[i]))) {
        chars_.push_back(text[i]);
        pos_.push_back(i);
      }
    }
    end_pos_ = text.size();
  }

  LaurentPoly parse() {
    if (chars_.empty())
      fail("empty polynomial");
    std::vector<LaurentPoly::Term> terms;
    int sign = 1;
    if (peek() == '+' || peek() == '-')
      sign = get() == '-' ? -1 : 1;
    terms.push_back(term(sign));
    while (!done()) {
      char c = peek();
      if (c != '+' && c != '-')
        fail(std::string("unexpected '") + c + "'");
      get();
      terms.push_back(term(c == '-' ? -1 : 1));
    }
    return LaurentPoly::from_terms(std::move(terms));
  }

private:
  LaurentPoly::Term term(int sign) {
    Integer coeff = 1;
    bool have_digits = false;
    if (!done() && std::isdigit(static_cast<unsigned char>(peek()))) {
      coeff = digits();
      have_digits = true;
    }
    int exp = 0;
    if (!done() && peek() == 'v') {
      get();
      exp = 1;
      if (!done() && peek() == '^') {
        get();
        int esign = 1;
        if (!done() && (peek() == '+' || peek() == '-'))
          esign = get() == '-' ? -1 : 1;
        if (done() || !std::isdigit(static_cast<unsigned char>(peek())))
          fail("expected exponent");
        Integer e = digits();
        if (e > 1000000)
          fail("exponent out of range");
        exp = esign * e.convert_to<int>();
      }
    } else if (!have_digits) {
      fail("expected term");
    }
    return {exp, sign * coeff};
  }

  Integer digits() {
    std::string s;
    while (!done() && std::isdigit(static_cast<unsigned char>(peek())))
      s.push_back(get());
    return Integer(s);
  }

  bool done() const { return i_ >= chars_.size(); }
  char peek() const { return chars_[i_]; }
  char get() { return chars_[i_++]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("polynomial parse error: " + msg, i_ < pos_.size() ? pos_[i_] : end_pos_);
  }

  std::vector<char> chars_;
  std::vector<std::size_t> pos_;
  std::size_t end_pos_ = 0;
  std::size_t i_ = 0;
};

} // namespace

LaurentPoly parse_laurent(std::string_view text) { return PolyParser(text).parse(); }

std::string format(const LaurentPoly& f) {
  if (f.is_zero())
    return "0";
  std::string out;
  bool first = true;
  for (const auto& t : f.terms()) {
    Integer mag = abs(t.coeff);
    if (t.coeff < 0)
      out += '-';
    else if (!first)
      out += '+';
    first = false;
    if (t.exp == 0) {
      out += mag.str();
      continue;
    }
    if (mag != 1)
      out += mag.str();
    out += 'v';
    if (t.exp != 1)
      out += '^' + std::to_string(t.exp);
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const LaurentPoly& f) { return os << format(f); }

} // namespace pcells
