#pragma once

#include "pcells/twist.hpp"

#include <memory>
#include <string>

namespace pcells::testing {

/// A group, its KL table, and a basis over it.
struct Fixture {
  std::shared_ptr<const CoxeterSystem> sys;
  std::shared_ptr<const KLTable> kl;
  std::unique_ptr<Basis> basis;

  explicit Fixture(const std::string& type, int p = 0) {
    sys = CoxeterSystem::build(CartanSpec::parse(type));
    kl = std::make_shared<const KLTable>(KLTable::compute(*sys));
    std::shared_ptr<const BasisTable> table;
    if (p != 0)
      table = std::make_shared<const BasisTable>(BasisTable::builtin(*sys, p));
    basis = std::make_unique<Basis>(sys, kl, table);
  }

  std::uint32_t idx(const std::string& word) const { return sys->parse(word).index(); }
  std::string word(std::uint32_t w) const { return format_word(sys->word(w)); }
};

inline LaurentPoly P(const std::string& s) { return parse_laurent(s); }

} // namespace pcells::testing
