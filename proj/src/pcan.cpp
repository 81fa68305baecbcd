#include "pcells/pcan.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace pcells {

BasisTable BasisTable::from_entries(const CoxeterSystem& sys, int p, bool complete,
                                    std::map<std::uint32_t, KLRow> entries, std::string id,
                                    std::string provenance) {
  BasisTable t;
  t.system_ = &sys;
  t.p_ = p;
  t.complete_ = complete;
  t.id_ = std::move(id);
  t.provenance_ = std::move(provenance);
  t.rows_.resize(sys.order());
  for (auto& [w, row] : entries) {
    if (w >= sys.order())
      throw PcanError("table entry index out of range");
    std::erase_if(row, [](const auto& kv) { return kv.second.is_zero(); });
    const bool has_diag = std::any_of(row.begin(), row.end(), [w = w](const auto& kv) { return kv.first == w; });
    if (!has_diag)
      row.emplace_back(w, LaurentPoly(1));
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    t.rows_[w] = std::move(row);
  }
  if (complete)
    for (std::uint32_t w = 0; w < sys.order(); ++w)
      if (!t.rows_[w])
        t.rows_[w] = KLRow{{w, LaurentPoly(1)}};
  return t;
}

BasisTable BasisTable::identity(const CoxeterSystem& sys) {
  return from_entries(sys, 0, true, {}, "identity", "identity table (p = 0)");
}

BasisTable BasisTable::builtin(const CoxeterSystem& sys, int p) {
  const std::string label = sys.spec().label();
  if (p == 0)
    return identity(sys);
  auto idx = [&](std::string_view word) { return sys.parse(word).index(); };
  if (label == "C2" && p == 2) {
    // c_sts = b_sts + b_s, every other element unchanged
    std::map<std::uint32_t, KLRow> e;
    e[idx("121")] = {{idx("121"), LaurentPoly(1)}, {idx("1"), LaurentPoly(1)}};
    return from_entries(sys, 2, true, std::move(e), "builtin-C2-p2", "builtin table C2, p = 2");
  }
  if (label == "C3" && p == 2) {
    const std::uint32_t sts = idx("121");
    const std::uint32_t stsuts = idx("121321");
    const std::uint32_t w0 = sys.longest().index();
    const std::uint32_t w0u = sys.mul_gen(3, w0, Side::Right);
    std::map<std::uint32_t, KLRow> e;
    e[sts] = {{sts, LaurentPoly(1)}};
    e[stsuts] = {{stsuts, LaurentPoly(1)}, {sts, LaurentPoly::v(1) + LaurentPoly::v(-1)}};
    e[w0u] = {{w0u, LaurentPoly(1)}, {stsuts, LaurentPoly(1)}};
    e[w0] = {{w0, LaurentPoly(1)}};
    return from_entries(sys, 2, false, std::move(e), "builtin-C3-p2",
                        "builtin partial table C3, p = 2 (elements sts, stsuts, w0u, w0)");
  }
  throw PcanError("no builtin p-canonical table for " + label + " at p = " + std::to_string(p));
}

const KLRow* BasisTable::row(std::uint32_t w) const {
  if (w >= rows_.size() || !rows_[w])
    return nullptr;
  return &*rows_[w];
}

std::vector<std::uint32_t> BasisTable::domain() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t w = 0; w < rows_.size(); ++w)
    if (rows_[w])
      out.push_back(w);
  return out;
}

std::vector<std::uint32_t> BasisTable::non_identity() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t w = 0; w < rows_.size(); ++w)
    if (rows_[w] && rows_[w]->size() > 1)
      out.push_back(w);
  return out;
}

std::vector<std::uint32_t> BasisTable::non_perverse() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t w = 0; w < rows_.size(); ++w) {
    if (!rows_[w])
      continue;
    for (const auto& [x, m] : *rows_[w]) {
      if (m.size() > 1 || (m.size() == 1 && m.terms()[0].exp != 0)) {
        out.push_back(w);
        break;
      }
    }
  }
  return out;
}

std::vector<Violation> validate(const BasisTable& t) {
  const auto& sys = t.system();
  std::vector<Violation> out;
  for (std::uint32_t w : t.domain()) {
    const std::string ws = format_word(sys.word(w));
    for (const auto& [x, m] : *t.row(w)) {
      const std::string xs = format_word(sys.word(x));
      if (x == w) {
        if (m != LaurentPoly(1))
          out.push_back({ws, "diagonal", "m_{" + ws + "," + ws + "} = " + format(m) + ", expected 1"});
        continue;
      }
      if (!sys.bruhat_leq(x, w))
        out.push_back({ws, "support", xs + " is not below " + ws + " in Bruhat order"});
      if (!m.is_selfdual())
        out.push_back({ws, "self-duality", "m_{" + xs + "," + ws + "} = " + format(m) + " is not bar-invariant"});
      if (!m.has_nonnegative_coeffs())
        out.push_back({ws, "nonnegativity",
                       "m_{" + xs + "," + ws + "} = " + format(m) + " has a negative coefficient"});
    }
  }
  return out;
}

namespace {

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a])))
    ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1])))
    --b;
  return std::string(s.substr(a, b - a));
}

} // namespace

BasisTable parse_pcan(const CoxeterSystem& sys, std::string_view text, std::optional<int> expected_p,
                      const std::string& source, bool check) {
  std::map<std::string, std::string> header;
  std::map<std::uint32_t, KLRow> entries;
  std::map<std::uint32_t, std::size_t> entry_line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& msg) {
    return PcanError(source + ":" + std::to_string(lineno) + ": " + msg);
  };
  static const std::set<std::string> keys{"format", "type", "p", "convention", "complete"};

  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos)
      end = text.size();
    std::string_view raw = text.substr(start, end - start);
    start = end + 1;
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string_view::npos)
      raw = raw.substr(0, hash);
    const std::string line = trim(raw);
    if (line.empty()) {
      if (end == text.size())
        break;
      continue;
    }

    const auto colon = line.find(':');
    if (colon == std::string::npos) {
      const auto sp = line.find(' ');
      const std::string key = line.substr(0, sp);
      if (!keys.count(key))
        throw fail("unknown header '" + key + "'");
      if (!entries.empty())
        throw fail("header '" + key + "' after the first entry");
      if (header.count(key))
        throw fail("repeated header '" + key + "'");
      header[key] = sp == std::string::npos ? "" : trim(std::string_view(line).substr(sp + 1));
      continue;
    }

    if (header.size() != keys.size()) {
      for (const auto& k : keys)
        if (!header.count(k))
          throw fail("entry before header '" + k + "'");
    }
    Element w;
    try {
      w = sys.parse(trim(std::string_view(line).substr(0, colon)));
    } catch (const CoxeterError& e) {
      throw fail(e.what());
    }
    if (entries.count(w.index()))
      throw fail("second entry for " + w.str() + " (first on line " +
                 std::to_string(entry_line[w.index()]) + ")");
    KLRow row;
    std::string_view rest = std::string_view(line).substr(colon + 1);
    while (!trim(rest).empty()) {
      const auto semi = rest.find(';');
      const std::string term = trim(rest.substr(0, semi));
      rest = semi == std::string_view::npos ? std::string_view{} : rest.substr(semi + 1);
      const auto star = term.rfind('*');
      if (star == std::string::npos)
        throw fail("expected POLY*WORD, got '" + term + "'");
      try {
        LaurentPoly m = parse_laurent(term.substr(0, star));
        Element x = sys.parse(trim(std::string_view(term).substr(star + 1)));
        if (std::any_of(row.begin(), row.end(), [&](const auto& kv) { return kv.first == x.index(); }))
          throw fail("repeated term for " + x.str());
        row.emplace_back(x.index(), std::move(m));
      } catch (const PcanError&) {
        throw;
      } catch (const std::exception& e) {
        throw fail(e.what());
      }
    }
    entries.emplace(w.index(), std::move(row));
    entry_line[w.index()] = lineno;
    if (end == text.size())
      break;
  }

  for (const auto& k : keys)
    if (!header.count(k))
      throw fail("missing header '" + k + "'");
  if (header["format"] != "pcan v1")
    throw fail("unsupported format '" + header["format"] + "'");
  if (header["type"] != sys.spec().label())
    throw fail("type mismatch: file declares " + header["type"] + ", system is " + sys.spec().label());
  if (header["convention"] != "soergel-v")
    throw fail("unsupported convention '" + header["convention"] + "' (expected soergel-v)");
  int p = 0;
  try {
    std::size_t used = 0;
    p = std::stoi(header["p"], &used);
    if (used != header["p"].size() || p < 0)
      throw std::invalid_argument("p");
  } catch (const std::exception&) {
    throw fail("bad prime '" + header["p"] + "'");
  }
  if (expected_p && *expected_p != p)
    throw fail("prime mismatch: file declares p = " + std::to_string(p) + ", expected " +
               std::to_string(*expected_p));
  bool complete = false;
  if (header["complete"] == "true")
    complete = true;
  else if (header["complete"] != "false")
    throw fail("complete must be true or false");

  std::string id = source;
  if (auto slash = id.find_last_of('/'); slash != std::string::npos)
    id = id.substr(slash + 1);
  BasisTable t = BasisTable::from_entries(sys, p, complete, std::move(entries), id,
                                          "file " + source);
  auto violations = check ? validate(t) : std::vector<Violation>{};
  if (!violations.empty()) {
    std::string msg = source + ": table rejected:";
    for (const auto& v : violations)
      msg += "\n  " + v.word + ": " + v.kind + ": " + v.details;
    throw PcanError(msg);
  }
  return t;
}

BasisTable load_pcan(const CoxeterSystem& sys, const std::filesystem::path& path,
                     std::optional<int> expected_p, bool check) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw PcanError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_pcan(sys, ss.str(), expected_p, path.string(), check);
}

std::string format_pcan(const BasisTable& t) {
  const auto& sys = t.system();
  std::ostringstream os;
  os << "format pcan v1\n"
     << "type " << sys.spec().label() << "\n"
     << "p " << t.p() << "\n"
     << "convention soergel-v\n"
     << "complete " << (t.complete() ? "true" : "false") << "\n";
  const auto rows = t.complete() ? t.non_identity() : t.domain();
  for (std::uint32_t w : rows) {
    os << format_word(sys.word(w)) << " : 1*" << format_word(sys.word(w));
    const auto& row = *t.row(w);
    for (auto it = row.rbegin(); it != row.rend(); ++it) {
      if (it->first == w)
        continue;
      os << " ; " << format(it->second) << "*" << format_word(sys.word(it->first));
    }
    os << "\n";
  }
  return os.str();
}

HeckeElt pcan_element(const BasisTable& t, const KLTable& kl, const Element& w) {
  if (w.system() != &t.system() || &kl.system() != &t.system())
    throw HeckeError("table, KL table and element must share a Coxeter system");
  const KLRow* row = t.row(w.index());
  if (!row)
    throw PartialTableError({w.str()});
  HeckeElt out(t.system());
  for (const auto& [x, m] : *row)
    for (const auto& [y, h] : kl.row(x))
      out.add(y, m * h);
  return out;
}

std::vector<Element> completeness_check(const BasisTable& t, std::span<const Element> needed) {
  std::vector<Element> missing;
  for (const auto& w : needed)
    if (!t.in_domain(w.index()))
      missing.push_back(w);
  return missing;
}

} // namespace pcells
