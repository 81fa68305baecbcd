// pcells: command-line front end.
//
// Exit status: 0 all checks passed, 1 violations found, 2 usage or data error.

#include "pcells/report.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace pcells;

namespace {

constexpr int kOk = 0;
constexpr int kViolations = 1;
constexpr int kError = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string type;
  int p = 0;
  std::string pcan;
  std::string format = "tsv";
  std::string cache_dir;
  std::string side;
  std::string out;
  bool allow_large = false;
  std::string file;           // pcan validate, kl-cache check
  std::string cache_action;   // build | check
};

void write_output(const Options& opt, const std::string& text) {
  if (opt.out.empty()) {
    std::cout << text;
    return;
  }
  const std::filesystem::path path(opt.out);
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary);
    if (!f)
      throw std::runtime_error("cannot write " + tmp.string());
    f << text;
    if (!f)
      throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::shared_ptr<const CoxeterSystem> load_system(const Options& opt) {
  if (opt.type.empty())
    throw UsageError("--type is required");
  const CartanSpec spec = CartanSpec::parse(opt.type);
  if (spec.rank >= 5 && !opt.allow_large)
    throw UsageError(spec.label() + " has rank " + std::to_string(spec.rank) +
                     "; pass --allow-large to run it anyway");
  return CoxeterSystem::build(spec);
}

std::filesystem::path cache_path(const Options& opt, const CoxeterSystem& sys) {
  return std::filesystem::path(opt.cache_dir) / (sys.spec().label() + ".klcache");
}

std::shared_ptr<const KLTable> load_kl(const Options& opt, const CoxeterSystem& sys) {
  if (opt.cache_dir.empty())
    return std::make_shared<const KLTable>(KLTable::compute(sys));
  const auto path = cache_path(opt, sys);
  if (std::filesystem::exists(path))
    return std::make_shared<const KLTable>(cache_load(sys, path));
  auto kl = std::make_shared<const KLTable>(KLTable::compute(sys));
  std::filesystem::create_directories(opt.cache_dir);
  cache_save(*kl, path);
  return kl;
}

std::shared_ptr<const BasisTable> load_table(const Options& opt, const CoxeterSystem& sys) {
  if (opt.p < 0)
    throw UsageError("--p must be 0 or a prime");
  std::string source = opt.pcan;
  if (source.empty())
    source = opt.p == 0 ? "identity" : "builtin";
  if (source == "identity") {
    if (opt.p != 0)
      throw UsageError("--pcan identity is only valid with --p 0");
    return std::make_shared<const BasisTable>(BasisTable::identity(sys));
  }
  if (source == "builtin")
    return std::make_shared<const BasisTable>(BasisTable::builtin(sys, opt.p));
  auto t = std::make_shared<const BasisTable>(load_pcan(sys, source, opt.p));
  return t;
}

struct Session {
  std::shared_ptr<const CoxeterSystem> sys;
  std::shared_ptr<const KLTable> kl;
  std::unique_ptr<Basis> basis;
  std::unique_ptr<Basis> kl_basis;
};

Session open_session(const Options& opt) {
  Session s;
  s.sys = load_system(opt);
  s.kl = load_kl(opt, *s.sys);
  s.basis = std::make_unique<Basis>(s.sys, s.kl, load_table(opt, *s.sys));
  s.kl_basis = std::make_unique<Basis>(s.sys, s.kl);
  return s;
}

CellSide parse_side(const std::string& side, CellSide fallback) {
  if (side.empty())
    return fallback;
  if (side == "left")
    return CellSide::Left;
  if (side == "right")
    return CellSide::Right;
  if (side == "two-sided")
    return CellSide::TwoSided;
  throw UsageError("--side must be left, right or two-sided");
}

std::string render(const Options& opt, const CellTable& table, const CellDecomposition& dec,
                   const TwistReport* report) {
  if (opt.format == "json")
    return emit_json(table);
  if (opt.format == "dot")
    return emit_dot(dec, report);
  return emit_tsv(table);
}

std::string word(const CoxeterSystem& sys, std::uint32_t w) { return format_word(sys.word(w)); }

void print_violations(const std::vector<std::string>& v) {
  for (const auto& line : v)
    std::cerr << "violation: " << line << "\n";
}

/// Prints the exact half-twist identities a partial table supports.
int partial_notice(const Options& opt, const Session& s) {
  std::ostringstream os;
  for (std::uint32_t w : s.basis->table()->domain()) {
    try {
      const HeckeElt h = act_half(*s.basis, w);
      os << "H_w0 * c_" << word(*s.sys, w) << " = " << h.str() << "\n";
    } catch (const PartialTableError& e) {
      os << "H_w0 * c_" << word(*s.sys, w) << " : not expressible, " << e.what() << "\n";
    }
  }
  write_output(opt, os.str());
  std::cerr << "partial table " << s.basis->table()->id() << " covers " << s.basis->table()->domain().size()
            << " of " << s.sys->order() << " elements; cells and eigenvalues need a complete table\n";
  return kError;
}

int cmd_cells(const Options& opt) {
  Session s = open_session(opt);
  const CellSide side = parse_side(opt.side, CellSide::TwoSided);
  const CellDecomposition dec = decompose(*s.basis, side);
  std::optional<CellDecomposition> left, two;
  std::optional<TwistReport> report;
  if (side != CellSide::Right) {
    left = side == CellSide::Left ? dec : decompose(*s.basis, CellSide::Left);
    two = side == CellSide::TwoSided ? dec : decompose(*s.basis, CellSide::TwoSided);
    report = verify(*left, *two);
  }
  const CellDecomposition& shown = side == CellSide::Left ? *left : side == CellSide::TwoSided ? *two : dec;
  const TwistReport* rp = report ? &*report : nullptr;
  write_output(opt, render(opt, make_table(shown, rp), shown, rp));
  return kOk;
}

int cmd_verify(const Options& opt, bool full) {
  Session s = open_session(opt);
  if (!s.basis->complete())
    return partial_notice(opt, s);
  const CellDecomposition left = decompose(*s.basis, CellSide::Left);
  const CellDecomposition two = decompose(*s.basis, CellSide::TwoSided);
  const TwistReport report = verify(left, two);
  auto violations = report.violations();
  for (const auto& m : check_decomposition(two, &left))
    violations.push_back(m);
  if (!full) {
    write_output(opt, render(opt, make_table(left, &report), left, &report));
    for (const auto& r : report.x_reversals())
      std::cerr << "note: x decreases along " << two.label(r.lower) << " < " << two.label(r.upper) << "\n";
  } else {
    const auto checks = full_check(report);
    std::ostringstream os;
    if (opt.format == "json") {
      nlohmann::ordered_json j = nlohmann::ordered_json::array();
      for (const auto& c : checks)
        j.push_back({{"w", word(*s.sys, c.w)}, {"exponent", c.exponent}, {"ok", c.ok}, {"details", c.details}});
      os << j.dump(2) << "\n";
    } else {
      os << "w\texponent\tok\n";
      for (const auto& c : checks)
        os << word(*s.sys, c.w) << '\t' << c.exponent << '\t' << (c.ok ? "ok" : "FAIL") << '\n';
    }
    write_output(opt, os.str());
    for (const auto& c : checks)
      if (!c.ok)
        violations.push_back(word(*s.sys, c.w) + ": full twist: " + c.details);
  }
  print_violations(violations);
  return violations.empty() ? kOk : kViolations;
}

int cmd_distinguished(const Options& opt) {
  Session s = open_session(opt);
  const CellDecomposition left = decompose(*s.basis, CellSide::Left);
  const auto result = distinguished(left);
  std::ostringstream os;
  std::vector<std::string> violations;
  if (opt.format == "json") {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& dc : result) {
      nlohmann::ordered_json winners = nlohmann::ordered_json::array();
      for (std::size_t i = 0; i < dc.winners.size(); ++i)
        winners.push_back({{"d", word(*s.sys, dc.winners[i])}, {"equality", static_cast<bool>(dc.equality[i])}});
      j.push_back({{"cell", left.label(dc.cell)}, {"winners", winners}, {"conforming", dc.conforming()}});
    }
    os << j.dump(2) << "\n";
  } else {
    os << "cell\twinners\tequality\tconforming\n";
    for (const auto& dc : result) {
      std::string ws, eq;
      for (std::size_t i = 0; i < dc.winners.size(); ++i) {
        ws += (i ? ", " : "") + word(*s.sys, dc.winners[i]);
        eq += (i ? ", " : "") + std::string(dc.equality[i] ? "=" : ">");
      }
      os << left.label(dc.cell) << '\t' << ws << '\t' << eq << '\t' << (dc.conforming() ? "yes" : "no") << '\n';
    }
  }
  for (const auto& dc : result)
    if (!dc.conforming())
      violations.push_back("left cell " + left.label(dc.cell) + " has " + std::to_string(dc.winners.size()) +
                           " candidate involutions");
  write_output(opt, os.str());
  print_violations(violations);
  return violations.empty() ? kOk : kViolations;
}

int cmd_afn(const Options& opt) {
  Session s = open_session(opt);
  if (s.sys->rank() > 3 && !opt.allow_large)
    throw UsageError("the a-function costs |W|^2 products; pass --allow-large above rank 3");
  const auto a = a_function_batch(*s.basis);
  const CellDecomposition two = decompose(*s.basis, CellSide::TwoSided);
  std::ostringstream os;
  os << "w\ta\tcell\n";
  for (std::uint32_t w = 0; w < s.sys->order(); ++w)
    os << word(*s.sys, w) << '\t' << a[w] << '\t' << two.label(two.cell_of(w)) << '\n';
  write_output(opt, os.str());
  for (std::size_t c = 0; c < two.size(); ++c)
    for (std::uint32_t w : two.members(c))
      if (a[w] != a[two.representative(c)]) {
        std::cerr << "note: a is not constant on " << two.label(c) << "\n";
        break;
      }
  return kOk;
}

int cmd_diff(const Options& opt) {
  Session s = open_session(opt);
  const CellSide side = parse_side(opt.side, CellSide::TwoSided);
  const CellDecomposition d0 = decompose(*s.kl_basis, side);
  const CellDecomposition dp = decompose(*s.basis, side);
  const DiffReport r = diff(d0, dp);
  auto members = [&](const CellDecomposition& d, std::size_t c) {
    std::string out;
    for (std::uint32_t w : d.members(c))
      out += (out.empty() ? "" : ", ") + word(*s.sys, w);
    return "{" + out + "}";
  };
  std::ostringstream os;
  for (const auto& sp : r.splits) {
    os << "split\t" << d0.label(sp.cell0) << "\t";
    for (std::size_t i = 0; i < sp.parts.size(); ++i)
      os << (i ? " | " : "") << members(dp, sp.parts[i]);
    os << '\n';
  }
  for (const auto& m : r.migrations)
    os << "migrate\t" << word(*s.sys, m.element) << "\t" << d0.label(m.from0) << " -> " << d0.label(m.to0) << '\n';
  for (const auto& oc : r.order_changes)
    os << "order\t" << word(*s.sys, oc.lower) << " < " << word(*s.sys, oc.upper) << "\tp=0:"
       << (oc.in0 ? "yes" : "no") << "\tp=" << opt.p << ":" << (oc.inp ? "yes" : "no") << '\n';
  write_output(opt, os.str());
  return kOk;
}

int cmd_stats(const Options& opt) {
  Session s = open_session(opt);
  if (!s.basis->complete())
    return partial_notice(opt, s);
  const CellDecomposition left = decompose(*s.basis, CellSide::Left);
  const CellDecomposition two = decompose(*s.basis, CellSide::TwoSided);
  const TwistReport report = verify(left, two);
  const StatRow row = stats(report);
  std::ostringstream os;
  if (opt.format == "json") {
    nlohmann::ordered_json j;
    j["type"] = s.sys->spec().label();
    j["p"] = opt.p;
    j["left_cells"] = row.left_cells;
    j["two_sided_cells"] = row.two_sided_cells;
    j["unique_pairs"] = row.unique_pairs;
    j["schu_fixed"] = row.fixed;
    j["schu_moving"] = row.moving;
    os << j.dump(2) << "\n";
  } else {
    os << "type\tp\tleft\ttwo-sided\tunique\tfixed\tmoving\n"
       << s.sys->spec().label() << '\t' << opt.p << '\t' << row.left_cells << '\t' << row.two_sided_cells << '\t'
       << row.unique_pairs << '\t' << row.fixed << '\t' << row.moving << '\n';
  }
  write_output(opt, os.str());
  const auto violations = report.violations();
  print_violations(violations);
  return violations.empty() ? kOk : kViolations;
}

int cmd_export_dot(const Options& opt) {
  Session s = open_session(opt);
  const CellSide side = parse_side(opt.side, CellSide::TwoSided);
  if (side == CellSide::Right) {
    write_output(opt, emit_dot(decompose(*s.basis, side)));
    return kOk;
  }
  const CellDecomposition left = decompose(*s.basis, CellSide::Left);
  const CellDecomposition two = decompose(*s.basis, CellSide::TwoSided);
  const TwistReport report = verify(left, two);
  write_output(opt, emit_dot(side == CellSide::Left ? left : two, &report));
  return kOk;
}

int cmd_kl_cache(const Options& opt) {
  auto sys = load_system(opt);
  std::filesystem::path path = opt.file;
  if (path.empty()) {
    if (opt.cache_dir.empty())
      throw UsageError("give a cache file or --cache-dir (or set PCELLS_CACHE_DIR)");
    path = cache_path(opt, *sys);
  }
  if (opt.cache_action == "build") {
    const KLTable kl = KLTable::compute(*sys);
    if (path.has_parent_path())
      std::filesystem::create_directories(path.parent_path());
    cache_save(kl, path);
    std::cout << "wrote " << path.string() << " (" << sys->order() << " elements)\n";
    return kOk;
  }
  const KLTable kl = cache_load(*sys, path);
  std::cout << path.string() << ": ok (" << kl.built() << " elements)\n";
  return kOk;
}

int cmd_pcan_validate(const Options& opt) {
  auto sys = load_system(opt);
  std::optional<int> expected;
  if (opt.p > 0)
    expected = opt.p;
  const BasisTable t = load_pcan(*sys, opt.file, expected, false);
  const auto violations = validate(t);
  for (const auto& v : violations)
    std::cerr << "violation: " << v.word << ": " << v.kind << ": " << v.details << "\n";
  if (!violations.empty())
    return kViolations;
  std::cout << opt.file << ": ok, " << sys->spec().label() << " p=" << t.p() << ", "
            << (t.complete() ? "complete" : "partial") << ", " << t.domain().size() << " rows, "
            << t.non_identity().size() << " non-identity, " << t.non_perverse().size() << " non-perverse\n";
  return kOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kazhdan-Lusztig and p-canonical cells, half and full twist eigenvalues"};
  app.require_subcommand(1);
  Options opt;
  if (const char* env = std::getenv("PCELLS_CACHE_DIR"))
    opt.cache_dir = env;

  auto common = [&](CLI::App* sub, bool needs_format = true) {
    sub->add_option("--type", opt.type, "Cartan type, e.g. C3, B4, D4, F4, G2")->required();
    sub->add_option("--p", opt.p, "characteristic (0 for the KL basis)");
    sub->add_option("--pcan", opt.pcan, "p-canonical source: builtin, identity, or a table file");
    sub->add_option("--cache-dir", opt.cache_dir, "KL cache directory (default $PCELLS_CACHE_DIR)");
    sub->add_option("--out", opt.out, "write output here instead of stdout");
    sub->add_flag("--allow-large", opt.allow_large, "permit rank 5 and above");
    if (needs_format)
      sub->add_option("--format", opt.format, "tsv, json or dot")
          ->check(CLI::IsMember({"tsv", "json", "dot"}));
  };

  auto* cells = app.add_subcommand("cells", "cell partition and Hasse diagram");
  common(cells);
  cells->add_option("--side", opt.side, "left, right or two-sided");
  auto* vt = app.add_subcommand("verify-twist", "half-twist eigenvalue verification");
  common(vt);
  auto* ft = app.add_subcommand("full-twist", "full-twist cross-check");
  common(ft);
  auto* dist = app.add_subcommand("distinguished", "distinguished involution sweep over left cells");
  common(dist);
  auto* afn = app.add_subcommand("afn", "a-function on all of W");
  common(afn);
  auto* df = app.add_subcommand("diff", "compare p-cells with 0-cells");
  common(df);
  df->add_option("--side", opt.side, "left, right or two-sided");
  auto* st = app.add_subcommand("stats", "cell statistics row");
  common(st);
  auto* dot = app.add_subcommand("export-dot", "cell order as a graph");
  common(dot, false);
  dot->add_option("--side", opt.side, "left, right or two-sided");
  auto* klc = app.add_subcommand("kl-cache", "build or check KL cache files");
  klc->add_option("action", opt.cache_action, "build or check")->required()->check(CLI::IsMember({"build", "check"}));
  klc->add_option("file", opt.file, "cache file (default <cache-dir>/<TYPE>.klcache)");
  klc->add_option("--type", opt.type, "Cartan type")->required();
  klc->add_option("--cache-dir", opt.cache_dir, "KL cache directory");
  klc->add_flag("--allow-large", opt.allow_large, "permit rank 5 and above");
  auto* pc = app.add_subcommand("pcan", "p-canonical table files");
  pc->require_subcommand(1);
  auto* pcv = pc->add_subcommand("validate", "check a table file");
  pcv->add_option("file", opt.file, "table file")->required();
  pcv->add_option("--type", opt.type, "Cartan type")->required();
  pcv->add_option("--p", opt.p, "expected characteristic");
  pcv->add_flag("--allow-large", opt.allow_large, "permit rank 5 and above");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kError;
  }

  try {
    if (*cells)
      return cmd_cells(opt);
    if (*vt)
      return cmd_verify(opt, false);
    if (*ft)
      return cmd_verify(opt, true);
    if (*dist)
      return cmd_distinguished(opt);
    if (*afn)
      return cmd_afn(opt);
    if (*df)
      return cmd_diff(opt);
    if (*st)
      return cmd_stats(opt);
    if (*dot)
      return cmd_export_dot(opt);
    if (*klc)
      return cmd_kl_cache(opt);
    if (*pcv)
      return cmd_pcan_validate(opt);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kError;
  } catch (const PartialTableError& e) {
    std::cerr << "partial table: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
