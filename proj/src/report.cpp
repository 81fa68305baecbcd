#include "pcells/report.hpp"

#include <sstream>

namespace pcells {

std::string sign_char(int sign) { return sign > 0 ? "+" : "-"; }

CellTable make_table(const CellDecomposition& dec, const TwistReport* report,
                     const std::vector<DistinguishedCell>* dist) {
  const auto& sys = dec.system();
  auto word = [&](std::uint32_t w) { return format_word(sys.word(w)); };
  CellTable t;
  t.type = sys.spec().label();
  t.p = dec.basis().p();
  for (std::size_t c = 0; c < dec.size(); ++c) {
    CellRow row;
    row.id = dec.label(c);
    row.side = to_string(dec.side());
    std::string text;
    for (std::uint32_t w : dec.members(c)) {
      row.members.push_back(word(w));
      std::optional<std::uint32_t> partner;
      if (report && report->at(w).ok)
        partner = report->at(w).schu;
      if (partner && *partner < w)
        continue;
      if (!text.empty())
        text += ", ";
      if (partner && *partner != w) {
        text += "(" + word(w) + ", " + word(*partner) + ")";
        row.schu_pairs.emplace_back(word(w), word(*partner));
      } else {
        text += word(w);
      }
    }
    row.members_text = std::move(text);
    if (report) {
      const auto& values = dec.side() == CellSide::TwoSided ? report->two_values() : report->left_values();
      if (dec.side() != CellSide::Right && values.at(c).constant) {
        row.x = values[c].x;
        row.sign = values[c].sign;
      }
    }
    if (dist)
      for (const auto& dc : *dist)
        if (dc.cell == c)
          for (std::uint32_t d : dc.winners)
            row.distinguished.push_back(word(d));
    t.rows.push_back(std::move(row));
  }
  for (const auto& [lo, up] : dec.hasse())
    t.order.emplace_back(dec.label(lo), dec.label(up));
  if (report)
    t.stats = stats(*report);
  return t;
}

std::string emit_tsv(const CellTable& t) {
  std::ostringstream os;
  os << "cell\tx\tsign\tmembers\n";
  for (const auto& r : t.rows) {
    os << r.id << '\t' << (r.x ? std::to_string(*r.x) : "") << '\t' << (r.sign ? sign_char(*r.sign) : "")
       << '\t' << r.members_text << '\n';
  }
  return os.str();
}

nlohmann::ordered_json to_json(const CellTable& t) {
  using json = nlohmann::ordered_json;
  json j;
  j["type"] = t.type;
  j["p"] = t.p;
  json cells = json::array();
  for (const auto& r : t.rows) {
    json c;
    c["id"] = r.id;
    c["side"] = r.side;
    c["members"] = r.members;
    c["x"] = r.x ? json(*r.x) : json(nullptr);
    c["sign"] = r.sign ? json(sign_char(*r.sign)) : json(nullptr);
    json pairs = json::array();
    for (const auto& [a, b] : r.schu_pairs)
      pairs.push_back({a, b});
    c["schu_pairs"] = std::move(pairs);
    c["distinguished"] = r.distinguished;
    cells.push_back(std::move(c));
  }
  j["cells"] = std::move(cells);
  json order = json::array();
  for (const auto& [a, b] : t.order)
    order.push_back({a, b});
  j["order"] = std::move(order);
  json st = json::object();
  if (t.stats) {
    st["left_cells"] = t.stats->left_cells;
    st["two_sided_cells"] = t.stats->two_sided_cells;
    st["unique_pairs"] = t.stats->unique_pairs;
    st["schu_fixed"] = t.stats->fixed;
    st["schu_moving"] = t.stats->moving;
  }
  j["stats"] = std::move(st);
  return j;
}

std::string emit_json(const CellTable& t) { return to_json(t).dump(2) + "\n"; }

std::string dot_label(const CoxeterSystem& sys, std::uint32_t w) {
  const Element u = sys.w0_translate(sys.element(w));
  if (u.length() < sys.length(w))
    return "[[w0" + (u.index() == 0 ? std::string() : "*" + u.str()) + "]]";
  return "[[" + (w == 0 ? std::string("e") : format_word(sys.word(w))) + "]]";
}

std::string emit_dot(const CellDecomposition& dec, const TwistReport* report) {
  const auto& sys = dec.system();
  std::ostringstream os;
  os << "digraph cells {\n"
     << "  // " << sys.spec().label() << ", " << dec.basis().label() << ", " << to_string(dec.side()) << "\n"
     << "  rankdir=TB;\n"
     << "  node [shape=box];\n";
  const std::vector<CellValue>* values = nullptr;
  if (report)
    values = dec.side() == CellSide::TwoSided ? &report->two_values()
             : dec.side() == CellSide::Left   ? &report->left_values()
                                              : nullptr;
  for (std::size_t c = 0; c < dec.size(); ++c) {
    os << "  c" << c << " [label=\"" << dot_label(sys, dec.representative(c));
    if (values && (*values)[c].constant)
      os << "\\n(" << (*values)[c].x << ", " << sign_char((*values)[c].sign) << ")";
    os << "\"];\n";
  }
  for (const auto& [lo, up] : dec.hasse())
    os << "  c" << up << " -> c" << lo << ";\n";
  os << "}\n";
  return os.str();
}

} // namespace pcells
