#include "knotscope/ingest.hpp"

#include "knotscope/error.hpp"
#include "knotscope/parallel.hpp"
#include "detail/text.hpp"

#include <array>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

namespace knotscope {
namespace csv {

bool read_row(std::istream& in, std::vector<std::string>& cells, std::size_t& line) {
  cells.clear();
  if (in.peek() == std::char_traits<char>::eof()) return false;
  std::string cell;
  bool quoted = false;
  bool was_quoted = false;
  ++line;
  for (;;) {
    int ch = in.get();
    if (ch == std::char_traits<char>::eof()) {
      if (quoted) throw ParseError("unterminated quoted cell starting before line " + std::to_string(line));
      break;
    }
    char c = static_cast<char>(ch);
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get();
          cell += '"';
        } else {
          quoted = false;
        }
      } else {
        if (c == '\n') ++line;
        cell += c;
      }
      continue;
    }
    if (c == '"' && cell.empty() && !was_quoted) {
      quoted = was_quoted = true;
    } else if (c == ',') {
      cells.push_back(std::move(cell));
      cell.clear();
      was_quoted = false;
    } else if (c == '\n') {
      break;
    } else if (c == '\r' && in.peek() == '\n') {
      // CRLF: the '\n' ends the row on the next read
    } else if (was_quoted) {
      throw ParseError("text after closing quote on line " + std::to_string(line));
    } else {
      cell += c;
    }
  }
  cells.push_back(std::move(cell));
  return true;
}

std::string quote(const std::string& cell) {
  if (cell.find_first_of(",\"\n\r") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

void write_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (k) out << ',';
    out << quote(cells[k]);
  }
  out << '\n';
}

}  // namespace csv

namespace {

enum class Column {
  kId,
  kCrossings,
  kAlternating,
  kSignature,
  kS,
  kAlexander,
  kJones,
  kHomflypt,
  kKhovanov,
  kQDiag,
  kZ2Diag,
  kZ4Diag,
  kSupport,
  kExtra,
};

constexpr std::array<std::string_view, 13> kColumnNames{
    "id",       "crossings", "alternating", "signature", "s",          "alexander", "jones",
    "homflypt", "khovanov",  "kh_q_diag",   "kh_z2_diag", "kh_z4_diag", "kh_support"};

Column column_of(std::string_view header) {
  for (std::size_t k = 0; k < kColumnNames.size(); ++k)
    if (header == kColumnNames[k]) return static_cast<Column>(k);
  return Column::kExtra;
}

void decode_cell(KnotRecord& r, Column col, const std::string& header, std::string_view cell) {
  switch (col) {
    case Column::kId: r.id = std::string(cell); break;
    case Column::kCrossings: r.crossings = detail::parse_int<int>(cell, "crossings"); break;
    case Column::kAlternating:
      if (cell == "1") r.alternating = true;
      else if (cell == "0") r.alternating = false;
      else throw ParseError("alternating must be 0 or 1, got '" + std::string(cell) + "'");
      break;
    case Column::kSignature: {
      int v = detail::parse_int<int>(cell, "signature");
      if (v % 2 != 0) throw ValidationError("signature " + std::to_string(v) + " is odd");
      r.signature = v;
      break;
    }
    case Column::kS: {
      int v = detail::parse_int<int>(cell, "s");
      if (v % 2 != 0) throw ValidationError("s-invariant " + std::to_string(v) + " is odd");
      r.s = v;
      break;
    }
    case Column::kAlexander: r.alexander = parse_poly1(cell); break;
    case Column::kJones: r.jones = parse_poly1(cell); break;
    case Column::kHomflypt: r.homflypt = parse_poly2(cell); break;
    case Column::kKhovanov: r.khovanov = parse_poly2(cell); break;
    case Column::kQDiag: r.kh_q_diag = parse_diagonal_list(cell); break;
    case Column::kZ2Diag: r.kh_z2_diag = parse_diagonal_list(cell); break;
    case Column::kZ4Diag: r.kh_z4_diag = parse_diagonal_list(cell); break;
    case Column::kSupport: r.kh_support = parse_support(cell); break;
    case Column::kExtra: r.extra.emplace(header, std::string(cell)); break;
  }
}

KnotRecord decode_row(const std::vector<std::string>& cells, const std::vector<Column>& cols,
                      const std::vector<std::string>& headers, std::size_t row) {
  if (cells.size() != cols.size())
    throw ParseError("expected " + std::to_string(cols.size()) + " cells, found " +
                         std::to_string(cells.size()),
                     row);
  KnotRecord r;
  for (std::size_t k = 0; k < cells.size(); ++k) {
    auto cell = detail::trim(cells[k]);
    if (cell.empty()) continue;
    try {
      decode_cell(r, cols[k], headers[k], cell);
    } catch (const ParseError& e) {
      throw ParseError("column '" + headers[k] + "': " + e.what(), row);
    } catch (const ValidationError& e) {
      throw ValidationError("row " + std::to_string(row) + ": column '" + headers[k] + "': " + e.what());
    }
  }
  if (r.id.empty()) throw ValidationError("row " + std::to_string(row) + ": empty id");
  return r;
}

std::vector<std::string> encode_row(const KnotRecord& r, const std::vector<Column>& cols,
                                    const std::vector<std::string>& headers) {
  std::vector<std::string> cells;
  cells.reserve(cols.size());
  auto opt_int = [](const std::optional<int>& v) { return v ? std::to_string(*v) : std::string(); };
  auto opt_poly = [](const auto& v) { return v ? to_text(*v) : std::string(); };
  auto opt_diag = [](const auto& v) { return v ? diagonal_list_text(*v) : std::string(); };
  for (std::size_t k = 0; k < cols.size(); ++k) {
    switch (cols[k]) {
      case Column::kId: cells.push_back(r.id); break;
      case Column::kCrossings: cells.push_back(opt_int(r.crossings)); break;
      case Column::kAlternating:
        cells.push_back(r.alternating ? (*r.alternating ? "1" : "0") : "");
        break;
      case Column::kSignature: cells.push_back(opt_int(r.signature)); break;
      case Column::kS: cells.push_back(opt_int(r.s)); break;
      case Column::kAlexander: cells.push_back(opt_poly(r.alexander)); break;
      case Column::kJones: cells.push_back(opt_poly(r.jones)); break;
      case Column::kHomflypt: cells.push_back(opt_poly(r.homflypt)); break;
      case Column::kKhovanov: cells.push_back(opt_poly(r.khovanov)); break;
      case Column::kQDiag: cells.push_back(opt_diag(r.kh_q_diag)); break;
      case Column::kZ2Diag: cells.push_back(opt_diag(r.kh_z2_diag)); break;
      case Column::kZ4Diag: cells.push_back(opt_diag(r.kh_z4_diag)); break;
      case Column::kSupport: cells.push_back(r.kh_support ? to_text(*r.kh_support) : ""); break;
      case Column::kExtra: {
        auto it = r.extra.find(headers[k]);
        cells.push_back(it == r.extra.end() ? "" : it->second);
        break;
      }
    }
  }
  return cells;
}

bool column_used(const Dataset& d, Column c) {
  for (const auto& r : d.records()) {
    switch (c) {
      case Column::kId: return true;
      case Column::kCrossings: if (r.crossings) return true; break;
      case Column::kAlternating: if (r.alternating) return true; break;
      case Column::kSignature: if (r.signature) return true; break;
      case Column::kS: if (r.s) return true; break;
      case Column::kAlexander: if (r.alexander) return true; break;
      case Column::kJones: if (r.jones) return true; break;
      case Column::kHomflypt: if (r.homflypt) return true; break;
      case Column::kKhovanov: if (r.khovanov) return true; break;
      case Column::kQDiag: if (r.kh_q_diag) return true; break;
      case Column::kZ2Diag: if (r.kh_z2_diag) return true; break;
      case Column::kZ4Diag: if (r.kh_z4_diag) return true; break;
      case Column::kSupport: if (r.kh_support) return true; break;
      case Column::kExtra: break;
    }
  }
  return c == Column::kId;
}

}  // namespace

Dataset parse_dataset(std::istream& in, const Schema& schema, std::string provenance,
                      unsigned threads) {
  std::size_t line = 0;
  std::vector<std::string> header;
  if (!csv::read_row(in, header, line)) throw ParseError("missing header row");
  if (!header.empty() && header[0].starts_with("\xEF\xBB\xBF")) header[0].erase(0, 3);

  std::vector<std::string> names;
  std::vector<Column> cols;
  std::set<std::string> seen;
  for (const auto& raw : header) {
    std::string h(detail::trim(raw));
    if (auto it = schema.rename.find(h); it != schema.rename.end()) h = it->second;
    if (!seen.insert(h).second) throw ParseError("duplicate header column '" + h + "'");
    cols.push_back(column_of(h));
    names.push_back(std::move(h));
  }
  for (const auto& req : schema.required)
    if (!seen.contains(req)) throw MissingDataError("required column '" + req + "' missing from header");

  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> cells;
  while (csv::read_row(in, cells, line)) {
    if (cells.size() == 1 && detail::trim(cells[0]).empty()) continue;
    rows.push_back(std::move(cells));
  }

  std::vector<KnotRecord> records(rows.size());
  parallel_for(rows.size(), threads,
               [&](std::size_t k) { records[k] = decode_row(rows[k], cols, names, k + 1); });
  return Dataset(std::move(records), std::move(provenance));
}

Dataset load_dataset(const std::filesystem::path& path, const Schema& schema, unsigned threads) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingDataError("cannot open dataset '" + path.string() + "'");
  return parse_dataset(in, schema, path.string(), threads);
}

void write_dataset(std::ostream& out, const Dataset& d) {
  std::vector<Column> cols;
  std::vector<std::string> headers;
  for (std::size_t k = 0; k < kColumnNames.size(); ++k) {
    auto c = static_cast<Column>(k);
    if (column_used(d, c)) {
      cols.push_back(c);
      headers.emplace_back(kColumnNames[k]);
    }
  }
  for (const auto& e : d.extra_columns()) {
    cols.push_back(Column::kExtra);
    headers.push_back(e);
  }
  csv::write_row(out, headers);
  for (const auto& r : d.records()) csv::write_row(out, encode_row(r, cols, headers));
}

AlternatingMode parse_alternating_mode(std::string_view text) {
  text = detail::trim(text);
  if (text == "all") return AlternatingMode::kAll;
  if (text == "only" || text == "alt") return AlternatingMode::kOnly;
  if (text == "exclude" || text == "nonalt") return AlternatingMode::kExclude;
  throw ValidationError("unknown alternating mode '" + std::string(text) +
                        "' (expected all, only/alt, exclude/nonalt)");
}

std::string_view name(AlternatingMode mode) {
  switch (mode) {
    case AlternatingMode::kAll: return "all";
    case AlternatingMode::kOnly: return "alt";
    case AlternatingMode::kExclude: return "nonalt";
  }
  return "?";
}

bool RecordFilter::matches(const KnotRecord& r) const {
  if (max_crossing && (!r.crossings || *r.crossings > *max_crossing)) return false;
  if (exact_crossing && (!r.crossings || *r.crossings != *exact_crossing)) return false;
  switch (alternating) {
    case AlternatingMode::kAll: return true;
    case AlternatingMode::kOnly: return r.alternating && *r.alternating;
    case AlternatingMode::kExclude: return r.alternating && !*r.alternating;
  }
  return true;
}

std::string RecordFilter::describe() const {
  std::string out;
  auto add = [&out](const std::string& s) { out += (out.empty() ? "" : ",") + s; };
  if (max_crossing) add("crossings<=" + std::to_string(*max_crossing));
  if (exact_crossing) add("crossings=" + std::to_string(*exact_crossing));
  if (alternating != AlternatingMode::kAll) add("group=" + std::string(name(alternating)));
  return out.empty() ? "all" : out;
}

Dataset filter(const Dataset& d, const RecordFilter& pred) {
  std::vector<KnotRecord> kept;
  for (const auto& r : d.records())
    if (pred.matches(r)) kept.push_back(r);
  return Dataset(std::move(kept), d.provenance());
}

KnotRecord mirror(const KnotRecord& r) {
  KnotRecord m = r;
  m.id = r.id + "!";
  if (r.signature) m.signature = -*r.signature;
  if (r.s) m.s = -*r.s;
  if (r.jones) m.jones = substitute_power(*r.jones, -1);
  if (r.homflypt)
    m.homflypt = r.homflypt->map_exponents([](const Exponent2& e) { return Exponent2{-e.first, e.second}; });
  if (r.khovanov)
    m.khovanov = r.khovanov->map_exponents([](const Exponent2& e) { return Exponent2{-e.first, -e.second}; });
  if (r.kh_support) m.kh_support = r.kh_support->mirrored();
  if (r.kh_q_diag || r.kh_z2_diag || r.kh_z4_diag) {
    DiagonalSets sets{r.kh_q_diag.value_or(std::vector<int>{}), r.kh_z2_diag, r.kh_z4_diag};
    auto mirrored = sets.mirrored();
    if (r.kh_q_diag) m.kh_q_diag = mirrored.rational;
    m.kh_z2_diag = mirrored.z2;
    m.kh_z4_diag = mirrored.z4;
  }
  return m;
}

Dataset with_mirrors(const Dataset& d) {
  std::vector<KnotRecord> out = d.records();
  out.reserve(2 * d.size());
  for (const auto& r : d.records()) out.push_back(mirror(r));
  return Dataset(std::move(out), d.provenance() + " +mirrors");
}

}  // namespace knotscope
