#pragma once

#include "knotscope/record.hpp"

#include <filesystem>
#include <iosfwd>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace knotscope {

/// Column layout of an input file. `rename` maps a header name in the file to
/// a recognised column name; `required` lists recognised columns that must be
/// present in the header.
struct Schema {
  std::map<std::string, std::string> rename;
  std::vector<std::string> required{"id"};
};

/// Parses a comma-separated file with a header row into a Dataset.
/// Errors carry the 1-based data row number. Cell decoding is sharded over
/// `threads`; the result equals the sequential parse.
Dataset parse_dataset(std::istream& in, const Schema& schema = {},
                      std::string provenance = "stream", unsigned threads = 1);
Dataset load_dataset(const std::filesystem::path& path, const Schema& schema = {},
                     unsigned threads = 1);

/// Writes the canonical form: recognised columns in a fixed order (only those
/// used by some record), then extra columns, cells quoted when needed.
void write_dataset(std::ostream& out, const Dataset& d);

enum class AlternatingMode { kAll, kOnly, kExclude };
/// Accepts all, only, exclude and the aliases alt, nonalt.
AlternatingMode parse_alternating_mode(std::string_view text);
std::string_view name(AlternatingMode mode);

struct RecordFilter {
  std::optional<int> max_crossing;
  std::optional<int> exact_crossing;
  AlternatingMode alternating = AlternatingMode::kAll;

  bool matches(const KnotRecord& r) const;
  std::string describe() const;
};

/// Order-preserving subsequence of records matching `pred`. A record lacking
/// a field the predicate needs is excluded.
Dataset filter(const Dataset& d, const RecordFilter& pred);

/// Mirror image of one record; id gets a trailing "!".
KnotRecord mirror(const KnotRecord& r);

/// d followed by the mirror of each record, in the same order.
Dataset with_mirrors(const Dataset& d);

namespace csv {

/// Splits one logical CSV record (RFC 4180 quoting; quoted cells may span
/// lines). Returns false at end of input.
bool read_row(std::istream& in, std::vector<std::string>& cells, std::size_t& line);
std::string quote(const std::string& cell);
void write_row(std::ostream& out, const std::vector<std::string>& cells);

}  // namespace csv

}  // namespace knotscope
