#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace lnfade {

/// Comma-separated table with `#` comment lines ahead of the header.
struct CsvTable {
  std::vector<std::string> comments;  // without the leading "# "
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Column index by name, or throws DomainError.
  std::size_t column(const std::string& name) const;
  bool has_column(const std::string& name) const;
  double number(std::size_t row, const std::string& name) const;
};

/// Throws DomainError on a ragged row.
CsvTable read_csv(std::istream& is);

void write_comment_lines(std::ostream& os, const std::vector<std::string>& lines);

std::vector<std::string> split(const std::string& s, char sep);

}  // namespace lnfade
