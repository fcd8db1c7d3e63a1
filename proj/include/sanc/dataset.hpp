#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace sanc {

// Sparse libsvm-style dataset. Indices are 1-based in source files and
// stored 0-based, strictly increasing per row.
struct Dataset {
  struct Entry {
    std::size_t index;
    double value;
  };
  using Row = std::vector<Entry>;

  std::vector<Row> rows;
  std::vector<double> labels;
  std::size_t dim = 0;

  std::size_t size() const { return rows.size(); }
};

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_number(line) {}
  std::size_t line_number;
};

// Parse `<label> <index>:<value> ...` lines; `#` starts a comment,
// indices must be ascending and unique. dim_override > 0 pins the feature
// dimension regardless of the max index seen.
Dataset parse_libsvm(std::istream& in, std::size_t dim_override = 0);
Dataset parse_libsvm_file(const std::string& path, std::size_t dim_override = 0);

void write_libsvm(std::ostream& out, const Dataset& ds);

enum class LabelScheme { zero_one, plus_minus };

// Remap a binary label set: smaller source value -> 0 / -1, larger -> 1 / +1.
Dataset map_labels(const Dataset& ds, LabelScheme target);

}  // namespace sanc
