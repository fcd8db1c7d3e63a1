#include "sanc/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace sanc {
namespace {

double parse_double(const std::string& tok, std::size_t line, const char* what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    if (!std::isfinite(v)) throw ParseError(std::string("non-finite ") + what + " '" + tok + "'", line);
    return v;
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    throw ParseError(std::string("malformed ") + what + " '" + tok + "'", line);
  }
}

}  // namespace

Dataset parse_libsvm(std::istream& in, std::size_t dim_override) {
  Dataset ds;
  std::string line;
  std::size_t lineno = 0;
  std::size_t max_index = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;  // blank or comment-only line

    ds.labels.push_back(parse_double(tok, lineno, "label"));
    Dataset::Row row;
    std::size_t prev_index = 0;  // 1-based; 0 means none seen yet
    while (ls >> tok) {
      const auto colon = tok.find(':');
      if (colon == std::string::npos || colon == 0 || colon + 1 == tok.size())
        throw ParseError("malformed feature token '" + tok + "'", lineno);
      std::size_t index = 0;
      const char* first = tok.data();
      const auto [ptr, ec] = std::from_chars(first, first + colon, index);
      if (ec != std::errc() || ptr != first + colon || index == 0)
        throw ParseError("malformed feature index '" + tok.substr(0, colon) + "'", lineno);
      if (index == prev_index) throw ParseError("duplicate feature index", lineno);
      if (index < prev_index) throw ParseError("non-ascending feature index", lineno);
      prev_index = index;
      const double value = parse_double(tok.substr(colon + 1), lineno, "feature value");
      row.push_back({index - 1, value});
      max_index = std::max(max_index, index);
    }
    ds.rows.push_back(std::move(row));
  }
  if (ds.rows.empty()) throw ParseError("empty dataset", lineno == 0 ? 1 : lineno);
  ds.dim = dim_override > 0 ? dim_override : max_index;
  if (dim_override > 0 && max_index > dim_override)
    throw ParseError("feature index exceeds configured dimension", lineno);
  return ds;
}

Dataset parse_libsvm_file(const std::string& path, std::size_t dim_override) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset file: " + path);
  return parse_libsvm(in, dim_override);
}

void write_libsvm(std::ostream& out, const Dataset& ds) {
  char buf[64];
  for (std::size_t i = 0; i < ds.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", ds.labels[i]);
    out << buf;
    for (const auto& [index, value] : ds.rows[i]) {
      std::snprintf(buf, sizeof buf, "%.17g", value);
      out << ' ' << (index + 1) << ':' << buf;
    }
    out << '\n';
  }
}

Dataset map_labels(const Dataset& ds, LabelScheme target) {
  std::set<double> distinct(ds.labels.begin(), ds.labels.end());
  if (distinct.size() != 2)
    throw std::invalid_argument("map_labels: expected exactly two distinct labels, got " +
                                std::to_string(distinct.size()));
  const double low = *distinct.begin();
  const double lo_target = target == LabelScheme::zero_one ? 0.0 : -1.0;
  const double hi_target = 1.0;
  Dataset out = ds;
  for (double& y : out.labels) y = (y == low) ? lo_target : hi_target;
  return out;
}

}  // namespace sanc
