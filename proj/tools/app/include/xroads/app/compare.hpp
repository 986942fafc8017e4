#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace xroads::app {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv(const std::filesystem::path& path);

/// "abs:<x>", "sigma:<k>" or both separated by a comma. A point passes when
/// |a - b| <= max(abs, k * stderr).
struct Tolerance {
  double abs = 0.0;
  double sigma = 0.0;
};

Tolerance parse_tolerance(std::string_view spec);

struct PointDelta {
  std::size_t row = 0;
  std::string key;  ///< "col=value ..." of the key columns
  double a = 0.0;
  double b = 0.0;
  double delta = 0.0;
  double limit = 0.0;
  bool ok = true;
};

struct CompareReport {
  std::vector<PointDelta> points;
  bool pass = true;
  double max_delta = 0.0;
  std::size_t worst = 0;  ///< index of the point with the largest delta/limit ratio
};

/// Compares the "value" columns of two result files row by row. Every other
/// column except "stderr" and "realizations" is a key column and must match
/// exactly; otherwise AxisMismatch is thrown. With a "realizations" column the
/// standard error of a file is at least the binomial error at the other
/// file's value.
CompareReport compare_files(const std::filesystem::path& a, const std::filesystem::path& b, const Tolerance& tol);

CompareReport compare_tables(const CsvTable& a, const CsvTable& b, const Tolerance& tol);

}  // namespace xroads::app
