#include "xroads/app/compare.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "xroads/app/errors.hpp"

namespace xroads::app {

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw SchemaError("cannot read " + path.string());
  }
  CsvTable t;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      cells.push_back(cell);
    }
    if (first) {
      t.header = std::move(cells);
      first = false;
    } else {
      if (cells.size() != t.header.size()) {
        throw SchemaError(path.string() + ": row " + std::to_string(t.rows.size() + 1) + " has " +
                          std::to_string(cells.size()) + " cells, header has " + std::to_string(t.header.size()));
      }
      t.rows.push_back(std::move(cells));
    }
  }
  if (first) {
    throw SchemaError(path.string() + ": missing header row");
  }
  return t;
}

namespace {

double to_double(const std::string& s, const char* what) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw SchemaError(std::string("non-numeric ") + what + " '" + s + "'");
  }
  return v;
}

}  // namespace

Tolerance parse_tolerance(std::string_view spec) {
  Tolerance tol;
  bool any = false;
  std::stringstream ss{std::string(spec)};
  std::string part;
  while (std::getline(ss, part, ',')) {
    const auto colon = part.find(':');
    if (colon == std::string::npos) {
      throw SchemaError("tolerance '" + part + "' must be abs:<x> or sigma:<k>");
    }
    const std::string kind = part.substr(0, colon);
    const double v = to_double(part.substr(colon + 1), "tolerance");
    if (!(v >= 0.0)) {
      throw SchemaError("tolerance values must be >= 0");
    }
    if (kind == "abs") {
      tol.abs = v;
    } else if (kind == "sigma") {
      tol.sigma = v;
    } else {
      throw SchemaError("unknown tolerance kind '" + kind + "' (use abs or sigma)");
    }
    any = true;
  }
  if (!any) {
    throw SchemaError("empty tolerance specification");
  }
  return tol;
}

CompareReport compare_tables(const CsvTable& a, const CsvTable& b, const Tolerance& tol) {
  const auto column = [](const CsvTable& t, const std::string& name) -> long {
    const auto it = std::find(t.header.begin(), t.header.end(), name);
    return it == t.header.end() ? -1 : static_cast<long>(it - t.header.begin());
  };
  const auto keys = [](const CsvTable& t) {
    std::vector<std::size_t> k;
    for (std::size_t i = 0; i < t.header.size(); ++i) {
      if (t.header[i] != "value" && t.header[i] != "stderr" && t.header[i] != "realizations") {
        k.push_back(i);
      }
    }
    return k;
  };
  const long va = column(a, "value");
  const long vb = column(b, "value");
  if (va < 0 || vb < 0) {
    throw SchemaError("both files need a 'value' column");
  }
  const long sa = column(a, "stderr");
  const long sb = column(b, "stderr");
  const long na = column(a, "realizations");
  const long nb = column(b, "realizations");
  if (tol.sigma > 0.0 && sa < 0 && sb < 0) {
    throw SchemaError("sigma tolerance needs a 'stderr' column in at least one file");
  }
  const auto ka = keys(a);
  const auto kb = keys(b);
  std::vector<std::string> names_a;
  std::vector<std::string> names_b;
  for (auto i : ka) {
    names_a.push_back(a.header[i]);
  }
  for (auto i : kb) {
    names_b.push_back(b.header[i]);
  }
  if (names_a != names_b) {
    throw AxisMismatch("key columns differ between the two files");
  }
  if (a.rows.size() != b.rows.size()) {
    throw AxisMismatch("files have " + std::to_string(a.rows.size()) + " and " + std::to_string(b.rows.size()) +
                       " rows");
  }

  CompareReport report;
  double worst_ratio = -1.0;
  for (std::size_t r = 0; r < a.rows.size(); ++r) {
    PointDelta p;
    p.row = r;
    for (std::size_t k = 0; k < ka.size(); ++k) {
      const double x = to_double(a.rows[r][ka[k]], "key");
      const double y = to_double(b.rows[r][kb[k]], "key");
      if (x != y) {
        throw AxisMismatch("row " + std::to_string(r + 1) + ": " + names_a[k] + " is " + a.rows[r][ka[k]] +
                           " vs " + b.rows[r][kb[k]]);
      }
      p.key += (k ? " " : "") + names_a[k] + "=" + a.rows[r][ka[k]];
    }
    p.a = to_double(a.rows[r][va], "value");
    p.b = to_double(b.rows[r][vb], "value");
    // A simulated probability carries at least the binomial error it would
    // have if the other file's value were the truth; this keeps points where
    // the estimate is exactly 0 or 1 from getting a zero error bar.
    const auto stderr_of = [&](const CsvTable& t, long s_col, long n_col, double other) {
      double se = s_col >= 0 ? to_double(t.rows[r][s_col], "stderr") : 0.0;
      if (n_col >= 0) {
        const double n = to_double(t.rows[r][n_col], "realizations");
        const double q = std::clamp(other, 0.0, 1.0);
        se = std::max(se, std::sqrt(q * (1.0 - q) / n));
      }
      return se;
    };
    const double se2 = std::pow(stderr_of(a, sa, na, p.b), 2) + std::pow(stderr_of(b, sb, nb, p.a), 2);
    p.delta = std::abs(p.a - p.b);
    p.limit = std::max(tol.abs, tol.sigma * std::sqrt(se2));
    p.ok = p.delta <= p.limit;
    report.pass = report.pass && p.ok;
    report.max_delta = std::max(report.max_delta, p.delta);
    const double ratio = p.limit > 0.0 ? p.delta / p.limit : (p.delta > 0.0 ? INFINITY : 0.0);
    if (ratio > worst_ratio) {
      worst_ratio = ratio;
      report.worst = r;
    }
    report.points.push_back(std::move(p));
  }
  return report;
}

CompareReport compare_files(const std::filesystem::path& a, const std::filesystem::path& b, const Tolerance& tol) {
  return compare_tables(read_csv(a), read_csv(b), tol);
}

}  // namespace xroads::app
