#include "xroads/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "xroads/errors.hpp"

namespace xroads::numerics {

namespace {

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

}  // namespace

double gamma_fn(double x) {
  if (is_nonpositive_integer(x)) {
    throw PoleError("gamma function pole at " + std::to_string(x));
  }
  return std::tgamma(x);
}

double rgamma(double x) {
  if (is_nonpositive_integer(x)) {
    return 0.0;
  }
  return 1.0 / std::tgamma(x);
}

double pochhammer(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) {
    r *= x + i;
  }
  return r;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) {
    return 0.0;
  }
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
  }
  return r;
}

namespace {

// After the Pfaff map the series ratio is z / (z - 1), so about 30 (1 - z) terms
// are needed; the cap covers |z| up to roughly 6e4.
constexpr int kMaxSeriesTerms = 2000000;

// sum_n (a)_n (b)_n / (Gamma(c+n) n!) z^n
double hyp2f1_series(double a, double b, double c, double z) {
  int n0 = 0;
  if (is_nonpositive_integer(c)) {
    n0 = static_cast<int>(-c) + 1;
  }
  double term = pochhammer(a, n0) * pochhammer(b, n0) * rgamma(c + n0) * std::pow(z, n0) /
                std::tgamma(n0 + 1.0);
  double sum = term;
  int small = 0;
  for (int n = n0; n < kMaxSeriesTerms; ++n) {
    term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
    sum += term;
    if (term == 0.0) {
      return sum;
    }
    if (std::abs(term) <= 1e-17 * std::abs(sum)) {
      if (++small == 2) {
        return sum;
      }
    } else {
      small = 0;
    }
  }
  throw NonConvergence("2F1 series did not converge");
}

}  // namespace

double hyp2f1_regularized(double a, double b, double c, double z) {
  if (!std::isfinite(z) || z > 0.9) {
    throw InvalidArgument("hyp2f1_regularized supports z <= 0.9");
  }
  if (z >= -0.9) {
    return hyp2f1_series(a, b, c, z);
  }
  const double w = z / (z - 1.0);
  return std::pow(1.0 - z, -a) * hyp2f1_series(a, c - b, c, w);
}

namespace {

// 7-point Gauss / 15-point Kronrod nodes and weights (QUADPACK qk15).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double value;
  double error;

  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gk15(const Function& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::abs(resk);
  std::array<double, 7> f1{};
  std::array<double, 7> f2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = f(center - dx);
    f2[j] = f(center + dx);
    const double sum = f1[j] + f2[j];
    resk += kWgk[j] * sum;
    resabs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) {
      resg += kWg[j / 2] * sum;
    }
  }
  const double mean = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  }
  const double ah = std::abs(half);
  resabs *= ah;
  resasc *= ah;
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  constexpr double eps = std::numeric_limits<double>::epsilon();
  constexpr double tiny = std::numeric_limits<double>::min();
  if (resabs > tiny / (50.0 * eps)) {
    err = std::max(50.0 * eps * resabs, err);
  }
  return {a, b, resk * half, err};
}

}  // namespace

QuadratureResult integrate(const Function& f, double a, double b, const QuadratureSettings& settings) {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw InvalidArgument("integrate requires finite limits; use integrate_line");
  }
  if (a == b) {
    return {};
  }
  std::priority_queue<Segment> heap;
  Segment first = gk15(f, a, b);
  double total = first.value;
  double total_err = first.error;
  heap.push(first);
  const auto done = [&] {
    return total_err <= std::max(settings.abs_tol, settings.rel_tol * std::abs(total));
  };
  int splits = 0;
  while (!done()) {
    if (!std::isfinite(total)) {
      throw NumericError("integrand produced a non-finite value");
    }
    if (splits >= settings.max_subdivisions) {
      throw ToleranceNotMet("adaptive quadrature exhausted its subdivision budget", total, total_err);
    }
    const Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid == worst.a || mid == worst.b) {
      throw ToleranceNotMet("adaptive quadrature reached machine resolution", total, total_err);
    }
    const Segment left = gk15(f, worst.a, mid);
    const Segment right = gk15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++splits;
  }
  // Re-sum to shed the drift of the running updates.
  total = 0.0;
  total_err = 0.0;
  while (!heap.empty()) {
    total += heap.top().value;
    total_err += heap.top().error;
    heap.pop();
  }
  if (!std::isfinite(total)) {
    throw NumericError("integrand produced a non-finite value");
  }
  return {total, total_err};
}

namespace {

QuadratureResult tail(const Function& f, double a, const QuadratureSettings& settings) {
  boost::math::quadrature::exp_sinh<double> rule;
  double error = 0.0;
  double l1 = 0.0;
  const double tol = std::max(settings.rel_tol, 1e-14);
  const double value =
      rule.integrate([&](double x) { return f(a + x); }, 0.0, std::numeric_limits<double>::infinity(), tol,
                     &error, &l1);
  if (!std::isfinite(value)) {
    throw NumericError("integrand produced a non-finite value");
  }
  if (error > std::max(settings.abs_tol, 100.0 * settings.rel_tol * l1)) {
    throw ToleranceNotMet("tail quadrature did not reach tolerance", value, error);
  }
  return {value, error};
}

}  // namespace

QuadratureResult integrate_line(const Function& f, LineDomain domain, std::span<const double> breakpoints,
                                const QuadratureSettings& settings) {
  std::vector<double> pts;
  if (!domain.full_line) {
    pts.push_back(domain.start);
  }
  for (double p : breakpoints) {
    if (std::isfinite(p) && (domain.full_line || p > domain.start)) {
      pts.push_back(p);
    }
  }
  if (pts.empty()) {
    pts.push_back(0.0);
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  const int pieces = static_cast<int>(pts.size()) + (domain.full_line ? 1 : 0);
  QuadratureSettings piece = settings;
  piece.abs_tol = settings.abs_tol / pieces;

  QuadratureResult out;
  const auto add = [&](QuadratureResult r) {
    out.value += r.value;
    out.error += r.error;
  };
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    add(integrate(f, pts[i], pts[i + 1], piece));
  }
  add(tail(f, pts.back(), piece));
  if (domain.full_line) {
    const double left = pts.front();
    add(tail([&](double x) { return f(2.0 * left - x); }, left, piece));
  }
  return out;
}

double derivative_n(const Function& f, double x, int n) {
  if (n < 1) {
    throw InvalidArgument("derivative order must be >= 1");
  }
  if (n > 4) {
    throw OrderTooHigh("derivative_n supports orders 1 to 4");
  }
  // Ridders' scheme: central differences on a shrinking step sequence,
  // extrapolated in h^2 through a Neville tableau. The starting step grows
  // with the order since the stencils divide by h^n.
  static constexpr std::array<double, 5> kRelStep = {0.0, 2e-2, 5e-2, 1e-1, 2e-1};
  constexpr double kShrink = 1.4;
  constexpr int kRows = 16;
  double h = std::max(kRelStep[n] * std::abs(x), 1e-5);

  const auto stencil = [&](double h) {
    switch (n) {
      case 1:
        return (f(x + h) - f(x - h)) / (2.0 * h);
      case 2:
        return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
      case 3:
        return (f(x + 2 * h) - 2.0 * f(x + h) + 2.0 * f(x - h) - f(x - 2 * h)) / (2.0 * h * h * h);
      default:
        return (f(x + 2 * h) - 4.0 * f(x + h) + 6.0 * f(x) - 4.0 * f(x - h) + f(x - 2 * h)) /
               (h * h * h * h);
    }
  };

  std::array<std::array<double, kRows>, kRows> a{};
  a[0][0] = stencil(h);
  double best = a[0][0];
  double best_err = std::numeric_limits<double>::infinity();
  for (int i = 1; i < kRows; ++i) {
    h /= kShrink;
    a[i][0] = stencil(h);
    double fac = kShrink * kShrink;
    for (int j = 1; j <= i; ++j) {
      a[i][j] = (a[i][j - 1] * fac - a[i - 1][j - 1]) / (fac - 1.0);
      fac *= kShrink * kShrink;
      const double err = std::max(std::abs(a[i][j] - a[i][j - 1]), std::abs(a[i][j] - a[i - 1][j - 1]));
      if (err <= best_err) {
        best_err = err;
        best = a[i][j];
      }
    }
    // Rounding has taken over once a converged diagonal stops improving. The
    // first condition keeps going while a too-large starting step is shrunk.
    if (best_err < 1e-4 * std::abs(best) && std::abs(a[i][i] - a[i - 1][i - 1]) >= 2.0 * best_err) {
      break;
    }
  }
  return best;
}

std::vector<double> exp_chain_derivatives(double value, std::span<const double> g_derivs) {
  const int n = static_cast<int>(g_derivs.size());
  std::vector<double> out(n + 1, 0.0);
  out[0] = value;
  for (int k = 1; k <= n; ++k) {
    double s = 0.0;
    for (int m = 0; m < k; ++m) {
      s += binomial(k - 1, m) * g_derivs[m] * out[k - 1 - m];
    }
    out[k] = s;
  }
  return out;
}

}  // namespace xroads::numerics
