#include "tfps/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tfps/errors.hpp"

namespace tfps {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double poly_eval(const std::vector<double>& c, double x) {
  double r = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
  return r;
}

double poly_deriv(const std::vector<double>& c, double x) {
  double r = 0;
  for (std::size_t i = c.size(); i-- > 1;) r = r * x + c[i] * static_cast<double>(i);
  return r;
}

// Fritsch-Carlson monotone C1 cubic slopes
std::vector<double> monotone_slopes(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  std::vector<double> h(n - 1), d(n - 1), m(n);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x[i + 1] - x[i];
    d[i] = (y[i + 1] - y[i]) / h[i];
  }
  m[0] = d[0];
  m[n - 1] = d[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i)
    m[i] = (d[i - 1] * h[i] + d[i] * h[i - 1]) / (h[i - 1] + h[i]);
  for (std::size_t i = 1; i + 1 < n; ++i)
    if (d[i - 1] * d[i] <= 0) m[i] = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (d[i] == 0) {
      m[i] = 0;
      m[i + 1] = 0;
      continue;
    }
    double a = m[i] / d[i];
    double b = m[i + 1] / d[i];
    double s = a * a + b * b;
    if (s > 9.0) {
      double tau = 3.0 / std::sqrt(s);
      m[i] = tau * a * d[i];
      m[i + 1] = tau * b * d[i];
    }
  }
  return m;
}

std::size_t locate_segment(const std::vector<double>& knots, double x) {
  // index i with knots[i] <= x < knots[i+1], clamped to the end segments
  if (x <= knots.front()) return 0;
  if (x >= knots.back()) return knots.size() - 2;
  auto it = std::upper_bound(knots.begin(), knots.end(), x);
  return static_cast<std::size_t>(it - knots.begin()) - 1;
}

double hermite_eval(double x0, double x1, double y0, double y1, double m0, double m1, double x) {
  double h = x1 - x0;
  double t = (x - x0) / h;
  double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * h * m0 + (-2 * t3 + 3 * t2) * y1 +
         (t3 - t2) * h * m1;
}

double hermite_deriv(double x0, double x1, double y0, double y1, double m0, double m1, double x) {
  double h = x1 - x0;
  double t = (x - x0) / h;
  double t2 = t * t;
  return ((6 * t2 - 6 * t) * y0 + (3 * t2 - 4 * t + 1) * h * m0 + (-6 * t2 + 6 * t) * y1 +
          (3 * t2 - 2 * t) * h * m1) /
         h;
}

}  // namespace

Potential Potential::square_well(double a, double b) {
  if (!(b > a)) throw ValidationError("square_well: need b > a");
  return Potential(Family{SquareWell{a, b}});
}

Potential Potential::harmonic(double k, double x0) {
  if (!(k > 0)) throw ValidationError("harmonic: curvature must be positive (confining)");
  return Potential(Family{Harmonic{k, x0}});
}

Potential Potential::polynomial(std::vector<double> coeffs) {
  while (coeffs.size() > 1 && coeffs.back() == 0.0) coeffs.pop_back();
  if (coeffs.size() < 3) throw ValidationError("polynomial: degree must be >= 2 to confine");
  if (coeffs.size() % 2 == 0 || coeffs.back() <= 0)
    throw ValidationError("polynomial: leading term must be even degree with positive coefficient");
  return Potential(Family{Polynomial{std::move(coeffs)}});
}

Potential Potential::double_well(double h, double w) {
  if (!(h > 0) || !(w > 0)) throw ValidationError("double_well: h and w must be positive");
  return Potential(Family{DoubleWell{h, w}});
}

Potential Potential::piecewise_polynomial(std::vector<double> breakpoints,
                                          std::vector<std::vector<double>> segments) {
  if (breakpoints.size() < 2 || segments.size() + 1 != breakpoints.size())
    throw ValidationError("piecewise_polynomial: need m+1 breakpoints for m segments");
  if (!std::is_sorted(breakpoints.begin(), breakpoints.end()))
    throw ValidationError("piecewise_polynomial: breakpoints must be sorted");
  PiecewisePolynomial pp{std::move(breakpoints), std::move(segments)};
  // continuity at interior breakpoints
  double scale = 1.0;
  for (const auto& seg : pp.segments)
    for (double c : seg) scale = std::max(scale, std::abs(c));
  for (std::size_t i = 0; i + 1 < pp.segments.size(); ++i) {
    double left_end = poly_eval(pp.segments[i], pp.breakpoints[i + 1] - pp.breakpoints[i]);
    double right_start = poly_eval(pp.segments[i + 1], 0.0);
    if (std::abs(left_end - right_start) > 1e-9 * scale)
      throw ValidationError("piecewise_polynomial: discontinuous at breakpoint " +
                            std::to_string(pp.breakpoints[i + 1]));
  }
  return Potential(Family{std::move(pp)});
}

Potential Potential::tabulated(std::vector<double> x, std::vector<double> v) {
  if (x.size() < 4 || x.size() != v.size())
    throw ValidationError("tabulated: need at least 4 samples and matching lengths");
  for (std::size_t i = 0; i + 1 < x.size(); ++i)
    if (!(x[i] < x[i + 1])) throw ValidationError("tabulated: grid must be strictly increasing");
  Tabulated t{std::move(x), std::move(v), {}};
  t.slope = monotone_slopes(t.x, t.v);
  return Potential(Family{std::move(t)});
}

double Potential::evaluate(double x) const {
  return std::visit(
      [&](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, SquareWell>) {
          return (x < f.a || x > f.b) ? kInf : 0.0;
        } else if constexpr (std::is_same_v<T, Harmonic>) {
          double d = x - f.x0;
          return f.k * d * d;
        } else if constexpr (std::is_same_v<T, Polynomial>) {
          return poly_eval(f.coeffs, x);
        } else if constexpr (std::is_same_v<T, DoubleWell>) {
          double u = (x / f.w) * (x / f.w) - 1.0;
          return f.h * u * u;
        } else if constexpr (std::is_same_v<T, PiecewisePolynomial>) {
          std::size_t i = locate_segment(f.breakpoints, x);
          return poly_eval(f.segments[i], x - f.breakpoints[i]);
        } else {  // Tabulated
          if (x <= f.x.front())
            return f.v.front() + f.slope.front() * (x - f.x.front());
          if (x >= f.x.back())
            return f.v.back() + f.slope.back() * (x - f.x.back());
          std::size_t i = locate_segment(f.x, x);
          return hermite_eval(f.x[i], f.x[i + 1], f.v[i], f.v[i + 1], f.slope[i], f.slope[i + 1], x);
        }
      },
      family_);
}

double Potential::derivative(double x, Side side) const {
  return std::visit(
      [&](const auto& f) -> double {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, SquareWell>) {
          return 0.0;  // flat interior; walls carry the confinement
        } else if constexpr (std::is_same_v<T, Harmonic>) {
          return 2.0 * f.k * (x - f.x0);
        } else if constexpr (std::is_same_v<T, Polynomial>) {
          return poly_deriv(f.coeffs, x);
        } else if constexpr (std::is_same_v<T, DoubleWell>) {
          double u = (x / f.w) * (x / f.w) - 1.0;
          return 4.0 * f.h * x * u / (f.w * f.w);
        } else if constexpr (std::is_same_v<T, PiecewisePolynomial>) {
          std::size_t i = locate_segment(f.breakpoints, x);
          // at an interior breakpoint, honor the requested side
          if (side == Side::Left && i > 0 && x == f.breakpoints[i]) --i;
          if (side == Side::Right && i + 1 < f.segments.size() && x == f.breakpoints[i + 1]) ++i;
          return poly_deriv(f.segments[i], x - f.breakpoints[i]);
        } else {  // Tabulated
          if (x <= f.x.front()) return f.slope.front();
          if (x >= f.x.back()) return f.slope.back();
          std::size_t i = locate_segment(f.x, x);
          return hermite_deriv(f.x[i], f.x[i + 1], f.v[i], f.v[i + 1], f.slope[i], f.slope[i + 1],
                               x);
        }
      },
      family_);
}

double Potential::derivative(double x) const {
  if (const auto* pp = std::get_if<PiecewisePolynomial>(&family_)) {
    for (std::size_t i = 1; i + 1 < pp->breakpoints.size(); ++i) {
      if (x == pp->breakpoints[i]) {
        double dl = derivative(x, Side::Left);
        double dr = derivative(x, Side::Right);
        double scale = std::max({1.0, std::abs(dl), std::abs(dr)});
        if (std::abs(dl - dr) > 1e-9 * scale)
          throw PreconditionError("derivative: ambiguous at breakpoint, pass an explicit side");
        return dl;
      }
    }
  }
  return derivative(x, Side::Right);
}

std::vector<double> Potential::smoothness_breaks(Interval window) const {
  std::vector<double> pts;
  std::visit(
      [&](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, SquareWell>) {
          pts = {f.a, f.b};
        } else if constexpr (std::is_same_v<T, PiecewisePolynomial>) {
          pts.assign(f.breakpoints.begin() + 1, f.breakpoints.end() - 1);
        } else if constexpr (std::is_same_v<T, Tabulated>) {
          pts = f.x;
        }
      },
      family_);
  std::erase_if(pts, [&](double p) { return p <= window.lo || p >= window.hi; });
  return pts;
}

std::vector<LevelRoot> Potential::level_set(double v, Interval window, const ScanOptions& opt) const {
  if (!std::isfinite(v)) throw ValidationError("level_set: level must be finite");
  if (const auto* sw = as_square_well()) {
    double tol = opt.f_tol * std::max(1.0, std::abs(v));
    if (std::abs(v) <= tol)
      throw DegenerateError("level_set: square-well level set at v=0 is the whole well");
    (void)sw;
    return {};
  }
  ScanOptions o = opt;
  o.f_tol = opt.tol_root * std::max(1.0, std::abs(v));
  auto f = [&](double x) { return evaluate(x) - v; };
  auto df = [&](double x) { return derivative(x, Side::Right); };
  return scan_roots(f, df, window, o, smoothness_breaks(window));
}

IntervalSet Potential::sublevel_set(double mu, Interval window, const ScanOptions& opt) const {
  IntervalSet out;
  if (const auto* sw = as_square_well()) {
    if (mu >= 0) {
      double lo = std::max(sw->a, window.lo);
      double hi = std::min(sw->b, window.hi);
      if (lo <= hi) out.add({lo, hi});
    }
    return out;
  }
  auto roots = level_set(mu, window, opt);
  std::vector<double> bounds;
  bounds.push_back(window.lo);
  for (const auto& r : roots) bounds.push_back(r.x);
  bounds.push_back(window.hi);
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
    if (evaluate(0.5 * (bounds[i] + bounds[i + 1])) <= mu) out.add({bounds[i], bounds[i + 1]});
  }
  // tangential touches from above are isolated points of the sublevel set
  for (const auto& r : roots)
    if (r.tangential && !out.contains(r.x)) out.add({r.x, r.x});
  return out;
}

Potential Potential::scaled(double c) const {
  if (!(c > 0)) throw ValidationError("scaled: factor must be positive");
  Potential out = *this;
  std::visit(
      [&](auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, SquareWell>) {
          // 0 and +inf are fixed points of the scaling
        } else if constexpr (std::is_same_v<T, Harmonic>) {
          f.k *= c;
        } else if constexpr (std::is_same_v<T, Polynomial>) {
          for (double& ci : f.coeffs) ci *= c;
        } else if constexpr (std::is_same_v<T, DoubleWell>) {
          f.h *= c;
        } else if constexpr (std::is_same_v<T, PiecewisePolynomial>) {
          for (auto& seg : f.segments)
            for (double& ci : seg) ci *= c;
        } else {  // Tabulated
          for (double& vi : f.v) vi *= c;
          for (double& mi : f.slope) mi *= c;
        }
      },
      out.family_);
  return out;
}

bool Potential::is_square_well() const { return std::holds_alternative<SquareWell>(family_); }

const Potential::SquareWell* Potential::as_square_well() const {
  return std::get_if<SquareWell>(&family_);
}

bool Potential::is_tabulated() const { return std::holds_alternative<Tabulated>(family_); }

Interval Potential::domain_hint() const {
  if (hint_) return *hint_;
  return std::visit(
      [&](const auto& f) -> Interval {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, SquareWell>) {
          return {f.a, f.b};
        } else if constexpr (std::is_same_v<T, Harmonic>) {
          return {f.x0 - 2.0, f.x0 + 2.0};
        } else if constexpr (std::is_same_v<T, Polynomial>) {
          // radius beyond which the leading term dominates the others
          double lead = std::abs(f.coeffs.back());
          double rest = 0;
          for (std::size_t i = 0; i + 1 < f.coeffs.size(); ++i) rest += std::abs(f.coeffs[i]);
          double r = std::max(1.0, rest / lead);
          return {-2.0 * r, 2.0 * r};
        } else if constexpr (std::is_same_v<T, DoubleWell>) {
          return {-2.5 * f.w, 2.5 * f.w};
        } else if constexpr (std::is_same_v<T, PiecewisePolynomial>) {
          return {f.breakpoints.front(), f.breakpoints.back()};
        } else {  // Tabulated
          return {f.x.front(), f.x.back()};
        }
      },
      family_);
}

std::optional<Interval> Potential::hard_window() const {
  if (const auto* sw = as_square_well()) return Interval{sw->a, sw->b};
  if (const auto* t = std::get_if<Tabulated>(&family_)) return Interval{t->x.front(), t->x.back()};
  return std::nullopt;
}

std::string Potential::family_name() const {
  return std::visit(
      [](const auto& f) -> std::string {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, SquareWell>) return "square_well";
        else if constexpr (std::is_same_v<T, Harmonic>) return "harmonic";
        else if constexpr (std::is_same_v<T, Polynomial>) return "polynomial";
        else if constexpr (std::is_same_v<T, DoubleWell>) return "double_well";
        else if constexpr (std::is_same_v<T, PiecewisePolynomial>) return "piecewise_polynomial";
        else return "tabulated";
      },
      family_);
}

bool Potential::operator==(const Potential& other) const {
  if (family_.index() != other.family_.index()) return false;
  return std::visit(
      [&](const auto& f) -> bool {
        using T = std::decay_t<decltype(f)>;
        const auto& g = std::get<T>(other.family_);
        if constexpr (std::is_same_v<T, SquareWell>) {
          return f.a == g.a && f.b == g.b;
        } else if constexpr (std::is_same_v<T, Harmonic>) {
          return f.k == g.k && f.x0 == g.x0;
        } else if constexpr (std::is_same_v<T, Polynomial>) {
          return f.coeffs == g.coeffs;
        } else if constexpr (std::is_same_v<T, DoubleWell>) {
          return f.h == g.h && f.w == g.w;
        } else if constexpr (std::is_same_v<T, PiecewisePolynomial>) {
          return f.breakpoints == g.breakpoints && f.segments == g.segments;
        } else {
          return f.x == g.x && f.v == g.v;
        }
      },
      family_);
}

double PhiFunction::slope(double x, Side side) const {
  return v1->derivative(x, side) - v2->derivative(x, side);
}

double PhiFunction::slope(double x) const {
  return v1->derivative(x, Side::Right) - v2->derivative(x, Side::Right);
}

std::vector<LevelRoot> PhiFunction::level_set(double f, Interval window,
                                              const ScanOptions& opt) const {
  ScanOptions o = opt;
  o.f_tol = opt.tol_root * std::max(1.0, std::abs(f));
  auto fn = [&](double x) { return (*this)(x)-f; };
  auto dfn = [&](double x) { return slope(x, Side::Right); };
  auto breaks = v1->smoothness_breaks(window);
  auto b2 = v2->smoothness_breaks(window);
  breaks.insert(breaks.end(), b2.begin(), b2.end());
  std::sort(breaks.begin(), breaks.end());
  return scan_roots(fn, dfn, window, o, breaks);
}

bool PhiFunction::is_flat(Interval window, double* value) const {
  const int n = 64;
  double lo = kInf, hi = -kInf;
  for (int i = 0; i <= n; ++i) {
    double x = window.lo + window.length() * i / n;
    double p = (*this)(x);
    if (!std::isfinite(p)) continue;
    lo = std::min(lo, p);
    hi = std::max(hi, p);
  }
  if (!(lo <= hi)) return false;
  double scale = std::max({1.0, std::abs(lo), std::abs(hi)});
  if (hi - lo <= 1e-12 * scale) {
    if (value) *value = 0.5 * (lo + hi);
    return true;
  }
  return false;
}

int PhiFunction::monotone_piece_bound(Interval window, const ScanOptions& opt) const {
  int pieces = 1;
  int cells = opt.cells;
  double h = window.length() / cells;
  double prev = 0;
  bool have_prev = false;
  for (int i = 0; i <= cells; ++i) {
    double x = window.lo + i * h;
    double d = slope(x, Side::Right);
    if (!std::isfinite(d)) continue;
    if (std::abs(d) < 1e-13) continue;  // skip exact stationary samples
    if (have_prev && d * prev < 0) ++pieces;
    prev = d;
    have_prev = true;
  }
  return pieces;
}

}  // namespace tfps
