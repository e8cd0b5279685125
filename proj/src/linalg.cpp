#include "tfps/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "tfps/errors.hpp"

namespace tfps {

Matrix zero_matrix(int n) { return Matrix(n, std::vector<double>(n, 0.0)); }

double max_abs(const Matrix& a) {
  double m = 0;
  for (const auto& row : a)
    for (double v : row) m = std::max(m, std::abs(v));
  return m;
}

std::vector<double> solve_linear(Matrix a, std::vector<double> b) {
  const int n = static_cast<int>(a.size());
  double scale = std::max(max_abs(a), 1e-300);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (std::abs(a[piv][col]) < 1e-14 * scale)
      throw ConvergenceError("solve_linear: singular matrix");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (int r = col + 1; r < n; ++r) {
      double m = a[r][col] / a[col][col];
      for (int c = col; c < n; ++c) a[r][c] -= m * a[col][c];
      b[r] -= m * b[col];
    }
  }
  std::vector<double> x(n, 0.0);
  for (int r = n - 1; r >= 0; --r) {
    double s = b[r];
    for (int c = r + 1; c < n; ++c) s -= a[r][c] * x[c];
    x[r] = s / a[r][r];
  }
  return x;
}

bool ldlt_positive_definite(Matrix h, double pivot_tol_factor) {
  const int n = static_cast<int>(h.size());
  if (n == 0) return true;
  const double tol = pivot_tol_factor * std::max(max_abs(h), 1.0e-300);
  for (int k = 0; k < n; ++k) {
    double pivot = h[k][k];
    if (!(pivot > tol)) return false;
    for (int i = k + 1; i < n; ++i) {
      double m = h[i][k] / pivot;
      for (int j = k + 1; j <= i; ++j) {
        h[i][j] -= m * h[k][j];
        h[j][i] = h[i][j];
      }
    }
  }
  return true;
}

std::vector<double> symmetric_eigenvalues(Matrix a, int max_sweeps) {
  const int n = static_cast<int>(a.size());
  if (n == 0) return {};
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
    if (off < 1e-30 * std::max(1.0, max_abs(a))) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (int i = 0; i < n; ++i) ev[i] = a[i][i];
  std::sort(ev.begin(), ev.end());
  return ev;
}

}  // namespace tfps
