#pragma once

#include <vector>

namespace tfps {

// Dense matrices here are tiny (n = number of domain walls), so plain
// row-major vectors of vectors are fine.
using Matrix = std::vector<std::vector<double>>;

Matrix zero_matrix(int n);
double max_abs(const Matrix& a);

// Gaussian elimination with partial pivoting. Throws on (near-)singular.
std::vector<double> solve_linear(Matrix a, std::vector<double> b);

// Symmetric positive-definiteness via an LDL^T sweep: every pivot must exceed
// pivot_tol_factor * max|H|.
bool ldlt_positive_definite(Matrix h, double pivot_tol_factor = 1e-12);

// All eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
std::vector<double> symmetric_eigenvalues(Matrix a, int max_sweeps = 64);

}  // namespace tfps
