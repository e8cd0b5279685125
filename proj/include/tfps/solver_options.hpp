#pragma once

#include <cstdint>

#include "tfps/rootscan.hpp"

namespace tfps {

struct Tolerances {
  double root = 1e-12;    // absolute on positions
  double stat = 1e-10;    // wall stationarity residual
  double norm = 1e-10;    // relative normalization accuracy
  double energy = 1e-9;   // relative degeneracy grouping
  double oracle = 1e-4;   // solver-vs-oracle agreement
};

struct SolverOptions {
  Tolerances tol;
  int scan_cells = 4096;
  int quad_nodes = 32;
  int max_walls = -1;  // < 0: use the level-set bound of phi
  int max_realizations = 256;
  int workers = 1;
  int oracle_m = 4001;
  int descent_max_iter = 20000;
  int descent_restarts = 8;
  bool oracle_check = true;  // cross-check the winner inside solve_ground_state
  std::uint64_t seed = 42;

  ScanOptions scan() const {
    ScanOptions s;
    s.cells = scan_cells;
    s.tol_root = tol.root;
    s.f_tol = tol.root;
    return s;
  }
};

}  // namespace tfps
