#pragma once

#include <cstddef>
#include <vector>

namespace swirlbound {

struct TridiagWorkspace {
  std::vector<double> cp, dp, z;
  void resize(std::size_t n) {
    cp.resize(n);
    dp.resize(n);
    z.resize(n);
  }
};

// Thomas elimination. lower[i] couples row i to i-1 (lower[0] unused),
// upper[i] couples row i to i+1 (upper[n-1] unused). x may alias b.
void tridiag_solve(const double* lower, const double* diag, const double* upper,
                   const double* b, double* x, std::size_t n,
                   TridiagWorkspace& ws);

// Periodic variant via Sherman-Morrison. The wrap entries ride in
// lower[0] = A[0][n-1] and upper[n-1] = A[n-1][0].
void tridiag_solve_cyclic(const double* lower, const double* diag,
                          const double* upper, const double* b, double* x,
                          std::size_t n, TridiagWorkspace& ws);

}  // namespace swirlbound
