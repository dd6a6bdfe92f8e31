#include "swirlbound/tridiag.hpp"

#include <cmath>

#include "swirlbound/errors.hpp"

namespace swirlbound {

void tridiag_solve(const double* lower, const double* diag, const double* upper,
                   const double* b, double* x, std::size_t n,
                   TridiagWorkspace& ws) {
  ws.resize(n);
  double* cp = ws.cp.data();
  double* dp = ws.dp.data();
  cp[0] = upper[0] / diag[0];
  dp[0] = b[0] / diag[0];
  for (std::size_t i = 1; i < n; ++i) {
    const double m = diag[i] - lower[i] * cp[i - 1];
    cp[i] = (i + 1 < n) ? upper[i] / m : 0.0;
    dp[i] = (b[i] - lower[i] * dp[i - 1]) / m;
  }
  x[n - 1] = dp[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = dp[i] - cp[i] * x[i + 1];
}

void tridiag_solve_cyclic(const double* lower, const double* diag,
                          const double* upper, const double* b, double* x,
                          std::size_t n, TridiagWorkspace& ws) {
  const double alpha = lower[0];      // A[0][n-1]
  const double beta = upper[n - 1];   // A[n-1][0]
  if (alpha == 0.0 && beta == 0.0) {
    tridiag_solve(lower, diag, upper, b, x, n, ws);
    return;
  }
  ws.resize(n);
  std::vector<double>& z = ws.z;
  std::vector<double> d2(diag, diag + n);
  const double gamma = -diag[0];
  d2[0] = diag[0] - gamma;
  d2[n - 1] = diag[n - 1] - alpha * beta / gamma;
  std::vector<double> u(n, 0.0);
  u[0] = gamma;
  u[n - 1] = beta;
  tridiag_solve(lower, d2.data(), upper, b, x, n, ws);
  tridiag_solve(lower, d2.data(), upper, u.data(), z.data(), n, ws);
  const double vy = x[0] + (alpha / gamma) * x[n - 1];
  const double vz = z[0] + (alpha / gamma) * z[n - 1];
  const double factor = vy / (1.0 + vz);
  if (!std::isfinite(factor))
    throw NonFiniteValue("cyclic tridiagonal solve degenerated");
  for (std::size_t i = 0; i < n; ++i) x[i] -= factor * z[i];
}

}  // namespace swirlbound
