#include "volfit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "volfit/errors.hpp"

namespace volfit::linalg {
namespace {

inline void rotate(double& g, double& h, double s, double tau) {
  const double g0 = g;
  const double h0 = h;
  g = g0 - s * (h0 + g0 * tau);
  h = h0 + s * (g0 - h0 * tau);
}

}  // namespace

SymEig eigh(std::vector<double> a, std::size_t d) {
  if (a.size() != d * d) throw NumericError("eigh: matrix size mismatch");
  const int n = static_cast<int>(d);
  std::vector<double> v(d * d, 0.0);
  for (int i = 0; i < n; ++i) v[i * n + i] = 1.0;

  std::vector<double> w(d), b(d), z(d, 0.0);
  for (int i = 0; i < n; ++i) w[i] = b[i] = a[i * n + i];

  constexpr int kMaxSweeps = 64;
  for (int sweep = 1; sweep <= kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) off += std::fabs(a[p * n + q]);
    if (off == 0.0) {
      // Sort eigenpairs ascending; stable so ties keep rotation order.
      std::vector<int> order(d);
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(),
                       [&](int x, int y) { return w[x] < w[y]; });
      SymEig out;
      out.values.resize(d);
      out.vectors.assign(d * d, 0.0);
      for (int k = 0; k < n; ++k) {
        out.values[k] = w[order[k]];
        for (int i = 0; i < n; ++i) out.vectors[i * n + k] = v[i * n + order[k]];
      }
      return out;
    }

    const double tresh = (sweep < 4) ? 0.2 * off / (d * d) : 0.0;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double& apq = a[p * n + q];
        const double g = 100.0 * std::fabs(apq);
        if (sweep > 4 && std::fabs(w[p]) + g == std::fabs(w[p]) &&
            std::fabs(w[q]) + g == std::fabs(w[q])) {
          apq = 0.0;
        } else if (std::fabs(apq) > tresh) {
          double h = w[q] - w[p];
          double t;
          if (std::fabs(h) + g == std::fabs(h)) {
            t = apq / h;
          } else {
            const double theta = 0.5 * h / apq;
            t = 1.0 / (std::fabs(theta) + std::sqrt(1.0 + theta * theta));
            if (theta < 0.0) t = -t;
          }
          const double c = 1.0 / std::sqrt(1.0 + t * t);
          const double s = t * c;
          const double tau = s / (1.0 + c);
          h = t * apq;
          z[p] -= h;
          z[q] += h;
          w[p] -= h;
          w[q] += h;
          apq = 0.0;
          for (int j = 0; j < p; ++j) rotate(a[j * n + p], a[j * n + q], s, tau);
          for (int j = p + 1; j < q; ++j) rotate(a[p * n + j], a[j * n + q], s, tau);
          for (int j = q + 1; j < n; ++j) rotate(a[p * n + j], a[q * n + j], s, tau);
          for (int j = 0; j < n; ++j) rotate(v[j * n + p], v[j * n + q], s, tau);
        }
      }
    }
    for (int i = 0; i < n; ++i) {
      b[i] += z[i];
      w[i] = b[i];
      z[i] = 0.0;
    }
  }
  throw NumericError("eigh: Jacobi iteration did not converge");
}

std::optional<std::vector<double>> cholesky_solve(std::vector<double> a, std::size_t d,
                                                  std::vector<double> b, double pivot_tol) {
  if (a.size() != d * d || b.size() != d) throw NumericError("cholesky_solve: size mismatch");
  double max_diag = 0.0;
  for (std::size_t i = 0; i < d; ++i) max_diag = std::max(max_diag, a[i * d + i]);
  const double guard = pivot_tol * max_diag;

  // In-place lower factor.
  for (std::size_t k = 0; k < d; ++k) {
    double pivot = a[k * d + k];
    for (std::size_t j = 0; j < k; ++j) pivot -= a[k * d + j] * a[k * d + j];
    if (!(pivot > guard)) return std::nullopt;
    const double lkk = std::sqrt(pivot);
    a[k * d + k] = lkk;
    for (std::size_t i = k + 1; i < d; ++i) {
      double s = a[i * d + k];
      for (std::size_t j = 0; j < k; ++j) s -= a[i * d + j] * a[k * d + j];
      a[i * d + k] = s / lkk;
    }
  }
  // L y = b
  for (std::size_t i = 0; i < d; ++i) {
    double s = b[i];
    for (std::size_t j = 0; j < i; ++j) s -= a[i * d + j] * b[j];
    b[i] = s / a[i * d + i];
  }
  // L^T x = y
  for (std::size_t ii = d; ii-- > 0;) {
    double s = b[ii];
    for (std::size_t j = ii + 1; j < d; ++j) s -= a[j * d + ii] * b[j];
    b[ii] = s / a[ii * d + ii];
  }
  return b;
}

std::vector<double> minnorm_solve(const std::vector<double>& a, std::size_t d,
                                  const std::vector<double>& b, double rank_tol,
                                  std::size_t* rank_out) {
  SymEig eig = eigh(a, d);
  const double w_max = eig.values.empty() ? 0.0 : eig.values.back();
  std::vector<double> x(d, 0.0);
  std::size_t rank = 0;
  if (w_max > 0.0) {
    const double cutoff = rank_tol * w_max;
    for (std::size_t k = 0; k < d; ++k) {
      const double wk = eig.values[k];
      if (wk <= cutoff) continue;
      double proj = 0.0;
      for (std::size_t i = 0; i < d; ++i) proj += eig.vectors[i * d + k] * b[i];
      const double coef = proj / wk;
      for (std::size_t i = 0; i < d; ++i) x[i] += coef * eig.vectors[i * d + k];
      ++rank;
    }
  }
  if (rank_out) *rank_out = rank;
  return x;
}

}  // namespace volfit::linalg
