#include "oracle.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

namespace oracle {

std::vector<double> feature_row(const std::vector<double>& y) {
  const std::size_t m = y.size();
  std::vector<double> phi;
  phi.reserve(m + m * (m + 1) / 2);
  for (std::size_t i = 0; i < m; ++i) phi.push_back(y[i]);
  double ss = 0.0;
  for (std::size_t i = 0; i < m; ++i) ss += y[i] * y[i];
  const double rho = std::sqrt(ss);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i; j < m; ++j)
      phi.push_back(rho == 0.0 ? 0.0 : y[i] * y[j] / rho);
  return phi;
}

std::vector<double> design_matrix(const volfit::Cohort& cohort, std::size_t* d_out) {
  const std::size_t m = cohort.panel().size();
  const std::size_t d = m + m * (m + 1) / 2;
  if (d_out) *d_out = d;
  std::vector<double> out;
  out.reserve(cohort.n() * d);
  for (std::size_t s = 0; s < cohort.n(); ++s) {
    std::vector<double> row = feature_row(cohort.sample(s).values());
    out.insert(out.end(), row.begin(), row.end());
  }
  return out;
}

namespace {

Eigen::VectorXd pinv_solve(const volfit::Cohort& cohort) {
  std::size_t d = 0;
  const std::vector<double> flat = design_matrix(cohort, &d);
  const std::size_t n = cohort.n();
  Eigen::MatrixXd phi(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t k = 0; k < d; ++k)
      phi(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(k)) = flat[s * d + k];
  Eigen::VectorXd lambda(static_cast<Eigen::Index>(n));
  const std::vector<double>& vols = cohort.volumes();
  for (std::size_t s = 0; s < n; ++s) lambda(static_cast<Eigen::Index>(s)) = vols[s];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(phi, Eigen::ComputeThinU | Eigen::ComputeThinV);
  svd.setThreshold(1e-10);
  return svd.solve(lambda);
}

}  // namespace

std::vector<double> pinv_coefficients(const volfit::Cohort& cohort) {
  Eigen::VectorXd alpha = pinv_solve(cohort);
  return std::vector<double>(alpha.data(), alpha.data() + alpha.size());
}

std::vector<double> pinv_predictions(const volfit::Cohort& cohort) {
  Eigen::VectorXd alpha = pinv_solve(cohort);
  std::vector<double> preds(cohort.n());
  for (std::size_t s = 0; s < cohort.n(); ++s) {
    const std::vector<double> row = feature_row(cohort.sample(s).values());
    double acc = 0.0;
    for (std::size_t k = 0; k < row.size(); ++k)
      acc += row[k] * alpha(static_cast<Eigen::Index>(k));
    preds[s] = acc;
  }
  return preds;
}

void naive_normal_equations(const volfit::Cohort& cohort, std::vector<double>& gram,
                            std::vector<double>& rhs, std::size_t* d_out) {
  std::size_t d = 0;
  const std::vector<double> flat = design_matrix(cohort, &d);
  if (d_out) *d_out = d;
  gram.assign(d * d, 0.0);
  rhs.assign(d, 0.0);
  const std::vector<double>& vols = cohort.volumes();
  for (std::size_t s = 0; s < cohort.n(); ++s) {
    const double* row = flat.data() + s * d;
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) gram[i * d + j] += row[i] * row[j];
      rhs[i] += row[i] * vols[s];
    }
  }
}

double naive_pearson(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.size() < 2)
    throw std::invalid_argument("naive_pearson: bad input");
  const double n = static_cast<double>(a.size());
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= n;
  mb /= n;
  double saa = 0.0, sbb = 0.0, sab = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
    sab += (a[i] - ma) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

}  // namespace oracle
