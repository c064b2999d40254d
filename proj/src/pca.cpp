// Copyright 2026 The lgcalab Authors
// SPDX-License-Identifier: Apache-2.0

#include "lgcalab/pca.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "lgcalab/errors.hpp"

namespace lgcalab::pca {

DataMatrix from_pattern_table(const eca::PatternTable& table) {
  DataMatrix f{Matrix(table.patterns(), eca::PatternTable::kRules), false};
  for (std::size_t i = 0; i < table.patterns(); ++i)
    for (int j = 0; j < eca::PatternTable::kRules; ++j)
      f.values(i, static_cast<std::size_t>(j)) = table.at(i, j);
  return f;
}

DataMatrix center(const DataMatrix& f) {
  const std::size_t n = f.values.rows();
  const std::size_t p = f.values.cols();
  require(n >= 1, "center: need at least one observation");
  DataMatrix x{f.values, true};
  for (std::size_t j = 0; j < p; ++j) {
    bool constant = true;
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      sum += f.values(i, j);
      constant = constant && f.values(i, j) == f.values(0, j);
    }
    const double mean = sum / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) x.values(i, j) = constant ? 0.0 : f.values(i, j) - mean;
  }
  return x;
}

std::vector<double> column_variances(const DataMatrix& x) {
  require(x.centered, "column_variances: data matrix must be centered");
  const std::size_t n = x.values.rows();
  std::vector<double> s2(x.values.cols(), 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = x.values.row(i);
    for (std::size_t j = 0; j < s2.size(); ++j) s2[j] += r[j] * r[j];
  }
  for (auto& v : s2) v /= static_cast<double>(n);
  return s2;
}

NormMatrix NormMatrix::from_variances(const std::vector<double>& variances) {
  NormMatrix m;
  m.weights.resize(variances.size());
  m.masked.resize(variances.size());
  for (std::size_t j = 0; j < variances.size(); ++j) {
    require(variances[j] >= 0.0, "norm matrix: negative variance");
    m.masked[j] = variances[j] == 0.0;
    m.weights[j] = m.masked[j] ? 0.0 : 1.0 / variances[j];
  }
  return m;
}

std::size_t NormMatrix::mask_size() const {
  return static_cast<std::size_t>(std::count(masked.begin(), masked.end(), true));
}

Matrix correlation_matrix(const DataMatrix& x, const NormMatrix& norm) {
  require(x.centered, "correlation_matrix: data matrix must be centered");
  const std::size_t n = x.values.rows();
  const std::size_t p = x.values.cols();
  require(norm.weights.size() == p, "correlation_matrix: norm size does not match columns");
  // Z = X W with W = diag(1 / S_j); C = Z^T Z / n, summed in row order.
  Matrix z(n, p);
  for (std::size_t j = 0; j < p; ++j) {
    const double w = std::sqrt(norm.weights[j]);
    for (std::size_t i = 0; i < n; ++i) z(i, j) = x.values(i, j) * w;
  }
  Matrix c(p, p);
  for (std::size_t i = 0; i < n; ++i) {
    const auto r = z.row(i);
    for (std::size_t j = 0; j < p; ++j) {
      if (r[j] == 0.0) continue;
      auto crow = c.row(j);
      for (std::size_t k = j; k < p; ++k) crow[k] += r[j] * r[k];
    }
  }
  for (std::size_t j = 0; j < p; ++j) {
    for (std::size_t k = j; k < p; ++k) {
      c(j, k) /= static_cast<double>(n);
      c(k, j) = c(j, k);
    }
  }
  return c;
}

Matrix covariance_matrix(const Matrix& x) {
  require(x.rows() >= 1, "covariance_matrix: need at least one observation");
  Matrix r = x.transpose() * x;
  const double inv_n = 1.0 / static_cast<double>(x.rows());
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t j = 0; j < r.cols(); ++j) r(i, j) *= inv_n;
  return r;
}

Spectrum eig_sym(const Matrix& input, const EigOptions& options) {
  require(input.square(), "eig_sym: matrix must be square");
  const std::size_t n = input.rows();
  const double norm = input.frobenius_norm();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      require(std::abs(input(i, j) - input(j, i)) <= 1e-10 * std::max(1.0, norm),
              "eig_sym: matrix is not symmetric within 1e-10");

  Matrix a = input;
  Matrix v = Matrix::identity(n);
  auto off_diagonal = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };

  Spectrum result;
  const double threshold = options.tolerance * norm;
  bool converged = off_diagonal() <= threshold;
  while (!converged) {
    if (result.sweeps >= options.max_sweeps) {
      throw NumericalError("eig_sym: no convergence after " +
                           std::to_string(options.max_sweeps) + " sweeps");
    }
    ++result.sweeps;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          if (k != p && k != q) {
            const double akp = a(k, p);
            const double akq = a(k, q);
            a(k, p) = a(p, k) = c * akp - s * akq;
            a(k, q) = a(q, k) = s * akp + c * akq;
          }
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
    converged = off_diagonal() <= threshold;
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });
  result.eigenvalues.resize(n);
  result.eigenvectors = Matrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t src = order[k];
    result.eigenvalues[k] = a(src, src);
    std::size_t pivot = 0;
    for (std::size_t i = 1; i < n; ++i)
      if (std::abs(v(i, src)) > std::abs(v(pivot, src))) pivot = i;
    const double sign = v(pivot, src) < 0.0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) result.eigenvectors(i, k) = sign * v(i, src);
  }
  return result;
}

SpectrumResiduals residuals(const Matrix& a, const Spectrum& s) {
  const std::size_t n = a.rows();
  SpectrumResiduals r;
  const Matrix gram = s.eigenvectors.transpose() * s.eigenvectors;
  r.orthonormality = max_abs_diff(gram, Matrix::identity(n));
  const Matrix av = a * s.eigenvectors;
  for (std::size_t k = 0; k < n; ++k) {
    double norm2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = av(i, k) - s.eigenvalues[k] * s.eigenvectors(i, k);
      norm2 += d * d;
    }
    r.eigen = std::max(r.eigen, std::sqrt(norm2));
  }
  return r;
}

Matrix back_map(const Spectrum& s, const NormMatrix& norm) {
  const std::size_t p = s.eigenvectors.rows();
  require(norm.weights.size() == p, "back_map: norm size does not match spectrum");
  Matrix out(p, s.eigenvectors.cols());
  for (std::size_t i = 0; i < p; ++i) {
    const double w = std::sqrt(norm.weights[i]);
    for (std::size_t k = 0; k < out.cols(); ++k) out(i, k) = w * s.eigenvectors(i, k);
  }
  return out;
}

double kl_error(const Matrix& x, int retained) {
  const std::size_t p = x.cols();
  require(retained >= 0 && static_cast<std::size_t>(retained) <= p,
          "kl_error: retained component count must lie in [0, p]");
  const Spectrum s = eig_sym(covariance_matrix(x));
  const auto m = static_cast<std::size_t>(retained);
  double total = 0.0;
  std::vector<double> coeff(m);
  for (std::size_t i = 0; i < x.rows(); ++i) {
    const auto xi = x.row(i);
    for (std::size_t k = 0; k < m; ++k) {
      coeff[k] = 0.0;
      for (std::size_t j = 0; j < p; ++j) coeff[k] += s.eigenvectors(j, k) * xi[j];
    }
    for (std::size_t j = 0; j < p; ++j) {
      double z = 0.0;
      for (std::size_t k = 0; k < m; ++k) z += s.eigenvectors(j, k) * coeff[k];
      total += (xi[j] - z) * (xi[j] - z);
    }
  }
  return total / static_cast<double>(x.rows());
}

RulespaceAnalysis analyze_rulespace(int pattern_length) {
  require(pattern_length >= 3 && pattern_length <= kMaxRulespaceLength,
          "analyze_rulespace: pattern length l must lie in [3, 12] (got " +
              std::to_string(pattern_length) + ")");
  const DataMatrix x = center(from_pattern_table(eca::build_pattern_table(pattern_length)));
  RulespaceAnalysis r;
  r.pattern_length = pattern_length;
  r.norm = NormMatrix::from_variances(column_variances(x));
  r.spectrum = eig_sym(correlation_matrix(x, r.norm));
  return r;
}

}  // namespace lgcalab::pca
