// Copyright 2026 The lgcalab Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "lgcalab/eca.hpp"
#include "lgcalab/matrix.hpp"

namespace lgcalab::pca {

/// n x p observations: rows are observations (patterns), columns are
/// variables (rules).
struct DataMatrix {
  Matrix values;
  bool centered = false;
};

DataMatrix from_pattern_table(const eca::PatternTable& table);

/// Subtracts each column mean. Columns whose entries are all equal become
/// exact zeros.
DataMatrix center(const DataMatrix& f);

/// S_j^2 = (1/n) sum_i x_ij^2 for a centered matrix.
std::vector<double> column_variances(const DataMatrix& x);

/// Diagonal norm M = diag(1 / S_j^2). Zero-variance columns are masked:
/// they carry no weight and contribute zero rows and columns downstream.
struct NormMatrix {
  std::vector<double> weights;  // 1 / S_j^2, zero on the mask
  std::vector<bool> masked;

  static NormMatrix from_variances(const std::vector<double>& variances);
  std::size_t mask_size() const;
};

/// C_jk = (1/n) sum_i x_ij x_ik / (S_j S_k), zero on masked rows/columns.
Matrix correlation_matrix(const DataMatrix& x, const NormMatrix& norm);

/// R = (1/n) X^T X.
Matrix covariance_matrix(const Matrix& x);

struct Spectrum {
  std::vector<double> eigenvalues;  // descending
  Matrix eigenvectors;              // column k pairs with eigenvalues[k]
  int sweeps = 0;
};

struct EigOptions {
  int max_sweeps = 100;
  double tolerance = 1e-12;  // off-diagonal Frobenius norm relative to ||A||_F
};

/// Cyclic Jacobi eigensolver for a real symmetric matrix. Eigenvector signs
/// are normalized so the largest-magnitude entry of each column is
/// positive. Throws NumericalError if the sweep bound is hit.
Spectrum eig_sym(const Matrix& a, const EigOptions& options = {});

struct SpectrumResiduals {
  double orthonormality = 0.0;  // max |V^T V - I|
  double eigen = 0.0;           // max_k ||A v_k - lambda_k v_k||
};

SpectrumResiduals residuals(const Matrix& a, const Spectrum& s);

/// Maps eigenvectors of W R W^T back to the original frame: a = W a_hat,
/// with W = M^(1/2). Masked coordinates map to zero.
Matrix back_map(const Spectrum& s, const NormMatrix& norm);

/// Mean squared residual (1/n) sum_i ||x_i - P_m x_i||^2 where P_m projects
/// onto the m leading eigenvectors of (1/n) X^T X. Equals the sum of the
/// p - m trailing eigenvalues.
double kl_error(const Matrix& x, int retained);

/// Rows 3..12 of the rule-space study: pattern table for length l, centered,
/// normalized, correlation spectrum.
struct RulespaceAnalysis {
  int pattern_length = 0;
  NormMatrix norm;
  Spectrum spectrum;
};

inline constexpr int kMaxRulespaceLength = 12;

RulespaceAnalysis analyze_rulespace(int pattern_length);

}  // namespace lgcalab::pca
