// Copyright 2026 The lgcalab Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <random>

#include "lgcalab/eca.hpp"
#include "lgcalab/errors.hpp"
#include "lgcalab/pca.hpp"

#ifdef LGCALAB_HAVE_EIGEN
#include <Eigen/Dense>
#endif

using namespace lgcalab;

namespace {

Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m(rows.size(), rows.begin()->size());
  std::size_t i = 0;
  for (const auto& r : rows) {
    std::size_t j = 0;
    for (double v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

Matrix random_symmetric(std::size_t n, std::mt19937_64& gen) {
  std::normal_distribution<double> d;
  Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i; ++j) a(i, j) = a(j, i) = d(gen);
  return a;
}

Matrix random_matrix(std::size_t n, std::size_t p, std::mt19937_64& gen) {
  std::normal_distribution<double> d;
  Matrix a(n, p);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j) a(i, j) = d(gen);
  return a;
}

}  // namespace

TEST_CASE("centering and variances") {
  pca::DataMatrix f{from_rows({{5, 0, 1}, {5, 2, 3}}), false};
  const pca::DataMatrix x = pca::center(f);
  CHECK(x.centered);
  CHECK(x.values == from_rows({{0, -1, -1}, {0, 1, 1}}));
  CHECK(pca::center(x).values == x.values);
  const auto s2 = pca::column_variances(x);
  CHECK(s2 == std::vector<double>{0.0, 1.0, 1.0});
  const pca::NormMatrix norm = pca::NormMatrix::from_variances(s2);
  CHECK(norm.mask_size() == 1);
  CHECK(norm.masked[0]);
  CHECK(norm.weights[0] == 0.0);

  pca::DataMatrix scaled = x;
  for (std::size_t i = 0; i < 2; ++i) scaled.values(i, 1) *= 3.0;
  CHECK(pca::column_variances(scaled)[1] == doctest::Approx(9.0));
}

TEST_CASE("correlation matrix") {
  std::mt19937_64 gen(3);
  Matrix raw = random_matrix(40, 5, gen);
  for (std::size_t i = 0; i < 40; ++i) {
    raw(i, 3) = -2.5 * raw(i, 1);
    raw(i, 4) = 7.0;
  }
  const pca::DataMatrix x = pca::center({raw, false});
  const pca::NormMatrix norm = pca::NormMatrix::from_variances(pca::column_variances(x));
  const Matrix c = pca::correlation_matrix(x, norm);
  CHECK(norm.mask_size() == 1);
  for (std::size_t j = 0; j < 4; ++j) CHECK(c(j, j) == doctest::Approx(1.0));
  CHECK(c(1, 3) == doctest::Approx(-1.0));
  for (std::size_t j = 0; j < 5; ++j) {
    CHECK(c(4, j) == 0.0);
    CHECK(c(j, 4) == 0.0);
  }
  CHECK(c.trace() == doctest::Approx(4.0));
}

TEST_CASE("eigensolver on small matrices") {
  const pca::Spectrum id = pca::eig_sym(Matrix::identity(3));
  CHECK(id.eigenvalues == std::vector<double>{1.0, 1.0, 1.0});
  const pca::Spectrum d = pca::eig_sym(from_rows({{3, 0, 0}, {0, 1, 0}, {0, 0, 2}}));
  CHECK(d.eigenvalues == std::vector<double>{3.0, 2.0, 1.0});
  const pca::Spectrum two = pca::eig_sym(from_rows({{2, 1}, {1, 2}}));
  CHECK(two.eigenvalues[0] == doctest::Approx(3.0));
  CHECK(two.eigenvalues[1] == doctest::Approx(1.0));
  CHECK(two.eigenvectors(0, 0) == doctest::Approx(std::sqrt(0.5)));

  CHECK_THROWS_AS(pca::eig_sym(from_rows({{1, 2}, {0, 1}})), std::invalid_argument);
  CHECK_THROWS_AS(pca::eig_sym(Matrix(2, 3)), std::invalid_argument);
  std::mt19937_64 gen(1);
  CHECK_THROWS_AS(pca::eig_sym(random_symmetric(12, gen), {1, 1e-12}), NumericalError);
}

TEST_CASE("eigensolver invariants on random symmetric matrices") {
  std::mt19937_64 gen(99);
  for (std::size_t n = 2; n <= 32; ++n) {
    const Matrix a = random_symmetric(n, gen);
    const pca::Spectrum s = pca::eig_sym(a);
    const auto r = pca::residuals(a, s);
    CHECK(r.orthonormality < 1e-10);
    CHECK(r.eigen < 1e-8 * a.frobenius_norm());
    CHECK(std::is_sorted(s.eigenvalues.rbegin(), s.eigenvalues.rend()));

    Matrix lambda(n, n);
    for (std::size_t k = 0; k < n; ++k) lambda(k, k) = s.eigenvalues[k];
    const Matrix back = s.eigenvectors * lambda * s.eigenvectors.transpose();
    CHECK(max_abs_diff(back, a) < 1e-8);

#ifdef LGCALAB_HAVE_EIGEN
    Eigen::MatrixXd e(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) e(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = a(i, j);
    const Eigen::VectorXd ref = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(e).eigenvalues();
    for (std::size_t k = 0; k < n; ++k)
      CHECK(std::abs(s.eigenvalues[k] - ref(static_cast<Eigen::Index>(n - 1 - k))) < 1e-9);
#endif
  }
}

TEST_CASE("reconstruction error equals the discarded eigenvalue mass") {
  std::mt19937_64 gen(10);
  const Matrix x = random_matrix(10, 4, gen);
  const Matrix cov = pca::covariance_matrix(x);
  CHECK(pca::kl_error(x, 4) < 1e-12);
  CHECK(pca::kl_error(x, 0) == doctest::Approx(cov.trace()).epsilon(1e-12));
#ifdef LGCALAB_HAVE_EIGEN
  Eigen::MatrixXd e(10, 4);
  for (Eigen::Index i = 0; i < 10; ++i)
    for (Eigen::Index j = 0; j < 4; ++j) e(i, j) = x(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  // Singular values of X / sqrt(n) square to the covariance eigenvalues.
  const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXd>(e / std::sqrt(10.0)).singularValues();
  for (int m = 0; m <= 4; ++m) {
    double tail = 0.0;
    for (Eigen::Index k = m; k < 4; ++k) tail += sv(k) * sv(k);
    CHECK(std::abs(pca::kl_error(x, m) - tail) < 1e-10);
  }
#endif
  CHECK_THROWS_AS(pca::kl_error(x, 5), std::invalid_argument);
}

TEST_CASE("back-mapped loadings") {
  std::mt19937_64 gen(4);
  Matrix raw = random_matrix(30, 3, gen);
  for (std::size_t i = 0; i < 30; ++i) raw(i, 2) = 1.0;
  const pca::DataMatrix x = pca::center({raw, false});
  const pca::NormMatrix norm = pca::NormMatrix::from_variances(pca::column_variances(x));
  const pca::Spectrum s = pca::eig_sym(pca::correlation_matrix(x, norm));
  const Matrix b = pca::back_map(s, norm);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(b(2, k) == 0.0);
    CHECK(b(0, k) == doctest::Approx(s.eigenvectors(0, k) * std::sqrt(norm.weights[0])));
  }
}

TEST_CASE("rule-space spectra") {
  for (int l : {4, 5, 6}) {
    const pca::RulespaceAnalysis a = pca::analyze_rulespace(l);
    const auto& ev = a.spectrum.eigenvalues;
    CHECK(a.norm.mask_size() == 2);
    double top = 0.0, all = 0.0;
    for (std::size_t k = 0; k < ev.size(); ++k) {
      all += ev[k];
      if (k < 7) top += ev[k];
      else CHECK(std::abs(ev[k]) < 1e-6);
    }
    CHECK(std::abs(all - 254.0) < 1e-6);
    CHECK(std::abs(top - all) < 1e-6);
  }
  CHECK_THROWS_AS(pca::analyze_rulespace(13), std::invalid_argument);
}
