#include <cmath>
#include <vector>

#include <doctest.h>

#include "meanforge/errors.hpp"
#include "meanforge/linalg.hpp"
#include "meanforge/matrix.hpp"
#include "meanforge/sampling.hpp"
#include "support/builders.hpp"
#include "support/reference.hpp"

using namespace meanforge;
using testsupport::literal;
using testsupport::relative_gap;
using testsupport::sampled_matrix;
using testsupport::sampled_pd;

namespace {

HermitianMatrix random_hermitian(Index dim, std::uint64_t seed) {
  const ComplexMatrix g = sampled_matrix(dim, seed);
  return HermitianMatrix(ComplexMatrix(
      DenseMatrix(0.5 * (g.entries() + g.entries().adjoint()))));
}

RealVector log_spaced(Index n, double lo, double hi) {
  RealVector out(n);
  for (Index i = 0; i < n; ++i) {
    const double f = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
    out[i] = lo * std::pow(hi / lo, f);
  }
  return out;
}

}  // namespace

TEST_SUITE_BEGIN("linalg");

TEST_CASE("hermitian_eig satisfies reconstruction and unitarity") {
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    for (Index dim : {1, 2, 5, 8}) {
      const HermitianMatrix h = random_hermitian(dim, seed * 100 + dim);
      const EigenDecomposition eig = hermitian_eig(h);
      REQUIRE(eig.eigenvalues.size() == dim);
      for (Index i = 0; i + 1 < dim; ++i) {
        CHECK(eig.eigenvalues[i] >= eig.eigenvalues[i + 1]);
      }
      const DenseMatrix rebuilt = eig.basis.entries() *
                                  eig.eigenvalues.asDiagonal() *
                                  eig.basis.entries().adjoint();
      CHECK(relative_gap(ComplexMatrix(rebuilt), h.matrix()) < 1e-10);
      const DenseMatrix gram =
          eig.basis.entries().adjoint() * eig.basis.entries();
      CHECK((gram - DenseMatrix::Identity(dim, dim)).norm() < 1e-10);
    }
  }
}

TEST_CASE("hermitian_eig handles a degenerate spectrum") {
  const EigenDecomposition eig =
      hermitian_eig(HermitianMatrix(ComplexMatrix::identity(4)));
  for (Index i = 0; i < 4; ++i) {
    CHECK(eig.eigenvalues[i] == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("matrix_function applies a scalar map on the spectrum") {
  const HermitianMatrix h = random_hermitian(4, 77);
  const HermitianMatrix doubled =
      matrix_function(h, [](double x) { return 2.0 * x; });
  CHECK(relative_gap(doubled.matrix(), 2.0 * h.matrix()) < 1e-13);

  CHECK_THROWS_AS(
      matrix_function(h, [](double) {
        return std::numeric_limits<double>::infinity();
      }),
      DomainError);
}

TEST_CASE("matrix_function_psd clips tiny negative eigenvalues only") {
  RealVector nearly(2);
  nearly << 1.0, -1e-13;
  const HermitianMatrix near_psd(ComplexMatrix::diagonal(nearly));
  const HermitianMatrix root =
      matrix_function_psd(near_psd, [](double x) { return std::sqrt(x); });
  CHECK(std::abs(root.matrix()(1, 1)) <= 1e-15);

  RealVector indefinite(2);
  indefinite << 1.0, -0.5;
  CHECK_THROWS_AS(
      matrix_function_psd(HermitianMatrix(ComplexMatrix::diagonal(indefinite)),
                          [](double x) { return std::sqrt(x); }),
      DomainError);
}

TEST_CASE("matrix_power on integer exponents handles indefinite input") {
  RealVector d(2);
  d << 2.0, -2.0;
  const HermitianMatrix h(ComplexMatrix::diagonal(d));
  const HermitianMatrix cubed = matrix_power(h, 3.0);
  CHECK(cubed.matrix()(0, 0).real() == doctest::Approx(8.0));
  CHECK(cubed.matrix()(1, 1).real() == doctest::Approx(-8.0));

  CHECK_THROWS_AS(matrix_power(h, 0.5), DomainError);
}

TEST_CASE("matrix_power round trips") {
  const PositiveDefiniteMatrix pd = sampled_pd(5, 31, 1e-2, 1e2);
  const HermitianMatrix root = matrix_power(pd.hermitian(), 0.5);
  CHECK(relative_gap(root.matrix() * root.matrix(), pd.matrix()) < 1e-12);

  const HermitianMatrix inv = matrix_power(pd.hermitian(), -1.0);
  CHECK(relative_gap(inv.matrix() * pd.matrix(), ComplexMatrix::identity(5)) <
        1e-10);

  CHECK_THROWS_AS(matrix_power(pd.hermitian(),
                               std::numeric_limits<double>::infinity()),
                  DomainError);
}

TEST_CASE("matrix_power negative exponent requires invertibility") {
  RealVector d(2);
  d << 1.0, 0.0;
  const HermitianMatrix singular(ComplexMatrix::diagonal(d));
  CHECK_THROWS_AS(matrix_power(singular, -1.0), DomainError);
}

TEST_CASE("fractional matrix_power agrees with the extended-precision "
          "reference") {
  for (Index dim : {2, 5}) {
    const PositiveDefiniteMatrix pd = sampled_pd(dim, 1234 + dim, 1e-3, 1e3);
    for (double e : {0.3, 0.5, 1.7, 2.5}) {
      const HermitianMatrix powered = matrix_power(pd.hermitian(), e);
      const ComplexMatrix expected = testsupport::ref_pd_power(pd.matrix(), e);
      CHECK(relative_gap(powered.matrix(), expected) < 1e-11);
    }
  }
}

TEST_CASE("singular_values matches the reference and sorts decreasing") {
  for (Index dim : {1, 3, 6}) {
    const ComplexMatrix m = sampled_matrix(dim, 555 + dim);
    const SpectrumVector sv = singular_values(m);
    const std::vector<double> expected = testsupport::ref_singular_values(m);
    REQUIRE(sv.size() == dim);
    for (Index i = 0; i < dim; ++i) {
      CHECK(sv[i] ==
            doctest::Approx(expected[static_cast<std::size_t>(i)])
                .epsilon(1e-11));
    }
  }
  CHECK(singular_values(ComplexMatrix{}).size() == 0);
}

TEST_CASE("matrix_abs is PSD with the singular values as spectrum") {
  const ComplexMatrix m = sampled_matrix(4, 808);
  const HermitianMatrix abs = matrix_abs(m);
  const RealVector lambda = hermitian_eigenvalues(abs);
  const SpectrumVector sv = singular_values(m);
  for (Index i = 0; i < 4; ++i) {
    CHECK(lambda[i] == doctest::Approx(sv[i]).epsilon(1e-10));
  }
  CHECK(lambda[3] >= -1e-12 * lambda[0]);
}

TEST_CASE("direct_sum concatenates spectra and dim 0 is neutral") {
  const ComplexMatrix a = sampled_matrix(2, 11);
  const ComplexMatrix b = sampled_matrix(3, 12);
  const ComplexMatrix both = direct_sum(a, b);
  REQUIRE(both.dim() == 5);
  CHECK(both(0, 0) == a(0, 0));
  CHECK(both(2, 2) == b(0, 0));
  CHECK(both(0, 2) == Complex(0, 0));

  CHECK(relative_gap(direct_sum(a, ComplexMatrix{}), a) == 0.0);
  CHECK(relative_gap(direct_sum(ComplexMatrix{}, b), b) == 0.0);
}

TEST_CASE("hermitize symmetrizes small drift and rejects large drift") {
  const PositiveDefiniteMatrix pd = sampled_pd(3, 21);
  DenseMatrix drifted = pd.matrix().entries();
  drifted(0, 1) += Complex(0, 1e-10);
  const HermitianMatrix fixed = hermitize(ComplexMatrix(drifted));
  CHECK(fixed.matrix().asymmetry() == 0.0);
  CHECK(relative_gap(fixed.matrix(), pd.matrix()) < 1e-9);

  CHECK_THROWS_AS(hermitize(sampled_matrix(3, 22)), NotHermitian);
}

TEST_CASE("positive_definite wraps assembled near-Hermitian products") {
  const PositiveDefiniteMatrix pd = sampled_pd(4, 99);
  const ComplexMatrix product =
      matrix_power(pd.hermitian(), 0.5).matrix() *
      matrix_power(pd.hermitian(), 0.5).matrix();
  const PositiveDefiniteMatrix rebuilt = positive_definite(product);
  CHECK(relative_gap(rebuilt.matrix(), pd.matrix()) < 1e-11);
}

TEST_CASE("graded_svd matches a direct SVD for benign scalings") {
  RngState rng(4242);
  const ComplexMatrix core = random_unitary(4, rng);
  const RealVector left = log_spaced(4, 0.5, 2.0);
  const RealVector right = log_spaced(4, 0.25, 4.0);

  const ComplexMatrix assembled(
      DenseMatrix(left.asDiagonal() * core.entries() * right.asDiagonal()));
  const SpectrumVector direct = singular_values(assembled);
  const SpectrumVector graded = graded_singular_values(left, core, right);
  const SpectrumVector high =
      graded_singular_values(left, core, right, GradedPrecision::High);
  REQUIRE(graded.size() == 4);
  for (Index i = 0; i < 4; ++i) {
    CHECK(graded[i] == doctest::Approx(direct[i]).epsilon(1e-12));
    CHECK(high[i] == doctest::Approx(graded[i]).epsilon(1e-12));
  }
}

TEST_CASE("graded_svd left basis is unitary and reconstructs the product") {
  RngState rng(777);
  const ComplexMatrix core = random_unitary(5, rng);
  const RealVector left = log_spaced(5, 0.1, 10.0);
  const RealVector right = log_spaced(5, 0.2, 5.0);
  const GradedSvd svd = graded_svd(left, core, right);

  const DenseMatrix gram =
      svd.left_basis.entries().adjoint() * svd.left_basis.entries();
  CHECK((gram - DenseMatrix::Identity(5, 5)).norm() < 1e-12);

  // Recover V as M^* U diag(1/sigma) and check M = U diag(sigma) V^*.
  const DenseMatrix assembled =
      left.asDiagonal() * core.entries() * right.asDiagonal();
  DenseMatrix v = assembled.adjoint() * svd.left_basis.entries();
  for (Index c = 0; c < 5; ++c) v.col(c) /= svd.singular_values[c];
  CHECK((v.adjoint() * v - DenseMatrix::Identity(5, 5)).norm() < 1e-10);
  const DenseMatrix rebuilt = svd.left_basis.entries() *
                              svd.singular_values.values().asDiagonal() *
                              v.adjoint();
  CHECK((rebuilt - assembled).norm() < 1e-12 * assembled.norm());
}

TEST_CASE("high-accuracy graded_svd keeps relative accuracy across a wide "
          "dynamic range") {
  RngState rng(31337);
  for (Index dim : {2, 4, 6}) {
    const ComplexMatrix core = random_unitary(dim, rng);
    const RealVector left = log_spaced(dim, 1e-8, 1e8);
    const RealVector right = log_spaced(dim, 1e-3, 1e3);
    const SpectrumVector high =
        graded_singular_values(left, core, right, GradedPrecision::High);
    const std::vector<double> expected =
        testsupport::ref_graded_spectrum(left, core, right);
    REQUIRE(high.size() == dim);
    for (Index i = 0; i < dim; ++i) {
      const double ref = expected[static_cast<std::size_t>(i)];
      CHECK(std::abs(high[i] - ref) <= 1e-11 * ref);
    }
  }
}

TEST_CASE("high-accuracy graded_svd satisfies the determinant identity at "
          "extreme range") {
  RngState rng(90001);
  const Index dim = 5;
  const ComplexMatrix core = random_unitary(dim, rng);
  // Combined scaling range 1e22: far beyond what a working-precision SVD
  // of the assembled product can resolve.
  const RealVector left = log_spaced(dim, 1e-11, 1e11);
  const RealVector right = log_spaced(dim, 1.0, 1.0);
  const SpectrumVector high =
      graded_singular_values(left, core, right, GradedPrecision::High);
  // |det(diag(l) C diag(r))| = prod l_i * prod r_i for unitary C, so the
  // log-sums must agree.
  double log_sigma = 0.0;
  double log_scales = 0.0;
  for (Index i = 0; i < dim; ++i) {
    log_sigma += std::log(high[i]);
    log_scales += std::log(left[i]) + std::log(right[i]);
  }
  CHECK(log_sigma == doctest::Approx(log_scales).epsilon(1e-12));
  // Every singular value keeps full relative accuracy.
  const std::vector<double> expected =
      testsupport::ref_graded_spectrum(left, core, right);
  for (Index i = 0; i < dim; ++i) {
    CHECK(std::abs(high[i] - expected[static_cast<std::size_t>(i)]) <=
          1e-11 * expected[static_cast<std::size_t>(i)]);
  }
}

TEST_CASE("graded_svd validates its scalings") {
  const ComplexMatrix core = ComplexMatrix::identity(2);
  RealVector wrong_len(3);
  wrong_len << 1.0, 2.0, 3.0;
  RealVector fine(2);
  fine << 1.0, 2.0;
  CHECK_THROWS_AS(graded_singular_values(wrong_len, core, fine),
                  DimensionMismatch);
  RealVector nonpositive(2);
  nonpositive << 1.0, 0.0;
  CHECK_THROWS_AS(graded_singular_values(nonpositive, core, fine),
                  DomainError);
  RealVector non_finite(2);
  non_finite << 1.0, std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(graded_singular_values(fine, core, non_finite),
                  DomainError);
}

TEST_CASE("gram_sum_spectrum of one factor squares its singular values") {
  const ComplexMatrix f = sampled_matrix(4, 616);
  const SpectrumVector lambda = gram_sum_spectrum({f});
  const SpectrumVector sigma = singular_values(f);
  for (Index i = 0; i < 4; ++i) {
    CHECK(lambda[i] == doctest::Approx(sigma[i] * sigma[i]).epsilon(1e-11));
  }
}

TEST_CASE("gram_sum_spectrum matches the reference on mixed-scale factors") {
  std::vector<ComplexMatrix> factors;
  factors.push_back(ComplexMatrix(
      DenseMatrix(1e6 * sampled_matrix(3, 71).entries())));
  factors.push_back(sampled_matrix(3, 72));
  factors.push_back(ComplexMatrix(
      DenseMatrix(1e-6 * sampled_matrix(3, 73).entries())));
  const SpectrumVector lambda = gram_sum_spectrum(factors);
  const std::vector<double> expected =
      testsupport::ref_gram_sum_spectrum(factors);
  REQUIRE(lambda.size() == 3);
  const double top = expected[0];
  for (Index i = 0; i < 3; ++i) {
    const double ref = expected[static_cast<std::size_t>(i)];
    // The final working-precision SVD bounds errors relative to the
    // largest eigenvalue; values well above that floor are also accurate
    // in their own relative terms.
    CHECK(std::abs(lambda[i] - ref) <= 1e-13 * top);
    if (ref >= 1e-8 * top) {
      CHECK(std::abs(lambda[i] - ref) <= 1e-11 * ref);
    }
  }
}

TEST_CASE("gram_sum_spectrum agrees with a directly assembled sum") {
  // The Gram route must reproduce what a naive (symmetrized) assembly
  // finds whenever the latter is numerically trustworthy.
  std::vector<ComplexMatrix> factors;
  for (std::uint64_t seed : {91u, 92u, 93u, 94u}) {
    factors.push_back(sampled_matrix(5, seed));
  }
  const SpectrumVector lambda = gram_sum_spectrum(factors);
  DenseMatrix sum = DenseMatrix::Zero(5, 5);
  for (const ComplexMatrix& f : factors) {
    sum += f.entries() * f.entries().adjoint();
  }
  const RealVector direct =
      hermitian_eigenvalues(hermitize(ComplexMatrix(sum)));
  for (Index i = 0; i < 5; ++i) {
    CHECK(lambda[i] == doctest::Approx(direct[i]).epsilon(1e-10));
  }
}

TEST_CASE("gram_sum_spectrum validates its inputs") {
  CHECK_THROWS_AS(gram_sum_spectrum({}), LengthMismatch);
  CHECK_THROWS_AS(
      gram_sum_spectrum({ComplexMatrix::identity(2),
                         ComplexMatrix::identity(3)}),
      DimensionMismatch);
}

TEST_SUITE_END();
