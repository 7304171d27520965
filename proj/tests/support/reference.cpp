#include "support/reference.hpp"

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace testsupport {

namespace {

using meanforge::Complex;
using meanforge::ComplexMatrix;
using meanforge::DenseMatrix;
using meanforge::Index;
using meanforge::RealVector;

// 77 significant decimal digits (~256 bits of mantissa): comfortably more
// than twice double precision even after squaring condition numbers.
using Big = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<77>, boost::multiprecision::et_off>;

constexpr double kBigTolerance = 1e-70;
constexpr int kMaxJacobiSweeps = 200;
constexpr int kMaxSqrtIterations = 200;

struct BigC {
  Big re{0};
  Big im{0};
};

BigC operator+(const BigC& a, const BigC& b) { return {a.re + b.re, a.im + b.im}; }
BigC operator-(const BigC& a, const BigC& b) { return {a.re - b.re, a.im - b.im}; }
BigC operator*(const BigC& a, const BigC& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
BigC operator*(const Big& s, const BigC& a) { return {s * a.re, s * a.im}; }
BigC conj(const BigC& a) { return {a.re, -a.im}; }
Big abs2(const BigC& a) { return a.re * a.re + a.im * a.im; }
Big big_abs(const BigC& a) { return sqrt(abs2(a)); }
BigC operator/(const BigC& a, const BigC& b) {
  const Big d = abs2(b);
  const BigC n = a * conj(b);
  return {n.re / d, n.im / d};
}

// Row-major square (or wide) matrix over BigC.
class BigMat {
 public:
  BigMat(Index rows, Index cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols)) {}

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  BigC& at(Index r, Index c) { return data_[static_cast<std::size_t>(r * cols_ + c)]; }
  const BigC& at(Index r, Index c) const {
    return data_[static_cast<std::size_t>(r * cols_ + c)];
  }

 private:
  Index rows_;
  Index cols_;
  std::vector<BigC> data_;
};

BigMat from_double(const ComplexMatrix& m) {
  BigMat out(m.dim(), m.dim());
  for (Index r = 0; r < m.dim(); ++r) {
    for (Index c = 0; c < m.dim(); ++c) {
      out.at(r, c) = {Big(m(r, c).real()), Big(m(r, c).imag())};
    }
  }
  return out;
}

ComplexMatrix to_double(const BigMat& m) {
  DenseMatrix out(m.rows(), m.cols());
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      out(r, c) = Complex(m.at(r, c).re.convert_to<double>(),
                          m.at(r, c).im.convert_to<double>());
    }
  }
  return ComplexMatrix(std::move(out));
}

BigMat identity(Index n) {
  BigMat out(n, n);
  for (Index i = 0; i < n; ++i) out.at(i, i) = {Big(1), Big(0)};
  return out;
}

BigMat multiply(const BigMat& a, const BigMat& b) {
  if (a.cols() != b.rows()) throw std::logic_error("reference multiply shape");
  BigMat out(a.rows(), b.cols());
  for (Index r = 0; r < a.rows(); ++r) {
    for (Index c = 0; c < b.cols(); ++c) {
      BigC acc{Big(0), Big(0)};
      for (Index k = 0; k < a.cols(); ++k) acc = acc + a.at(r, k) * b.at(k, c);
      out.at(r, c) = acc;
    }
  }
  return out;
}

BigMat adjoint(const BigMat& a) {
  BigMat out(a.cols(), a.rows());
  for (Index r = 0; r < a.rows(); ++r) {
    for (Index c = 0; c < a.cols(); ++c) out.at(c, r) = conj(a.at(r, c));
  }
  return out;
}

BigMat add(const BigMat& a, const BigMat& b) {
  BigMat out(a.rows(), a.cols());
  for (Index r = 0; r < a.rows(); ++r) {
    for (Index c = 0; c < a.cols(); ++c) out.at(r, c) = a.at(r, c) + b.at(r, c);
  }
  return out;
}

BigMat scale(const Big& s, const BigMat& a) {
  BigMat out(a.rows(), a.cols());
  for (Index r = 0; r < a.rows(); ++r) {
    for (Index c = 0; c < a.cols(); ++c) out.at(r, c) = s * a.at(r, c);
  }
  return out;
}

Big frobenius2(const BigMat& a) {
  Big acc(0);
  for (Index r = 0; r < a.rows(); ++r) {
    for (Index c = 0; c < a.cols(); ++c) acc += abs2(a.at(r, c));
  }
  return acc;
}

BigMat symmetrize(const BigMat& a) {
  BigMat out(a.rows(), a.cols());
  const Big half = Big(1) / Big(2);
  for (Index r = 0; r < a.rows(); ++r) {
    for (Index c = 0; c < a.cols(); ++c) {
      out.at(r, c) = half * (a.at(r, c) + conj(a.at(c, r)));
    }
  }
  return out;
}

// Gauss-Jordan elimination with partial pivoting (pivot by squared
// magnitude; square roots are not needed to pick the largest).
BigMat gauss_jordan_inverse(const BigMat& a) {
  const Index n = a.rows();
  BigMat work = a;
  BigMat inv = identity(n);
  for (Index col = 0; col < n; ++col) {
    Index pivot = col;
    Big best = abs2(work.at(col, col));
    for (Index r = col + 1; r < n; ++r) {
      const Big mag = abs2(work.at(r, col));
      if (mag > best) {
        best = mag;
        pivot = r;
      }
    }
    if (best == 0) throw std::runtime_error("reference inverse: singular matrix");
    if (pivot != col) {
      for (Index c = 0; c < n; ++c) {
        std::swap(work.at(pivot, c), work.at(col, c));
        std::swap(inv.at(pivot, c), inv.at(col, c));
      }
    }
    const BigC diag = work.at(col, col);
    for (Index c = 0; c < n; ++c) {
      work.at(col, c) = work.at(col, c) / diag;
      inv.at(col, c) = inv.at(col, c) / diag;
    }
    for (Index r = 0; r < n; ++r) {
      if (r == col) continue;
      const BigC factor = work.at(r, col);
      if (factor.re == 0 && factor.im == 0) continue;
      for (Index c = 0; c < n; ++c) {
        work.at(r, c) = work.at(r, c) - factor * work.at(col, c);
        inv.at(r, c) = inv.at(r, c) - factor * inv.at(col, c);
      }
    }
  }
  return inv;
}

// One-sided Jacobi process on the columns of g: cyclic complex rotations
// until all columns are pairwise orthogonal. Column norms are then the
// singular values of the input; normalized columns are the left singular
// vectors. For a Hermitian positive definite input this doubles as the
// eigendecomposition.
struct JacobiResult {
  std::vector<Big> sigma;  // sorted decreasing
  BigMat left;             // matching normalized columns
};

JacobiResult onesided_jacobi(BigMat g) {
  const Index rows = g.rows();
  const Index cols = g.cols();
  const Big tol = Big(kBigTolerance);
  for (int sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
    bool rotated = false;
    for (Index p = 0; p < cols - 1; ++p) {
      for (Index q = p + 1; q < cols; ++q) {
        Big app(0);
        Big aqq(0);
        BigC apq{Big(0), Big(0)};
        for (Index r = 0; r < rows; ++r) {
          app += abs2(g.at(r, p));
          aqq += abs2(g.at(r, q));
          apq = apq + conj(g.at(r, p)) * g.at(r, q);
        }
        const Big mag = big_abs(apq);
        if (!(mag > tol * sqrt(app) * sqrt(aqq))) continue;
        rotated = true;
        // Absorb the phase of the inner product into column q, then apply
        // the real rotation that zeroes it: with b = |apq| and
        // tau = (aqq - app) / (2b), the stable root of t^2 + 2 tau t - 1
        // is t = sign(tau) / (|tau| + sqrt(1 + tau^2)).
        const BigC phase{apq.re / mag, apq.im / mag};
        const Big tau = (aqq - app) / (2 * mag);
        const Big t = (tau >= 0 ? Big(1) : Big(-1)) /
                      ((tau >= 0 ? tau : -tau) + sqrt(1 + tau * tau));
        const Big c = 1 / sqrt(1 + t * t);
        const Big s = c * t;
        for (Index r = 0; r < rows; ++r) {
          const BigC gp = g.at(r, p);
          const BigC gq = conj(phase) * g.at(r, q);
          g.at(r, p) = c * gp - s * gq;
          g.at(r, q) = s * gp + c * gq;
        }
      }
    }
    if (!rotated) {
      JacobiResult result{std::vector<Big>(static_cast<std::size_t>(cols)),
                          BigMat(rows, cols)};
      std::vector<Index> order(static_cast<std::size_t>(cols));
      std::vector<Big> norms(static_cast<std::size_t>(cols));
      for (Index j = 0; j < cols; ++j) {
        Big nrm2(0);
        for (Index r = 0; r < rows; ++r) nrm2 += abs2(g.at(r, j));
        norms[static_cast<std::size_t>(j)] = sqrt(nrm2);
        order[static_cast<std::size_t>(j)] = j;
      }
      std::sort(order.begin(), order.end(), [&](Index a, Index b) {
        return norms[static_cast<std::size_t>(a)] >
               norms[static_cast<std::size_t>(b)];
      });
      for (Index out_j = 0; out_j < cols; ++out_j) {
        const Index src = order[static_cast<std::size_t>(out_j)];
        const Big nrm = norms[static_cast<std::size_t>(src)];
        result.sigma[static_cast<std::size_t>(out_j)] = nrm;
        for (Index r = 0; r < rows; ++r) {
          result.left.at(r, out_j) =
              nrm > 0 ? BigC{g.at(r, src).re / nrm, g.at(r, src).im / nrm}
                      : BigC{Big(0), Big(0)};
        }
      }
      return result;
    }
  }
  throw std::runtime_error("reference Jacobi process did not converge");
}

// Eigendecomposition of a Hermitian positive semidefinite matrix: for such
// a matrix the one-sided Jacobi columns converge to eigenvalue-scaled
// eigenvectors.
JacobiResult pd_eigen(const BigMat& h) { return onesided_jacobi(h); }

BigMat pd_power_big(const BigMat& h, const Big& e) {
  const Index n = h.rows();
  const JacobiResult eig = pd_eigen(symmetrize(h));
  BigMat scaled(n, n);
  for (Index c = 0; c < n; ++c) {
    const Big lambda = eig.sigma[static_cast<std::size_t>(c)];
    if (!(lambda > 0)) {
      throw std::runtime_error("reference power of a non-positive matrix");
    }
    const Big powered = pow(lambda, e);
    for (Index r = 0; r < n; ++r) {
      scaled.at(r, c) = powered * eig.left.at(r, c);
    }
  }
  return multiply(scaled, adjoint(eig.left));
}

// Denman-Beavers iteration: Y <- (Y + Z^{-1})/2, Z <- (Z + Y^{-1})/2 from
// Y = H, Z = I converges quadratically with Y -> H^{1/2}.
BigMat db_sqrt_big(const BigMat& h) {
  const Big half = Big(1) / Big(2);
  BigMat y = h;
  BigMat z = identity(h.rows());
  const Big stop = Big(kBigTolerance) * Big(kBigTolerance);
  for (int iter = 0; iter < kMaxSqrtIterations; ++iter) {
    const BigMat y_next = scale(half, add(y, gauss_jordan_inverse(z)));
    const BigMat z_next = scale(half, add(z, gauss_jordan_inverse(y)));
    Big diff(0);
    for (Index r = 0; r < h.rows(); ++r) {
      for (Index c = 0; c < h.cols(); ++c) {
        diff += abs2(y_next.at(r, c) - y.at(r, c));
      }
    }
    y = y_next;
    z = z_next;
    if (diff <= stop * frobenius2(y)) return symmetrize(y);
  }
  throw std::runtime_error("reference Denman-Beavers did not converge");
}

BigMat t_mean_big(const BigMat& a, const BigMat& b, const Big& t) {
  const BigMat root_a = db_sqrt_big(a);
  const BigMat inv_root_a = gauss_jordan_inverse(root_a);
  const BigMat inner =
      symmetrize(multiply(multiply(inv_root_a, b), inv_root_a));
  const BigMat powered = pd_power_big(inner, t);
  return symmetrize(multiply(multiply(root_a, powered), root_a));
}

std::vector<double> sigma_to_double(const std::vector<Big>& sigma) {
  std::vector<double> out(sigma.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    out[i] = sigma[i].convert_to<double>();
  }
  return out;
}

// Spectrum of a Hermitian PSD matrix, down-converted.
std::vector<double> spectrum_of(const BigMat& h) {
  return sigma_to_double(pd_eigen(symmetrize(h)).sigma);
}

}  // namespace

std::vector<double> ref_singular_values(const ComplexMatrix& m) {
  // sigma(M) = sqrt(eig(M^* M)); squaring is harmless at 77 digits.
  const BigMat big = from_double(m);
  const BigMat gram = multiply(adjoint(big), big);
  std::vector<Big> lambda = pd_eigen(symmetrize(gram)).sigma;
  std::vector<double> out(lambda.size());
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    out[i] = sqrt(lambda[i]).convert_to<double>();
  }
  return out;
}

std::vector<double> ref_pd_spectrum(const ComplexMatrix& m) {
  return spectrum_of(from_double(m));
}

std::vector<double> ref_graded_spectrum(const RealVector& left,
                                        const ComplexMatrix& core,
                                        const RealVector& right) {
  const Index n = core.dim();
  BigMat scaled(n, n);
  for (Index r = 0; r < n; ++r) {
    for (Index c = 0; c < n; ++c) {
      const BigC entry{Big(core(r, c).real()), Big(core(r, c).imag())};
      scaled.at(r, c) = Big(left[r]) * (Big(right[c]) * entry);
    }
  }
  const BigMat gram = multiply(adjoint(scaled), scaled);
  std::vector<Big> lambda = pd_eigen(symmetrize(gram)).sigma;
  std::vector<double> out(lambda.size());
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    out[i] = sqrt(lambda[i]).convert_to<double>();
  }
  return out;
}

std::vector<double> ref_gram_sum_spectrum(
    const std::vector<ComplexMatrix>& factors) {
  const Index n = factors.front().dim();
  BigMat sum(n, n);
  for (const ComplexMatrix& f : factors) {
    const BigMat big = from_double(f);
    sum = add(sum, multiply(big, adjoint(big)));
  }
  return spectrum_of(sum);
}

ComplexMatrix ref_pd_power(const ComplexMatrix& h, double e) {
  return to_double(pd_power_big(from_double(h), Big(e)));
}

ComplexMatrix ref_sqrt(const ComplexMatrix& h) {
  return to_double(db_sqrt_big(from_double(h)));
}

ComplexMatrix ref_t_mean(const ComplexMatrix& a, const ComplexMatrix& b,
                         double t) {
  return to_double(t_mean_big(from_double(a), from_double(b), Big(t)));
}

std::vector<double> ref_sum_powered_means_spectrum(
    const std::vector<ComplexMatrix>& as, const std::vector<ComplexMatrix>& bs,
    double t, double s, double r) {
  if (as.size() != bs.size() || as.empty()) {
    throw std::logic_error("reference sum: mismatched tuple");
  }
  const Index n = as.front().dim();
  BigMat sum(n, n);
  const Big big_t(t);
  const Big big_s(s);
  const Big big_r(r);
  for (std::size_t i = 0; i < as.size(); ++i) {
    BigMat lhs_a = from_double(as[i]);
    BigMat lhs_b = from_double(bs[i]);
    if (s != 1.0) {
      lhs_a = pd_power_big(lhs_a, big_s);
      lhs_b = pd_power_big(lhs_b, big_s);
    }
    BigMat mean = t_mean_big(lhs_a, lhs_b, big_t);
    if (r != 1.0) mean = pd_power_big(mean, big_r);
    sum = add(sum, mean);
  }
  return spectrum_of(sum);
}

std::vector<double> ref_powered_triple_spectrum(const ComplexMatrix& p_mat,
                                                double e1,
                                                const ComplexMatrix& q_mat,
                                                double e2, double e3) {
  const BigMat outer = pd_power_big(from_double(p_mat), Big(e1));
  const BigMat middle = pd_power_big(from_double(q_mat), Big(e2));
  const BigMat triple =
      symmetrize(multiply(multiply(outer, middle), outer));
  if (e3 == 1.0) return spectrum_of(triple);
  return spectrum_of(pd_power_big(triple, Big(e3)));
}

}  // namespace testsupport
