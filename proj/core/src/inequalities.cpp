#include "meanforge/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "meanforge/linalg.hpp"
#include "meanforge/majorization.hpp"
#include "meanforge/norms.hpp"

namespace meanforge {

namespace {

// Commutation precondition for the commuting-pair chain, relative to the
// Frobenius norms of the factors.
constexpr double kCommutingTolerance = 1e-10;

RealVector padded(const SpectrumVector& s, Index total) {
  RealVector out = RealVector::Zero(total);
  out.head(s.size()) = s.values();
  return out;
}

RealVector padded(const RealVector& s, Index total) {
  RealVector out = RealVector::Zero(total);
  out.head(s.size()) = s;
  return out;
}

std::vector<double> to_std(const RealVector& v) {
  return std::vector<double>(v.begin(), v.end());
}

// Prefix log-sums; zeros propagate as -inf, which is fine for reporting.
RealVector prefix_log_sums(const RealVector& spectrum) {
  RealVector out(spectrum.size());
  double acc = 0.0;
  for (Index i = 0; i < spectrum.size(); ++i) {
    acc += std::log(spectrum[i]);
    out[i] = acc;
  }
  return out;
}

CheckVerdict weak_verdict(std::string id, const InequalityParams& params,
                          const RealVector& lhs_spectrum,
                          const RealVector& rhs_spectrum, double tolerance) {
  if (lhs_spectrum.size() != rhs_spectrum.size()) {
    throw LengthMismatch("spectra of a weak comparison differ in length");
  }
  CheckVerdict verdict;
  verdict.statement_id = std::move(id);
  verdict.params = params;
  verdict.is_proven_statement = is_proven_statement(verdict.statement_id);
  const RealVector lhs = prefix_sums(lhs_spectrum);
  const RealVector rhs = prefix_sums(rhs_spectrum);
  verdict.lhs_values = to_std(lhs);
  verdict.rhs_values = to_std(rhs);
  verdict.slacks.reserve(lhs.size());
  double worst = std::numeric_limits<double>::infinity();
  for (Index k = 0; k < lhs.size(); ++k) {
    const double slack = (rhs[k] - lhs[k]) / std::max(1.0, rhs[k]);
    verdict.slacks.push_back(slack);
    worst = std::min(worst, slack);
  }
  verdict.holds = lhs.size() == 0 || worst >= -tolerance;
  return verdict;
}

CheckVerdict scalar_verdict(std::string id, const InequalityParams& params,
                            double lhs, double rhs, double tolerance) {
  CheckVerdict verdict;
  verdict.statement_id = std::move(id);
  verdict.params = params;
  verdict.is_proven_statement = is_proven_statement(verdict.statement_id);
  verdict.lhs_values = {lhs};
  verdict.rhs_values = {rhs};
  const double slack = (rhs - lhs) / std::max(1.0, rhs);
  verdict.slacks = {slack};
  verdict.holds = slack >= -tolerance;
  return verdict;
}

// Multiplicative comparison: slacks come from the dominance machinery
// (differences of prefix log-sums, plus the product-equality residual in
// Log mode); the reported values are the prefix log-sums themselves.
CheckVerdict log_verdict(std::string id, const InequalityParams& params,
                         const RealVector& lhs_spectrum,
                         const RealVector& rhs_spectrum, DominanceMode mode,
                         double tolerance) {
  CheckVerdict verdict;
  verdict.statement_id = std::move(id);
  verdict.params = params;
  verdict.is_proven_statement = is_proven_statement(verdict.statement_id);
  verdict.lhs_values = to_std(prefix_log_sums(lhs_spectrum));
  verdict.rhs_values = to_std(prefix_log_sums(rhs_spectrum));
  const DominanceVerdict dom =
      dominates(lhs_spectrum, rhs_spectrum, mode, tolerance);
  verdict.slacks = dom.per_index_slacks;
  verdict.holds = dom.holds;
  return verdict;
}

// Exact identities: slack at index i is -(deviation)/max(1, rhs), so holds
// still reads "min slack >= -tolerance" while bounding both directions.
CheckVerdict two_sided_verdict(std::string id, const InequalityParams& params,
                               const RealVector& lhs, const RealVector& rhs,
                               double tolerance) {
  if (lhs.size() != rhs.size()) {
    throw LengthMismatch("sides of an identity differ in length");
  }
  CheckVerdict verdict;
  verdict.statement_id = std::move(id);
  verdict.params = params;
  verdict.is_proven_statement = is_proven_statement(verdict.statement_id);
  verdict.lhs_values = to_std(lhs);
  verdict.rhs_values = to_std(rhs);
  verdict.slacks.reserve(lhs.size());
  double worst = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < lhs.size(); ++i) {
    const double slack =
        -std::abs(rhs[i] - lhs[i]) / std::max(1.0, std::abs(rhs[i]));
    verdict.slacks.push_back(slack);
    worst = std::min(worst, slack);
  }
  verdict.holds = lhs.size() == 0 || worst >= -tolerance;
  return verdict;
}

ComplexMatrix block_2x2(const ComplexMatrix& tl, const ComplexMatrix& tr,
                        const ComplexMatrix& bl, const ComplexMatrix& br) {
  const Index n = tl.dim();
  DenseMatrix out = DenseMatrix::Zero(2 * n, 2 * n);
  out.topLeftCorner(n, n) = tl.entries();
  out.topRightCorner(n, n) = tr.entries();
  out.bottomLeftCorner(n, n) = bl.entries();
  out.bottomRightCorner(n, n) = br.entries();
  return ComplexMatrix(std::move(out));
}

// M X M with X = base^{2h}, assembled as (M base^h)(M base^h)^*. The Gram
// shape is Hermitian by construction; a literal triple product picks up
// asymmetry of order eps * cond and trips the hermitize gate once the
// powered operands get ill-conditioned.
HermitianMatrix powered_congruence(const HermitianMatrix& m,
                                   const HermitianMatrix& base,
                                   double half_exponent) {
  const ComplexMatrix base_half = matrix_power(base, half_exponent).matrix();
  const DenseMatrix w = m.matrix().entries() * base_half.entries();
  return hermitize(ComplexMatrix(w * w.adjoint()));
}

HermitianMatrix hermitian_sum(const std::vector<PositiveDefiniteMatrix>& ms) {
  ComplexMatrix acc = ComplexMatrix::zero(ms.front().dim());
  for (const auto& m : ms) {
    acc = acc + m.matrix();
  }
  return hermitize(acc);
}

void require_same_dim(const PositiveDefiniteMatrix& a,
                      const PositiveDefiniteMatrix& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("operands have different dimensions");
  }
}

}  // namespace

void InequalityParams::validate() const {
  if (m < 1) {
    throw ParamOutOfRange("m must be a positive integer");
  }
  if (!(t >= 0.0 && t <= 1.0)) {
    throw ParamOutOfRange("t must lie in [0, 1]");
  }
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw ParamOutOfRange("p must be positive and finite");
  }
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw ParamOutOfRange("r must be positive and finite");
  }
}

MatrixTuple::MatrixTuple(std::vector<PositiveDefiniteMatrix> as,
                         std::vector<PositiveDefiniteMatrix> bs)
    : as_(std::move(as)), bs_(std::move(bs)) {
  if (as_.size() != bs_.size()) {
    throw LengthMismatch("tuple sides have different lengths");
  }
  if (as_.empty()) {
    throw LengthMismatch("tuple needs at least one pair");
  }
  const Index n = as_.front().dim();
  for (const auto& m : as_) {
    if (m.dim() != n) throw DimensionMismatch("tuple dims disagree");
  }
  for (const auto& m : bs_) {
    if (m.dim() != n) throw DimensionMismatch("tuple dims disagree");
  }
}

double CheckVerdict::min_slack() const {
  double worst = std::numeric_limits<double>::infinity();
  for (double s : slacks) worst = std::min(worst, s);
  return worst;
}

const std::vector<std::string>& all_statement_ids() {
  static const std::vector<std::string> ids = {
      "main_theorem", "conjecture_general", "conjecture_m_sum",
      "trace_theorem", "dinh",           "audenaert_chain",
      "bourin_uchiyama", "convex_sum",   "block_identity",
      "sandwich",     "ando_hiai",       "weyl",
      "sv_product"};
  return ids;
}

bool is_known_statement(std::string_view id) {
  const auto& ids = all_statement_ids();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

bool is_proven_statement(std::string_view id) {
  return is_known_statement(id) && id != "conjecture_general" &&
         id != "conjecture_m_sum";
}

namespace {

// Eigendecomposition of a matrix that must be positive definite in exact
// arithmetic (a sum of positive definite matrices); a nonpositive computed
// eigenvalue means the evaluation left the double-precision envelope.
EigenDecomposition positive_eig(const HermitianMatrix& m) {
  EigenDecomposition eig = hermitian_eig(m);
  for (Index i = 0; i < eig.eigenvalues.size(); ++i) {
    if (!(eig.eigenvalues[i] > 0.0)) {
      throw NumericalFailure(
          "a positive definite sum lost definiteness in evaluation: "
          "lambda_min = " +
          std::to_string(eig.eigenvalues[i]));
    }
  }
  return eig;
}

// Spectrum of (P^a Q^{2b} P^a)^{inv_power} for the eigendecomposed sums
// P, Q: the triple product is G G^* with G = P^a Q^b, so the result is
// sigma(G)^{2 inv_power} with sigma(G) evaluated in graded form (the
// powered triple product itself can be far too ill-conditioned to
// assemble in floating point).
RealVector powered_triple_spectrum(const EigenDecomposition& p_eig,
                                   double a_exponent,
                                   const EigenDecomposition& q_eig,
                                   double b_exponent, double inv_power) {
  const ComplexMatrix core =
      ComplexMatrix(DenseMatrix(p_eig.basis.entries().adjoint() *
                                q_eig.basis.entries()));
  const RealVector left =
      entrywise_power(p_eig.eigenvalues, a_exponent);
  const RealVector right =
      entrywise_power(q_eig.eigenvalues, b_exponent);
  const SpectrumVector sigma = graded_singular_values(left, core, right);
  return entrywise_power(sigma.values(), 2.0 * inv_power);
}

// Square factor F with F F^* = (A^s #_t B^s)^r, for summing powered means
// through the exact Gram identity sum_j F_j F_j^* = C C^* with
// C = [F_1 ... F_m]. Everything is evaluated in the operands'
// eigenbases: with K = A^{-s/2} B^{s/2} = W Sigma V^* the mean satisfies
// A^s #_t B^s = G G^* for G = A^{s/2} W Sigma^t, and powering a Gram form
// only powers the singular values of its factor, so
// F = Q_A U_G diag(sigma_G^r). This route never assembles the powered
// operands or the mean itself, whose condition numbers multiply beyond
// what working precision can represent.
ComplexMatrix powered_mean_factor(const PositiveDefiniteMatrix& a,
                                  const PositiveDefiniteMatrix& b, double t,
                                  double s, double r) {
  const EigenDecomposition a_eig = hermitian_eig(a.hermitian());
  const EigenDecomposition b_eig = hermitian_eig(b.hermitian());
  const ComplexMatrix core = ComplexMatrix(DenseMatrix(
      a_eig.basis.entries().adjoint() * b_eig.basis.entries()));
  const GradedSvd k = graded_svd(
      entrywise_power(a_eig.eigenvalues, -0.5 * s), core,
      entrywise_power(b_eig.eigenvalues, 0.5 * s), GradedPrecision::High);
  const GradedSvd g = graded_svd(
      entrywise_power(a_eig.eigenvalues, 0.5 * s), k.left_basis,
      entrywise_power(k.singular_values.values(), t), GradedPrecision::High);
  const RealVector scale = entrywise_power(g.singular_values.values(), r);
  return ComplexMatrix(DenseMatrix(a_eig.basis.entries() *
                                   g.left_basis.entries() *
                                   scale.asDiagonal()));
}

// Spectrum of sum_j (A_j^s #_t B_j^s)^r from the concatenated Gram factors.
RealVector summed_powered_mean_spectrum(const MatrixTuple& tuple, double t,
                                        double s, double r) {
  std::vector<ComplexMatrix> factors;
  factors.reserve(static_cast<std::size_t>(tuple.m()));
  for (int i = 0; i < tuple.m(); ++i) {
    factors.push_back(
        powered_mean_factor(tuple.as()[i], tuple.bs()[i], t, s, r));
  }
  return gram_sum_spectrum(factors).values();
}

}  // namespace

StatementSides squared_mean_sides(const MatrixTuple& tuple, MeanWeight t,
                                  double p, double r) {
  // lhs = spectrum of sum_j (A_j^2 #_t B_j^2)^r; the squares live on the
  // operands' eigenvalues only, so they cost no accuracy.
  const RealVector lhs =
      summed_powered_mean_spectrum(tuple, t.value(), 2.0, r);

  const double tv = t.value();
  const EigenDecomposition p_eig = positive_eig(hermitian_sum(tuple.as()));
  const EigenDecomposition q_eig = positive_eig(hermitian_sum(tuple.bs()));
  // rhs = (P^{(1-t)pr} Q^{2tpr} P^{(1-t)pr})^{1/p} = (G G^*)^{1/p} with
  // G = P^{(1-t)pr} Q^{tpr}.
  const RealVector rhs = powered_triple_spectrum(
      p_eig, (1.0 - tv) * p * r, q_eig, tv * p * r, 1.0 / p);
  return {lhs, rhs};
}

StatementSides mean_sum_sides(const MatrixTuple& tuple, MeanWeight t,
                              double p, double r) {
  // lhs = spectrum of sum_j (A_j #_t B_j)^r.
  const RealVector lhs =
      summed_powered_mean_spectrum(tuple, t.value(), 1.0, r);

  const double tv = t.value();
  const EigenDecomposition p_eig = positive_eig(hermitian_sum(tuple.as()));
  const EigenDecomposition q_eig = positive_eig(hermitian_sum(tuple.bs()));
  // rhs = (P^{(1-t)pr/2} Q^{tpr} P^{(1-t)pr/2})^{1/p} with
  // G = P^{(1-t)pr/2} Q^{tpr/2}.
  const RealVector rhs = powered_triple_spectrum(
      p_eig, (1.0 - tv) * p * r / 2.0, q_eig, tv * p * r / 2.0, 1.0 / p);
  return {lhs, rhs};
}

CheckVerdict check_main_theorem(const MatrixTuple& tuple, double p, double r,
                                double tolerance) {
  if (tuple.m() != 2) {
    throw ParamOutOfRange("the two-pair statement needs exactly two pairs");
  }
  if (!(p >= 1.0) || !(r >= 1.0)) {
    throw ParamOutOfRange(
        "proven region is p >= 1, r >= 1; explore elsewhere via the "
        "conjecture check");
  }
  InequalityParams params;
  params.m = 2;
  params.t = 0.5;
  params.p = p;
  params.r = r;
  const StatementSides sides =
      squared_mean_sides(tuple, MeanWeight(0.5), p, r);
  return weak_verdict("main_theorem", params, sides.lhs_spectrum,
                      sides.rhs_spectrum, tolerance);
}

CheckVerdict check_conjecture(const MatrixTuple& tuple,
                              const InequalityParams& params,
                              double tolerance) {
  params.validate();
  if (params.m != tuple.m()) {
    throw ParamOutOfRange("params.m does not match the tuple");
  }
  if (!(params.r >= 1.0)) {
    throw ParamOutOfRange("the conjecture is stated for r >= 1");
  }
  const StatementSides sides =
      squared_mean_sides(tuple, MeanWeight(params.t), params.p, params.r);
  return weak_verdict("conjecture_general", params, sides.lhs_spectrum,
                      sides.rhs_spectrum, tolerance);
}

CheckVerdict check_conjecture_m_sum(const MatrixTuple& tuple,
                                    double tolerance) {
  InequalityParams params;
  params.m = tuple.m();
  params.t = 0.5;
  params.p = 1.0;
  params.r = 1.0;
  const StatementSides sides =
      squared_mean_sides(tuple, MeanWeight(0.5), 1.0, 1.0);
  return weak_verdict("conjecture_m_sum", params, sides.lhs_spectrum,
                      sides.rhs_spectrum, tolerance);
}

CheckVerdict check_trace_theorem(const MatrixTuple& tuple, double p, double r,
                                 double tolerance) {
  if (!(p > 0.0) || !(r >= 1.0)) {
    throw ParamOutOfRange("trace statement needs p > 0 and r >= 1");
  }
  InequalityParams params;
  params.m = tuple.m();
  params.t = 0.5;
  params.p = p;
  params.r = r;
  const StatementSides sides =
      squared_mean_sides(tuple, MeanWeight(0.5), p, r);
  return scalar_verdict("trace_theorem", params, sides.lhs_spectrum.sum(),
                        sides.rhs_spectrum.sum(), tolerance);
}

CheckVerdict check_dinh(const MatrixTuple& tuple,
                        const InequalityParams& params, double tolerance) {
  params.validate();
  if (params.m != tuple.m()) {
    throw ParamOutOfRange("params.m does not match the tuple");
  }
  if (!(params.r >= 1.0)) {
    throw ParamOutOfRange("the mean-sum statement is proven for r >= 1");
  }
  const StatementSides sides =
      mean_sum_sides(tuple, MeanWeight(params.t), params.p, params.r);
  return weak_verdict("dinh", params, sides.lhs_spectrum,
                      sides.rhs_spectrum, tolerance);
}

ChainVerdict check_commuting_chain(const MatrixTuple& tuple,
                                   double tolerance) {
  const Index n = tuple.dim();
  for (int i = 0; i < tuple.m(); ++i) {
    const ComplexMatrix& a = tuple.as()[i].matrix();
    const ComplexMatrix& b = tuple.bs()[i].matrix();
    const double drift = (a * b - b * a).frobenius_norm();
    if (drift > kCommutingTolerance * a.frobenius_norm() *
                    b.frobenius_norm()) {
      throw NotCommuting("tuple pair does not commute");
    }
  }

  ComplexMatrix sum_product = ComplexMatrix::zero(n);
  ComplexMatrix sum_squared_roots = ComplexMatrix::zero(n);
  for (int i = 0; i < tuple.m(); ++i) {
    const ComplexMatrix& a = tuple.as()[i].matrix();
    const ComplexMatrix& b = tuple.bs()[i].matrix();
    sum_product = sum_product + a * b;
    const ComplexMatrix root_product =
        matrix_power(tuple.as()[i].hermitian(), 0.5).matrix() *
        matrix_power(tuple.bs()[i].hermitian(), 0.5).matrix();
    sum_squared_roots = sum_squared_roots + root_product * root_product;
  }
  const HermitianMatrix root_a = matrix_power(hermitian_sum(tuple.as()), 0.5);
  const HermitianMatrix sandwich =
      powered_congruence(root_a, hermitian_sum(tuple.bs()), 0.5);

  InequalityParams params;
  params.m = tuple.m();
  const RealVector s_product = singular_values(sum_product).values();
  const RealVector s_middle = singular_values(sum_squared_roots).values();
  const RealVector s_sandwich = singular_values(sandwich.matrix()).values();
  ChainVerdict chain;
  chain.left = weak_verdict("audenaert_chain", params, s_product, s_middle,
                            tolerance);
  chain.right = weak_verdict("audenaert_chain", params, s_middle, s_sandwich,
                             tolerance);
  return chain;
}

CheckVerdict check_function_sum(const std::vector<HermitianMatrix>& matrices,
                                const std::function<double(double)>& f,
                                FunctionShape shape, double tolerance) {
  if (matrices.empty()) {
    throw LengthMismatch("at least one matrix is required");
  }
  const Index n = matrices.front().dim();
  for (const auto& m : matrices) {
    if (m.dim() != n) throw DimensionMismatch("matrix dims disagree");
  }
  if (shape == FunctionShape::Convex && f(0.0) != 0.0) {
    throw DomainError("the convex direction requires f(0) = 0");
  }

  ComplexMatrix sum_acc = ComplexMatrix::zero(n);
  ComplexMatrix mapped_acc = ComplexMatrix::zero(n);
  for (const auto& m : matrices) {
    sum_acc = sum_acc + m.matrix();
    mapped_acc = mapped_acc + matrix_function_psd(m, f).matrix();
  }
  const HermitianMatrix f_of_sum = matrix_function_psd(hermitize(sum_acc), f);
  const HermitianMatrix sum_of_f = hermitize(mapped_acc);

  InequalityParams params;
  params.m = static_cast<int>(matrices.size());
  const RealVector s_f_of_sum = singular_values(f_of_sum.matrix()).values();
  const RealVector s_sum_of_f = singular_values(sum_of_f.matrix()).values();
  if (shape == FunctionShape::Concave) {
    return weak_verdict("bourin_uchiyama", params, s_f_of_sum, s_sum_of_f,
                        tolerance);
  }
  return weak_verdict("convex_sum", params, s_sum_of_f, s_f_of_sum,
                      tolerance);
}

CheckVerdict check_block_identity(const PositiveDefiniteMatrix& a,
                                  const PositiveDefiniteMatrix& b,
                                  const PositiveDefiniteMatrix& c,
                                  const PositiveDefiniteMatrix& d,
                                  double tolerance) {
  require_same_dim(a, b);
  require_same_dim(a, c);
  require_same_dim(a, d);
  const Index n = a.dim();
  const ComplexMatrix zero = ComplexMatrix::zero(n);
  const ComplexMatrix root_b = matrix_power(b.hermitian(), 0.5).matrix();
  const ComplexMatrix root_d = matrix_power(d.hermitian(), 0.5).matrix();
  const ComplexMatrix root_a = matrix_power(a.hermitian(), 0.5).matrix();
  const ComplexMatrix root_c = matrix_power(c.hermitian(), 0.5).matrix();
  const ComplexMatrix product = block_2x2(root_b, zero, root_d, zero) *
                                block_2x2(root_a, root_c, zero, zero);
  const RealVector squared =
      singular_values(product).values().array().square();

  const EigenDecomposition p_eig =
      positive_eig(hermitize(a.matrix() + c.matrix()));
  const EigenDecomposition q_eig =
      positive_eig(hermitize(b.matrix() + d.matrix()));
  const RealVector spectrum = padded(
      powered_triple_spectrum(p_eig, 0.5, q_eig, 0.5, 1.0), 2 * n);

  InequalityParams params;
  params.m = 2;
  return two_sided_verdict("block_identity", params, squared, spectrum,
                           tolerance);
}

CheckVerdict check_sandwich_lemmas(const PositiveDefiniteMatrix& a,
                                   const PositiveDefiniteMatrix& b, double p,
                                   double r, double tolerance) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw ParamOutOfRange("r must be positive");
  }
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw ParamOutOfRange("p must be positive");
  }
  require_same_dim(a, b);
  // lambda(A B A) = sigma^2(A B^{1/2}) and
  // lambda(A^r B^r A^r) = sigma^2(A^r B^{r/2}), both evaluated in graded
  // form: the powered triple products themselves can be too
  // ill-conditioned to assemble (their condition numbers multiply), while
  // the graded route keeps every singular value accurate. At r = 1 the two
  // sides are then computed from bitwise-identical scalings, so the
  // equality case really lands on slack 0.
  const EigenDecomposition a_eig = hermitian_eig(a.hermitian());
  const EigenDecomposition b_eig = hermitian_eig(b.hermitian());
  const ComplexMatrix core = ComplexMatrix(DenseMatrix(
      a_eig.basis.entries().adjoint() * b_eig.basis.entries()));
  const SpectrumVector sigma_one = graded_singular_values(
      a_eig.eigenvalues, core, entrywise_power(b_eig.eigenvalues, 0.5),
      GradedPrecision::High);
  const SpectrumVector sigma_r = graded_singular_values(
      entrywise_power(a_eig.eigenvalues, r), core,
      entrywise_power(b_eig.eigenvalues, 0.5 * r), GradedPrecision::High);
  const RealVector s_one = entrywise_power(sigma_one.values(), 2.0 * r * p);
  const RealVector s_r = entrywise_power(sigma_r.values(), 2.0 * p);
  InequalityParams params;
  params.p = p;
  params.r = r;
  if (r == 1.0) {
    // Both sides are (ABA)^p; compare the prefix log-sums two-sided.
    const RealVector logs_one = prefix_log_sums(s_one);
    const RealVector logs_r = prefix_log_sums(s_r);
    CheckVerdict verdict =
        two_sided_verdict("sandwich", params, logs_one, logs_r, tolerance);
    return verdict;
  }
  if (r > 1.0) {
    return log_verdict("sandwich", params, s_one, s_r,
                       DominanceMode::WeakLog, tolerance);
  }
  return log_verdict("sandwich", params, s_r, s_one, DominanceMode::WeakLog,
                     tolerance);
}

CheckVerdict check_ando_hiai(const PositiveDefiniteMatrix& a,
                             const PositiveDefiniteMatrix& b, MeanWeight t,
                             double r, double tolerance) {
  if (!(r >= 1.0) || !std::isfinite(r)) {
    throw ParamOutOfRange("the power-mean comparison needs r >= 1");
  }
  require_same_dim(a, b);
  // lambda(A^s #_t B^s) without forming the powered operands, whose
  // condition numbers multiply out of the double-precision envelope:
  // with K = A^{-s/2} B^{s/2} = W Sigma V^* it holds that
  // A^s #_t B^s = A^{s/2} (K K^*)^t A^{s/2} = G G^* for
  // G = A^{s/2} W Sigma^t, and in the eigenbases of A and B both K and G
  // are graded products, so every eigenvalue stays relatively accurate.
  const EigenDecomposition a_eig = hermitian_eig(a.hermitian());
  const EigenDecomposition b_eig = hermitian_eig(b.hermitian());
  const ComplexMatrix core = ComplexMatrix(DenseMatrix(
      a_eig.basis.entries().adjoint() * b_eig.basis.entries()));
  const auto mean_of_powers_eigenvalues = [&](double s) {
    const GradedSvd k = graded_svd(
        entrywise_power(a_eig.eigenvalues, -0.5 * s), core,
        entrywise_power(b_eig.eigenvalues, 0.5 * s), GradedPrecision::High);
    const SpectrumVector sigma = graded_singular_values(
        entrywise_power(a_eig.eigenvalues, 0.5 * s), k.left_basis,
        entrywise_power(k.singular_values.values(), t.value()),
        GradedPrecision::High);
    return entrywise_power(sigma.values(), 2.0);
  };
  const RealVector lhs = mean_of_powers_eigenvalues(r);
  const RealVector rhs = entrywise_power(mean_of_powers_eigenvalues(1.0), r);

  InequalityParams params;
  params.t = t.value();
  params.r = r;
  return log_verdict("ando_hiai", params, lhs, rhs, DominanceMode::Log,
                     tolerance);
}

CheckVerdict check_weyl(const ComplexMatrix& m, double p, double tolerance) {
  if (!(p >= 0.0) || !std::isfinite(p)) {
    throw ParamOutOfRange("p must be nonnegative");
  }
  Eigen::ComplexEigenSolver<DenseMatrix> solver(m.entries(), false);
  if (solver.info() != Eigen::Success) {
    throw NumericalFailure("eigenvalue iteration did not converge");
  }
  RealVector moduli = solver.eigenvalues().cwiseAbs();
  std::sort(moduli.begin(), moduli.end(), std::greater<double>());
  const RealVector lhs = entrywise_power(moduli, p);
  const RealVector rhs = entrywise_power(singular_values(m).values(), p);

  InequalityParams params;
  params.p = p;
  return weak_verdict("weyl", params, lhs, rhs, tolerance);
}

CheckVerdict check_sv_product(const ComplexMatrix& a, const ComplexMatrix& b,
                              double p, double tolerance) {
  if (!(p > 0.0) || !std::isfinite(p)) {
    throw ParamOutOfRange("p must be positive");
  }
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("operands have different dimensions");
  }
  const RealVector lhs =
      entrywise_power(singular_values(a * b).values(), p);
  const RealVector product =
      singular_values(a).values().cwiseProduct(singular_values(b).values());
  const RealVector rhs = entrywise_power(product, p);

  InequalityParams params;
  params.p = p;
  return weak_verdict("sv_product", params, lhs, rhs, tolerance);
}

ProofChainTrace main_theorem_chain_trace(const MatrixTuple& tuple, double p,
                                         double r, double tolerance) {
  if (tuple.m() != 2) {
    throw ParamOutOfRange("the proof chain needs exactly two pairs");
  }
  if (!(p >= 1.0) || !(r >= 1.0)) {
    throw ParamOutOfRange("the proof chain is valid for p >= 1, r >= 1");
  }
  const Index n = tuple.dim();
  const PositiveDefiniteMatrix& a = tuple.as()[0];
  const PositiveDefiniteMatrix& b = tuple.bs()[0];
  const PositiveDefiniteMatrix& c = tuple.as()[1];
  const PositiveDefiniteMatrix& d = tuple.bs()[1];

  const StatementSides sides =
      squared_mean_sides(tuple, MeanWeight(0.5), p, r);

  const PositiveDefiniteMatrix a2 = positive_definite(a.matrix() * a.matrix());
  const PositiveDefiniteMatrix b2 = positive_definite(b.matrix() * b.matrix());
  const PositiveDefiniteMatrix c2 = positive_definite(c.matrix() * c.matrix());
  const PositiveDefiniteMatrix d2 = positive_definite(d.matrix() * d.matrix());
  const HermitianMatrix mean_sum = hermitize(
      geometric_mean(a2, b2).matrix() + geometric_mean(c2, d2).matrix());
  const ComplexMatrix u = unitary_factor(a2, b2);
  const ComplexMatrix w = unitary_factor(c2, d2);

  const ComplexMatrix root_a = matrix_power(a.hermitian(), 0.5).matrix();
  const ComplexMatrix root_b = matrix_power(b.hermitian(), 0.5).matrix();
  const ComplexMatrix root_c = matrix_power(c.hermitian(), 0.5).matrix();
  const ComplexMatrix root_d = matrix_power(d.hermitian(), 0.5).matrix();
  const ComplexMatrix zero = ComplexMatrix::zero(n);

  const ComplexMatrix half_blocks =
      direct_sum(root_a * u * root_b, root_c * w * root_d);
  const ComplexMatrix left_factor = block_2x2(root_a, root_c, zero, zero);
  const ComplexMatrix right_factor = block_2x2(root_b, zero, root_d, zero);
  const ComplexMatrix tail_product = right_factor * left_factor;
  const ComplexMatrix full_blocks = direct_sum(
      a.matrix() * u * b.matrix(), c.matrix() * w * d.matrix());

  const RealVector lhs_prefix =
      prefix_sums(padded(sides.lhs_spectrum, 2 * n));
  const RealVector rhs_prefix =
      prefix_sums(padded(sides.rhs_spectrum, 2 * n));
  const RealVector mean_sum_prefix = prefix_sums(entrywise_power(
      padded(singular_values(mean_sum.matrix()), 2 * n), r));
  const RealVector swapped_prefix = prefix_sums(entrywise_power(
      singular_values(half_blocks * tail_product).values(), r));
  const RealVector s_half = singular_values(half_blocks).values();
  const RealVector s_tail = singular_values(tail_product).values();
  const RealVector split_prefix = prefix_sums(
      entrywise_power(s_half, r).cwiseProduct(entrywise_power(s_tail, r)));
  const RealVector half_2r_prefix =
      prefix_sums(entrywise_power(s_half, 2.0 * r));
  const RealVector tail_2r_prefix =
      prefix_sums(entrywise_power(s_tail, 2.0 * r));
  const RealVector full_r_prefix =
      prefix_sums(entrywise_power(singular_values(full_blocks).values(), r));

  const Index total = 2 * n;
  auto vec = [total](auto&& f) {
    std::vector<double> out(static_cast<size_t>(total));
    for (Index k = 0; k < total; ++k) out[static_cast<size_t>(k)] = f(k);
    return out;
  };

  // Stored from the outermost bound down to the left-hand side, so the
  // values are nonincreasing at every rank.
  ProofChainTrace trace;
  trace.steps.push_back(
      {"direct_sum_collapse", vec([&](Index k) {
         return std::sqrt(lhs_prefix[k]) * std::sqrt(rhs_prefix[k]);
       })});
  trace.steps.push_back(
      {"mean_halving_bound", vec([&](Index k) {
         return std::sqrt(full_r_prefix[k]) * std::sqrt(rhs_prefix[k]);
       })});
  trace.steps.push_back(
      {"sandwich_power_bound", vec([&](Index k) {
         return std::sqrt(half_2r_prefix[k]) * std::sqrt(rhs_prefix[k]);
       })});
  trace.steps.push_back(
      {"cauchy_schwarz", vec([&](Index k) {
         return std::sqrt(half_2r_prefix[k]) * std::sqrt(tail_2r_prefix[k]);
       })});
  trace.steps.push_back(
      {"product_singular_values",
       vec([&](Index k) { return split_prefix[k]; })});
  trace.steps.push_back(
      {"normal_product_swap", vec([&](Index k) { return swapped_prefix[k]; })});
  trace.steps.push_back(
      {"subadditive_power", vec([&](Index k) { return mean_sum_prefix[k]; })});
  trace.steps.push_back(
      {"lhs_power_sum", vec([&](Index k) { return lhs_prefix[k]; })});

  trace.monotone = true;
  trace.max_violation = 0.0;
  for (size_t step = 1; step < trace.steps.size(); ++step) {
    const auto& upper = trace.steps[step - 1].values;
    const auto& lower = trace.steps[step].values;
    for (Index k = 0; k < total; ++k) {
      const double excess =
          (lower[static_cast<size_t>(k)] - upper[static_cast<size_t>(k)]) /
          std::max(1.0, std::abs(upper[static_cast<size_t>(k)]));
      trace.max_violation = std::max(trace.max_violation, excess);
    }
  }
  trace.monotone = trace.max_violation <= tolerance;
  return trace;
}

}  // namespace meanforge
