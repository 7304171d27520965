#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "meanforge/matrix.hpp"
#include "meanforge/means.hpp"

namespace meanforge {

/// Default relative tolerance for inequality verdicts. A proven statement
/// failing at this tolerance is a bug, not a finding.
inline constexpr double kInequalityTolerance = 1e-8;

/// Statement parameters (m, t, p, r). Base sanity lives here; each check
/// enforces its own hypothesis region (ParamOutOfRange).
struct InequalityParams {
  int m = 2;
  double t = 0.5;
  double p = 1.0;
  double r = 1.0;

  void validate() const;
};

/// Matched tuples (A_1..A_m, B_1..B_m) of same-dim positive definite
/// matrices.
class MatrixTuple {
 public:
  MatrixTuple(std::vector<PositiveDefiniteMatrix> as,
              std::vector<PositiveDefiniteMatrix> bs);

  int m() const { return static_cast<int>(as_.size()); }
  Index dim() const { return as_.front().dim(); }
  const std::vector<PositiveDefiniteMatrix>& as() const { return as_; }
  const std::vector<PositiveDefiniteMatrix>& bs() const { return bs_; }

 private:
  std::vector<PositiveDefiniteMatrix> as_;
  std::vector<PositiveDefiniteMatrix> bs_;
};

/// Outcome of one inequality check.
///
/// lhs_values / rhs_values are the compared functionals per index (Ky Fan
/// prefix sums, prefix log-sums, or a single norm value depending on the
/// statement); slacks are (rhs - lhs) / max(1, rhs) per index for additive
/// comparisons, log-sum differences for multiplicative ones, and
/// -|lhs - rhs| (scaled) for exact identities. holds <=> min slack >=
/// -tolerance.
struct CheckVerdict {
  std::string statement_id;
  InequalityParams params;
  std::vector<double> lhs_values;
  std::vector<double> rhs_values;
  std::vector<double> slacks;
  bool holds = true;
  bool is_proven_statement = false;

  double min_slack() const;
};

/// Both links of a two-step chain (left: first <= middle, right: middle <=
/// last).
struct ChainVerdict {
  CheckVerdict left;
  CheckVerdict right;
};

enum class FunctionShape { Convex, Concave };

/// All wire-visible statement ids.
const std::vector<std::string>& all_statement_ids();
bool is_known_statement(std::string_view id);
/// Proven statements must never produce violations; the two conjectures are
/// report-only.
bool is_proven_statement(std::string_view id);

/// Singular-value spectra (sorted decreasing) of the two sides of a
/// statement. Both sides of every statement shape are produced by a single
/// shared routine so overlapping statements compare identical intermediates.
struct StatementSides {
  RealVector lhs_spectrum;
  RealVector rhs_spectrum;
};

/// Squared-mean family, shared by the main theorem (t = 1/2, m = 2), the
/// trace theorem (t = 1/2), and both conjectures:
///   lhs = sum_i (A_i^2 #_t B_i^2)^r
///   rhs = ((sum A)^{(1-t)pr} (sum B)^{2tpr} (sum A)^{(1-t)pr})^{1/p}
/// The rhs spectrum is evaluated through graded_singular_values, so it
/// stays accurate even when the powered triple product is too
/// ill-conditioned to assemble in floating point.
StatementSides squared_mean_sides(const MatrixTuple& tuple, MeanWeight t,
                                  double p, double r);

/// Plain-mean family:
///   lhs = sum_i (A_i #_t B_i)^r
///   rhs = ((sum A)^{(1-t)pr/2} (sum B)^{tpr} (sum A)^{(1-t)pr/2})^{1/p}
StatementSides mean_sum_sides(const MatrixTuple& tuple, MeanWeight t,
                              double p, double r);

/// Ky Fan sweep of the squared-mean statement at t = 1/2, m = 2 (proven
/// for p >= 1, r >= 1; ParamOutOfRange outside).
CheckVerdict check_main_theorem(const MatrixTuple& tuple, double p, double r,
                                double tolerance = kInequalityTolerance);

/// Ky Fan sweep of the squared-mean statement for general t, p > 0, r >= 1,
/// m >= 1. Conjectural: verdicts are findings, never assertions.
CheckVerdict check_conjecture(const MatrixTuple& tuple,
                              const InequalityParams& params,
                              double tolerance = kInequalityTolerance);

/// The m-sum special case (t = 1/2, p = 1, r = 1) of the conjecture.
CheckVerdict check_conjecture_m_sum(const MatrixTuple& tuple,
                                    double tolerance = kInequalityTolerance);

/// Trace-norm comparison of the squared-mean statement at t = 1/2
/// (proven for all p > 0, r >= 1).
CheckVerdict check_trace_theorem(const MatrixTuple& tuple, double p, double r,
                                 double tolerance = kInequalityTolerance);

/// Ky Fan sweep of the plain-mean statement (proven for t in [0,1], p > 0,
/// r >= 1).
CheckVerdict check_dinh(const MatrixTuple& tuple,
                        const InequalityParams& params,
                        double tolerance = kInequalityTolerance);

/// Two chained sweeps for commuting pairs:
///   s(sum A_iB_i) <=_w s(sum (A_i^{1/2}B_i^{1/2})^2)
///                 <=_w s((sum A)^{1/2} (sum B) (sum A)^{1/2}).
/// Throws NotCommuting if any pair fails the commutation precondition.
ChainVerdict check_commuting_chain(const MatrixTuple& tuple,
                                   double tolerance = kInequalityTolerance);

/// Function-sum comparison on PSD matrices.
/// Concave shape: s(f(sum M_i)) <=_w s(sum f(M_i)).
/// Convex shape (f(0) = 0 required): s(sum f(M_i)) <=_w s(f(sum M_i)).
CheckVerdict check_function_sum(const std::vector<HermitianMatrix>& matrices,
                                const std::function<double(double)>& f,
                                FunctionShape shape,
                                double tolerance = kInequalityTolerance);

/// Exact block identity: the squared singular values of
/// [[B^{1/2},0],[D^{1/2},0]] * [[A^{1/2},C^{1/2}],[0,0]] equal the spectrum
/// of (A+C)^{1/2}(B+D)(A+C)^{1/2} padded with zeros. Two-sided slack.
CheckVerdict check_block_identity(const PositiveDefiniteMatrix& a,
                                  const PositiveDefiniteMatrix& b,
                                  const PositiveDefiniteMatrix& c,
                                  const PositiveDefiniteMatrix& d,
                                  double tolerance = kInequalityTolerance);

/// Sandwich power comparison in weak-log majorization; the direction flips
/// at r = 1 (r >= 1: s((ABA)^{rp}) <=_wlog s((A^rB^rA^r)^p); r <= 1:
/// reversed; r = 1: equality, checked two-sided). Requires p > 0, r > 0.
CheckVerdict check_sandwich_lemmas(const PositiveDefiniteMatrix& a,
                                   const PositiveDefiniteMatrix& b, double p,
                                   double r,
                                   double tolerance = kInequalityTolerance);

/// Log-majorization (with product equality) of eig(A^r #_t B^r) by
/// eig((A #_t B)^r) for r >= 1.
CheckVerdict check_ando_hiai(const PositiveDefiniteMatrix& a,
                             const PositiveDefiniteMatrix& b, MeanWeight t,
                             double r,
                             double tolerance = kInequalityTolerance);

/// Weak majorization of |eig(M)|^p by s(M)^p for any square M, p >= 0.
CheckVerdict check_weyl(const ComplexMatrix& m, double p,
                        double tolerance = kInequalityTolerance);

/// Weak majorization of s(AB)^p by the entrywise product s(A)^p s(B)^p,
/// p > 0.
CheckVerdict check_sv_product(const ComplexMatrix& a, const ComplexMatrix& b,
                              double p,
                              double tolerance = kInequalityTolerance);

/// One evaluated step of the main theorem's proof chain: the displayed
/// quantity as a vector over Ky Fan ranks k = 1..2n.
struct ProofChainStep {
  std::string label;
  std::vector<double> values;
};

/// Numerically evaluated proof chain of the main theorem. Consecutive steps
/// must be nondecreasing (per rank) up to the tolerance.
struct ProofChainTrace {
  std::vector<ProofChainStep> steps;
  bool monotone = true;
  double max_violation = 0.0;
};

ProofChainTrace main_theorem_chain_trace(
    const MatrixTuple& tuple, double p, double r,
    double tolerance = kInequalityTolerance);

}  // namespace meanforge
