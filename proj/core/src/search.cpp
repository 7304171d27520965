#include "meanforge/search.hpp"

#include <Eigen/Cholesky>

#include <cmath>
#include <cstddef>
#include <utility>

#include "meanforge/errors.hpp"
#include "meanforge/linalg.hpp"

namespace meanforge {

namespace {

// One tunable scalar inside a Cholesky factor: the real diagonal entry or
// the real/imaginary part of a strictly-lower entry.
struct Coordinate {
  std::size_t factor = 0;
  Index row = 0;
  Index col = 0;
  bool imaginary = false;
};

std::vector<DenseMatrix> cholesky_factors(
    const std::vector<PositiveDefiniteMatrix>& as,
    const std::vector<PositiveDefiniteMatrix>& bs) {
  std::vector<DenseMatrix> factors;
  factors.reserve(as.size() + bs.size());
  auto push = [&factors](const PositiveDefiniteMatrix& m) {
    Eigen::LLT<Eigen::MatrixXcd> llt(m.matrix().entries());
    if (llt.info() != Eigen::Success)
      throw NumericalFailure("Cholesky factorization failed");
    factors.emplace_back(llt.matrixL());
  };
  for (const auto& a : as) push(a);
  for (const auto& b : bs) push(b);
  return factors;
}

std::vector<Coordinate> enumerate_coordinates(
    const std::vector<DenseMatrix>& factors) {
  std::vector<Coordinate> coords;
  for (std::size_t f = 0; f < factors.size(); ++f) {
    const Index n = factors[f].rows();
    for (Index i = 0; i < n; ++i) coords.push_back({f, i, i, false});
    for (Index i = 1; i < n; ++i)
      for (Index j = 0; j < i; ++j) {
        coords.push_back({f, i, j, false});
        coords.push_back({f, i, j, true});
      }
  }
  return coords;
}

// Returns the previous entry so a rejected trial can be undone exactly
// (multiplying back by 1/multiplier would leave rounding drift).
Complex scale_coordinate(DenseMatrix& factor, const Coordinate& c,
                         double multiplier) {
  const Complex old = factor(c.row, c.col);
  Complex value = old;
  if (c.imaginary)
    value.imag(value.imag() * multiplier);
  else
    value.real(value.real() * multiplier);
  factor(c.row, c.col) = value;
  return old;
}

StatementInputs rebuild_inputs(const StatementInputs& original,
                               const std::vector<DenseMatrix>& factors) {
  StatementInputs out;
  out.raw = original.raw;
  const std::size_t na = original.as.size();
  for (std::size_t i = 0; i < factors.size(); ++i) {
    DenseMatrix product = factors[i] * factors[i].adjoint();
    PositiveDefiniteMatrix pd(hermitize(ComplexMatrix(std::move(product))));
    if (i < na)
      out.as.push_back(std::move(pd));
    else
      out.bs.push_back(std::move(pd));
  }
  return out;
}

}  // namespace

RefinementResult refine_violation(const std::string& statement_id,
                                  const StatementInputs& inputs,
                                  const InequalityParams& params,
                                  double tolerance) {
  RefinementResult result;
  StatementEvaluation baseline =
      evaluate_statement(statement_id, inputs, params, tolerance);
  result.initial_slack = baseline.min_slack;
  result.final_slack = baseline.min_slack;
  result.trajectory.push_back(baseline.min_slack);

  std::vector<DenseMatrix> factors =
      cholesky_factors(inputs.as, inputs.bs);
  const std::vector<Coordinate> coords = enumerate_coordinates(factors);
  if (coords.empty()) return result;

  double best = baseline.min_slack;
  double step = kRefinementInitialStep;
  int trials = 0;
  std::size_t position = 0;       // round-robin cursor over (coord, sign)
  std::size_t since_accept = 0;   // trials since the last improvement
  const std::size_t cycle = coords.size() * 2;

  while (trials < kRefinementTrials && step >= kRefinementMinStep) {
    const Coordinate& c = coords[position / 2];
    const double multiplier =
        position % 2 == 0 ? 1.0 + step : 1.0 - step;
    position = (position + 1) % cycle;
    ++trials;
    ++since_accept;

    const Complex saved = scale_coordinate(factors[c.factor], c, multiplier);
    bool accepted = false;
    try {
      StatementInputs candidate = rebuild_inputs(inputs, factors);
      StatementEvaluation eval =
          evaluate_statement(statement_id, candidate, params, tolerance);
      if (std::isfinite(eval.min_slack) && eval.min_slack < best) {
        best = eval.min_slack;
        result.trajectory.push_back(best);
        accepted = true;
      }
    } catch (const Error&) {
      // Domain or convergence failure: the perturbation left the
      // admissible region, undo and move on.
    }
    if (accepted) {
      since_accept = 0;
    } else {
      factors[c.factor](c.row, c.col) = saved;
      if (since_accept >= cycle) {
        step *= 0.5;
        since_accept = 0;
      }
    }
  }

  result.final_slack = best;
  return result;
}

}  // namespace meanforge
