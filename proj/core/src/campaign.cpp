#include "meanforge/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <set>
#include <thread>
#include <utility>

#include "meanforge/errors.hpp"
#include "meanforge/json_io.hpp"
#include "meanforge/means.hpp"
#include "meanforge/search.hpp"

namespace meanforge {

namespace {

// How a statement consumes the parameter grid. An inactive axis is pinned
// to one canonical value (the axis does not appear in the statement's
// hypotheses); an active axis takes every grid value passing the
// admissibility predicate.
struct AxisPlan {
  bool active = false;
  double pinned = 0.0;
  bool (*admits)(double) = nullptr;
};

bool unit_interval(double t) { return t >= 0.0 && t <= 1.0; }
bool positive(double x) { return std::isfinite(x) && x > 0.0; }
bool nonnegative(double x) { return std::isfinite(x) && x >= 0.0; }
bool at_least_one(double x) { return std::isfinite(x) && x >= 1.0; }
bool concave_power(double x) { return positive(x) && x <= 1.0; }

struct StatementPlan {
  bool m_active = false;
  int m_pinned = 1;
  AxisPlan t, p, r;
};

StatementPlan plan_for(const std::string& id) {
  StatementPlan plan;
  auto pin = [](double v) { return AxisPlan{false, v, nullptr}; };
  auto axis = [](bool (*f)(double)) { return AxisPlan{true, 0.0, f}; };
  if (id == "main_theorem") {
    plan.m_pinned = 2;
    plan.t = pin(0.5);
    plan.p = axis(at_least_one);
    plan.r = axis(at_least_one);
  } else if (id == "conjecture_general") {
    plan.m_active = true;
    plan.t = axis(unit_interval);
    plan.p = axis(positive);
    plan.r = axis(at_least_one);
  } else if (id == "conjecture_m_sum") {
    plan.m_active = true;
    plan.t = pin(0.5);
    plan.p = pin(1.0);
    plan.r = pin(1.0);
  } else if (id == "trace_theorem") {
    plan.m_active = true;
    plan.t = pin(0.5);
    plan.p = axis(positive);
    plan.r = axis(at_least_one);
  } else if (id == "dinh") {
    plan.m_active = true;
    plan.t = axis(unit_interval);
    plan.p = axis(positive);
    plan.r = axis(at_least_one);
  } else if (id == "audenaert_chain") {
    plan.m_active = true;
    plan.t = pin(0.5);
    plan.p = pin(1.0);
    plan.r = pin(1.0);
  } else if (id == "bourin_uchiyama") {
    plan.m_active = true;
    plan.t = pin(0.5);
    plan.p = axis(concave_power);
    plan.r = pin(1.0);
  } else if (id == "convex_sum") {
    plan.m_active = true;
    plan.t = pin(0.5);
    plan.p = axis(at_least_one);
    plan.r = pin(1.0);
  } else if (id == "block_identity") {
    plan.m_pinned = 2;
    plan.t = pin(0.5);
    plan.p = pin(1.0);
    plan.r = pin(1.0);
  } else if (id == "sandwich") {
    plan.t = pin(0.5);
    plan.p = axis(positive);
    plan.r = axis(positive);
  } else if (id == "ando_hiai") {
    plan.t = axis(unit_interval);
    plan.p = pin(1.0);
    plan.r = axis(at_least_one);
  } else if (id == "weyl") {
    plan.t = pin(0.5);
    plan.p = axis(nonnegative);
    plan.r = pin(1.0);
  } else if (id == "sv_product") {
    plan.t = pin(0.5);
    plan.p = axis(positive);
    plan.r = pin(1.0);
  } else {
    throw ConfigError("unknown statement id: " + id);
  }
  return plan;
}

std::vector<double> axis_values(const AxisPlan& axis,
                                const std::vector<double>& grid) {
  if (!axis.active) return {axis.pinned};
  std::vector<double> out;
  for (double v : grid)
    if (axis.admits(v)) out.push_back(v);
  return out;
}

std::vector<std::string> expand_statements(const CampaignConfig& config) {
  if (config.statements.size() == 1 && config.statements[0] == "all")
    return statements_for_mode(config.mode);
  return config.statements;
}

struct WorkItem {
  std::string statement_id;
  Index dim = 0;
  InequalityParams params;
  std::uint64_t index = 0;
  std::uint64_t seed = 0;
};

std::vector<WorkItem> enumerate_work(const CampaignConfig& config) {
  std::vector<WorkItem> items;
  std::uint64_t index = 0;
  for (const std::string& id : expand_statements(config)) {
    for (Index dim : config.dims) {
      for (const InequalityParams& cell :
           admissible_cells(id, config.grids)) {
        for (int j = 0; j < config.count; ++j) {
          WorkItem item;
          item.statement_id = id;
          item.dim = dim;
          item.params = cell;
          item.index = index;
          item.seed = derive_instance_seed(config.sampler.seed, index);
          items.push_back(std::move(item));
          ++index;
        }
      }
    }
  }
  return items;
}

double effective_slack(const InstanceRecord& record) {
  if (record.trajectory && std::isfinite(record.refined_slack))
    return std::min(record.min_slack, record.refined_slack);
  return record.min_slack;
}

InstanceRecord evaluate_work_item(const WorkItem& item,
                                  const CampaignConfig& config) {
  InstanceRecord record;
  record.statement_id = item.statement_id;
  record.dim = item.dim;
  record.params = item.params;
  record.index = item.index;
  record.seed = item.seed;
  try {
    StatementInputs inputs = sample_statement_inputs(
        item.statement_id, item.dim, item.params, config.sampler, item.seed);
    StatementEvaluation eval = evaluate_statement(
        item.statement_id, inputs, item.params, config.tolerance);
    record.min_slack = eval.min_slack;
    record.holds = eval.holds;
    if (config.mode == CampaignMode::Search &&
        eval.min_slack < config.near_violation_threshold) {
      RefinementResult refined = refine_violation(
          item.statement_id, inputs, item.params, config.tolerance);
      record.trajectory = refined.trajectory;
      record.refined_slack = refined.final_slack;
    }
    double slack = effective_slack(record);
    bool violated = slack < -config.tolerance;
    if (violated) {
      record.holds = false;
      record.inconclusive = std::abs(slack) < 100.0 * config.tolerance;
    }
  } catch (const Error& e) {
    record.failed = true;
    record.failure_reason = e.what();
    record.holds = true;  // nothing observed
  } catch (const std::exception& e) {
    record.failed = true;
    record.failure_reason = std::string("unexpected: ") + e.what();
    record.holds = true;
  }
  return record;
}

int resolve_workers(int configured) {
  if (const char* env = std::getenv("MEANFORGE_WORKERS")) {
    char* end = nullptr;
    long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0 && n <= 1024)
      return static_cast<int>(n);
  }
  if (configured > 0) return configured;
  unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace

std::vector<std::string> statements_for_mode(CampaignMode mode) {
  std::vector<std::string> out;
  for (std::string_view id : all_statement_ids()) {
    const bool proven = is_proven_statement(id);
    if ((mode == CampaignMode::Verify) == proven)
      out.emplace_back(id);
  }
  return out;
}

std::vector<InequalityParams> admissible_cells(const std::string& statement_id,
                                               const ParamGrids& grids) {
  const StatementPlan plan = plan_for(statement_id);
  std::vector<int> ms;
  if (plan.m_active) {
    for (int m : grids.m)
      if (m >= 1) ms.push_back(m);
  } else {
    ms.push_back(plan.m_pinned);
  }
  const std::vector<double> ts = axis_values(plan.t, grids.t);
  const std::vector<double> ps = axis_values(plan.p, grids.p);
  const std::vector<double> rs = axis_values(plan.r, grids.r);
  std::vector<InequalityParams> cells;
  for (double t : ts)
    for (double p : ps)
      for (double r : rs)
        for (int m : ms) {
          InequalityParams params;
          params.m = m;
          params.t = t;
          params.p = p;
          params.r = r;
          cells.push_back(params);
        }
  return cells;
}

void CampaignConfig::validate() const {
  if (statements.empty())
    throw ConfigError("statement list is empty");
  if (count < 1) throw ConfigError("count must be at least 1");
  if (dims.empty()) throw ConfigError("dimension list is empty");
  for (Index d : dims)
    if (d < 1)
      throw ConfigError("dimensions must be at least 1, got " +
                        std::to_string(d));
  if (!(std::isfinite(tolerance)) || tolerance <= 0.0)
    throw ConfigError("tolerance must be positive");
  if (!(std::isfinite(near_violation_threshold)) ||
      near_violation_threshold < 0.0)
    throw ConfigError("near_violation_threshold must be nonnegative");
  if (workers < 0) throw ConfigError("workers must be nonnegative");
  sampler.validate();
  for (std::size_t i = 0; i < statements.size(); ++i)
    if (statements[i] == "all" && statements.size() > 1)
      throw ConfigError("\"all\" must be the only statement entry");
  const std::vector<std::string> expanded = expand_statements(*this);
  if (expanded.empty()) throw ConfigError("statement list is empty");
  std::set<std::string> seen;
  for (const std::string& id : expanded) {
    if (!is_known_statement(id))
      throw ConfigError("unknown statement id: " + id);
    if (!seen.insert(id).second)
      throw ConfigError("duplicate statement id: " + id);
    const bool proven = is_proven_statement(id);
    if (mode == CampaignMode::Verify && !proven)
      throw ConfigError("verify mode runs proven statements only; \"" + id +
                        "\" is conjectural (use search)");
    if (mode == CampaignMode::Search && proven)
      throw ConfigError("search mode runs conjectural statements only; \"" +
                        id + "\" is proven (use verify)");
    if (admissible_cells(id, grids).empty())
      throw ConfigError("statement \"" + id +
                        "\" has no admissible grid cells under the given "
                        "parameter grids");
  }
}

StatementInputs sample_statement_inputs(const std::string& statement_id,
                                        Index dim,
                                        const InequalityParams& params,
                                        const SamplerConfig& sampler,
                                        std::uint64_t seed) {
  if (!is_known_statement(statement_id))
    throw ConfigError("unknown statement id: " + statement_id);
  SamplerConfig local = sampler;
  local.dim = dim;
  local.validate();
  RngState rng(seed);
  StatementInputs inputs;
  const std::string& id = statement_id;
  // Draw order is part of the reproducibility contract: for paired
  // statements A_i is always drawn before B_i.
  if (id == "main_theorem" || id == "conjecture_general" ||
      id == "conjecture_m_sum" || id == "trace_theorem" || id == "dinh") {
    for (int i = 0; i < params.m; ++i) {
      inputs.as.push_back(random_pd(local, rng));
      inputs.bs.push_back(random_pd(local, rng));
    }
  } else if (id == "audenaert_chain") {
    for (int i = 0; i < params.m; ++i) {
      auto [a, b] = random_commuting_pair(local, rng);
      inputs.as.push_back(std::move(a));
      inputs.bs.push_back(std::move(b));
    }
  } else if (id == "bourin_uchiyama" || id == "convex_sum") {
    for (int i = 0; i < params.m; ++i)
      inputs.as.push_back(random_pd(local, rng));
  } else if (id == "block_identity") {
    for (int i = 0; i < 2; ++i) {
      inputs.as.push_back(random_pd(local, rng));
      inputs.bs.push_back(random_pd(local, rng));
    }
  } else if (id == "sandwich" || id == "ando_hiai") {
    inputs.as.push_back(random_pd(local, rng));
    inputs.bs.push_back(random_pd(local, rng));
  } else if (id == "weyl") {
    inputs.raw.push_back(random_ginibre(dim, rng));
  } else {  // sv_product
    inputs.raw.push_back(random_ginibre(dim, rng));
    inputs.raw.push_back(random_ginibre(dim, rng));
  }
  return inputs;
}

StatementEvaluation evaluate_statement(const std::string& statement_id,
                                       const StatementInputs& inputs,
                                       const InequalityParams& params,
                                       double tolerance) {
  StatementEvaluation out;
  const std::string& id = statement_id;
  if (id == "main_theorem") {
    MatrixTuple tuple(inputs.as, inputs.bs);
    out.verdicts.push_back(
        check_main_theorem(tuple, params.p, params.r, tolerance));
  } else if (id == "conjecture_general") {
    MatrixTuple tuple(inputs.as, inputs.bs);
    out.verdicts.push_back(check_conjecture(tuple, params, tolerance));
  } else if (id == "conjecture_m_sum") {
    MatrixTuple tuple(inputs.as, inputs.bs);
    out.verdicts.push_back(check_conjecture_m_sum(tuple, tolerance));
  } else if (id == "trace_theorem") {
    MatrixTuple tuple(inputs.as, inputs.bs);
    out.verdicts.push_back(
        check_trace_theorem(tuple, params.p, params.r, tolerance));
  } else if (id == "dinh") {
    MatrixTuple tuple(inputs.as, inputs.bs);
    out.verdicts.push_back(check_dinh(tuple, params, tolerance));
  } else if (id == "audenaert_chain") {
    MatrixTuple tuple(inputs.as, inputs.bs);
    ChainVerdict chain = check_commuting_chain(tuple, tolerance);
    out.verdicts.push_back(std::move(chain.left));
    out.verdicts.push_back(std::move(chain.right));
  } else if (id == "bourin_uchiyama" || id == "convex_sum") {
    std::vector<HermitianMatrix> matrices;
    matrices.reserve(inputs.as.size());
    for (const PositiveDefiniteMatrix& a : inputs.as)
      matrices.push_back(a.hermitian());
    const double p = params.p;
    auto f = [p](double x) { return std::pow(x, p); };
    const FunctionShape shape =
        id == "convex_sum" ? FunctionShape::Convex : FunctionShape::Concave;
    out.verdicts.push_back(check_function_sum(matrices, f, shape, tolerance));
  } else if (id == "block_identity") {
    out.verdicts.push_back(check_block_identity(
        inputs.as[0], inputs.bs[0], inputs.as[1], inputs.bs[1], tolerance));
  } else if (id == "sandwich") {
    out.verdicts.push_back(check_sandwich_lemmas(inputs.as[0], inputs.bs[0],
                                                 params.p, params.r,
                                                 tolerance));
  } else if (id == "ando_hiai") {
    out.verdicts.push_back(check_ando_hiai(inputs.as[0], inputs.bs[0],
                                           MeanWeight(params.t), params.r,
                                           tolerance));
  } else if (id == "weyl") {
    out.verdicts.push_back(check_weyl(inputs.raw[0], params.p, tolerance));
  } else if (id == "sv_product") {
    out.verdicts.push_back(
        check_sv_product(inputs.raw[0], inputs.raw[1], params.p, tolerance));
  } else {
    throw ConfigError("unknown statement id: " + id);
  }
  for (const CheckVerdict& v : out.verdicts) {
    out.min_slack = std::min(out.min_slack, v.min_slack());
    out.holds = out.holds && v.holds;
  }
  return out;
}

CampaignOutcome run_campaign(const CampaignConfig& config) {
  config.validate();
  const std::vector<WorkItem> items = enumerate_work(config);
  const int workers = resolve_workers(config.workers);
  const auto started = std::chrono::steady_clock::now();

  std::vector<InstanceRecord> records(items.size());
  std::atomic<std::size_t> cursor{0};
  auto drain = [&]() {
    for (;;) {
      const std::size_t i = cursor.fetch_add(1);
      if (i >= items.size()) return;
      records[i] = evaluate_work_item(items[i], config);
    }
  };
  if (workers <= 1 || items.size() <= 1) {
    drain();
  } else {
    std::vector<std::thread> pool;
    const int spawn = static_cast<int>(
        std::min<std::size_t>(static_cast<std::size_t>(workers),
                              items.size()));
    pool.reserve(static_cast<std::size_t>(spawn));
    for (int w = 0; w < spawn; ++w) pool.emplace_back(drain);
    for (std::thread& t : pool) t.join();
  }

  // Index-ordered reduction: the report never depends on completion order.
  CampaignOutcome outcome;
  CampaignReport& report = outcome.report;
  report.config = config;
  for (const std::string& id : expand_statements(config)) {
    StatementSummary summary;
    summary.statement_id = id;
    report.statements.push_back(std::move(summary));
  }
  auto summary_of = [&](const std::string& id) -> StatementSummary& {
    for (StatementSummary& s : report.statements)
      if (s.statement_id == id) return s;
    throw ConfigError("internal: no summary slot for " + id);
  };
  for (InstanceRecord& record : records) {
    StatementSummary& summary = summary_of(record.statement_id);
    summary.instances_run += 1;
    report.total_instances += 1;
    if (record.failed) {
      summary.failures += 1;
      report.total_failures += 1;
    } else {
      const double slack = effective_slack(record);
      if (slack < summary.min_slack) {
        summary.min_slack = slack;
        summary.min_slack_seed = record.seed;
      }
      if (!record.holds) {
        summary.violations.push_back(record);
        report.total_violations += 1;
      } else if (record.min_slack < config.near_violation_threshold) {
        summary.near_violations.push_back(record);
        report.total_near_violations += 1;
      }
    }
    report.instances.push_back(std::move(record));
  }

  const auto elapsed = std::chrono::duration<double>(
      std::chrono::steady_clock::now() - started);
  // Wall time is diagnostic only; it must never enter the report bytes.
  std::cerr << "campaign: " << report.total_instances << " instances in "
            << elapsed.count() << " s (" << workers << " worker"
            << (workers == 1 ? "" : "s") << ")\n";

  if (!config.output_path.empty())
    write_text_atomically(config.output_path,
                          render_report(report, config.format));

  if (report.total_instances > 0 &&
      static_cast<double>(report.total_failures) >
          0.01 * static_cast<double>(report.total_instances)) {
    outcome.exit_code = 3;
  } else if (config.mode == CampaignMode::Verify &&
             report.total_violations > 0) {
    outcome.exit_code = 1;
  }
  return outcome;
}

ReplayResult replay_instance(const ReplayRequest& request) {
  ReplayResult result;
  result.request = request;
  result.inputs = sample_statement_inputs(request.statement_id, request.dim,
                                          request.params, request.sampler,
                                          request.seed);
  result.evaluation = evaluate_statement(request.statement_id, result.inputs,
                                         request.params, request.tolerance);
  if (request.statement_id == "main_theorem") {
    MatrixTuple tuple(result.inputs.as, result.inputs.bs);
    result.chain = main_theorem_chain_trace(tuple, request.params.p,
                                            request.params.r,
                                            request.tolerance);
  }
  return result;
}

}  // namespace meanforge
