#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "meanforge/inequalities.hpp"
#include "meanforge/matrix.hpp"
#include "meanforge/sampling.hpp"

namespace meanforge {

/// Verify runs proven statements and treats any violation as a defect
/// (exit code 1). Search runs conjectural statements, refines
/// near-violations with a local climber, and reports findings (exit 0).
enum class CampaignMode { Verify, Search };

enum class ReportFormat { Json, Csv };

/// Parameter grids crossed with the dimension list to form cells. Axes a
/// statement does not read are pinned to one canonical value, and grid
/// values outside a statement's hypotheses are skipped, so the cell count
/// varies per statement.
struct ParamGrids {
  std::vector<double> t{0.0, 0.25, 0.5, 0.75, 1.0};
  std::vector<double> p{0.5, 1.0, 2.0, 3.0};
  std::vector<double> r{1.0, 1.5, 2.0, 3.0};
  std::vector<int> m{1, 2, 3, 4};
};

struct CampaignConfig {
  CampaignMode mode = CampaignMode::Verify;
  /// Statement ids to run; the single entry "all" expands to every
  /// statement admissible in the mode.
  std::vector<std::string> statements{"all"};
  std::vector<Index> dims{2, 3, 5, 8};
  /// Instances per (statement, dim, grid cell).
  int count = 1;
  ParamGrids grids;
  /// Campaign seed and spectrum bounds; the dim field is overridden per
  /// work item.
  SamplerConfig sampler;
  double tolerance = kInequalityTolerance;
  /// Slack below which an instance is recorded (and, in Search mode,
  /// refined by the local climber).
  double near_violation_threshold = 1e-4;
  /// Empty writes no file; the report is still returned in memory.
  std::string output_path;
  ReportFormat format = ReportFormat::Json;
  /// 0 uses the hardware concurrency. Has no effect on report bytes.
  int workers = 0;
  /// Include every per-instance record in the JSON report (CSV always
  /// lists all instances).
  bool verbose = false;

  /// Throws ConfigError on unknown statements, statements inadmissible in
  /// the mode, empty statement/dim lists, nonpositive count, or grids that
  /// leave a requested statement with zero admissible cells.
  void validate() const;
};

/// Outcome of one sampled instance. `seed` is the derived per-instance
/// seed: replaying it with the same statement, dim, and params rebuilds
/// the instance bit-exactly.
struct InstanceRecord {
  std::string statement_id;
  Index dim = 0;
  InequalityParams params;
  std::uint64_t index = 0;
  std::uint64_t seed = 0;
  double min_slack = std::numeric_limits<double>::quiet_NaN();
  bool holds = true;
  bool failed = false;
  std::string failure_reason;
  /// Violation within 100x tolerance of zero: too close to the noise
  /// floor to call.
  bool inconclusive = false;
  /// Search refinement, present when the climber ran: slacks of the
  /// accepted steps, ending at the refined minimum.
  std::optional<std::vector<double>> trajectory;
  double refined_slack = std::numeric_limits<double>::quiet_NaN();
};

struct StatementSummary {
  std::string statement_id;
  std::uint64_t instances_run = 0;
  std::uint64_t failures = 0;
  double min_slack = std::numeric_limits<double>::infinity();
  std::uint64_t min_slack_seed = 0;
  std::vector<InstanceRecord> violations;
  std::vector<InstanceRecord> near_violations;
};

struct CampaignReport {
  CampaignConfig config;
  std::string rng_algorithm_version{kRngAlgorithmVersion};
  std::vector<StatementSummary> statements;
  std::uint64_t total_instances = 0;
  std::uint64_t total_violations = 0;
  std::uint64_t total_near_violations = 0;
  std::uint64_t total_failures = 0;
  /// Every instance in work order; emitted into JSON only under verbose,
  /// into CSV always.
  std::vector<InstanceRecord> instances;
};

struct CampaignOutcome {
  CampaignReport report;
  /// 0 done (findings included); 1 proven-statement violation (Verify);
  /// 2 never (config errors throw ConfigError instead); 3 numerical
  /// failure rate above 1%.
  int exit_code = 0;
};

/// Exit code a thrown ConfigError maps to at the process boundary.
inline constexpr int kConfigErrorExit = 2;

/// Runs the campaign: pre-enumerates work items, evaluates them on a
/// worker pool, reduces in index order (bytes independent of worker
/// count), and writes the report atomically when output_path is set.
CampaignOutcome run_campaign(const CampaignConfig& config);

/// Matrices behind one instance. Tuple statements fill as/bs; function-sum
/// statements fill as only; weyl and sv_product fill raw (general square
/// matrices).
struct StatementInputs {
  std::vector<PositiveDefiniteMatrix> as;
  std::vector<PositiveDefiniteMatrix> bs;
  std::vector<ComplexMatrix> raw;
};

/// Rebuilds the inputs for (statement_id, dim, params, seed) exactly as
/// the campaign sampled them.
StatementInputs sample_statement_inputs(const std::string& statement_id,
                                        Index dim,
                                        const InequalityParams& params,
                                        const SamplerConfig& sampler,
                                        std::uint64_t seed);

/// One or two verdicts (the commuting chain yields two).
struct StatementEvaluation {
  std::vector<CheckVerdict> verdicts;
  double min_slack = std::numeric_limits<double>::infinity();
  bool holds = true;
};

StatementEvaluation evaluate_statement(const std::string& statement_id,
                                       const StatementInputs& inputs,
                                       const InequalityParams& params,
                                       double tolerance);

struct ReplayRequest {
  std::string statement_id;
  Index dim = 2;
  InequalityParams params;
  std::uint64_t seed = 0;
  SamplerConfig sampler;
  double tolerance = kInequalityTolerance;
};

struct ReplayResult {
  ReplayRequest request;
  StatementInputs inputs;
  StatementEvaluation evaluation;
  /// Filled for main_theorem only.
  std::optional<ProofChainTrace> chain;
};

/// Regenerates one instance bit-exactly from its derived seed and
/// re-evaluates it.
ReplayResult replay_instance(const ReplayRequest& request);

/// Grid cells admissible for a statement, in deterministic enumeration
/// order. Exposed for tests; run_campaign uses the same enumeration.
std::vector<InequalityParams> admissible_cells(const std::string& statement_id,
                                               const ParamGrids& grids);

/// Statements a mode may run: proven ones for Verify, conjectural ones
/// for Search.
std::vector<std::string> statements_for_mode(CampaignMode mode);

}  // namespace meanforge
