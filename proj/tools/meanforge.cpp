// Command-line front end: verification campaigns over proven statements,
// counterexample search over conjectural ones, and bit-exact replay of
// single instances from their derived seeds.
//
// Exit codes: 0 done (search findings included), 1 verified-statement
// violation, 2 usage or configuration error, 3 numerical-failure rate
// above 1% (or a replay that fails numerically).

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "meanforge/campaign.hpp"
#include "meanforge/errors.hpp"
#include "meanforge/json_io.hpp"

namespace {

using namespace meanforge;

struct CampaignFlags {
  std::string config_path;
  std::uint64_t seed = 0;
  std::vector<long long> dims;
  int count = 0;
  std::vector<std::string> statements;
  std::string out;
  std::string format;
  double tolerance = 0.0;
  double near_threshold = 0.0;
  bool verbose = false;
};

// Flags layer over the config file: file values (or defaults) apply
// unless the flag was given explicitly.
void add_campaign_options(CLI::App& cmd, CampaignFlags& flags) {
  cmd.add_option("--config", flags.config_path,
                 "JSON campaign config; explicit flags override it");
  cmd.add_option("--seed", flags.seed, "campaign seed");
  cmd.add_option("--dims", flags.dims, "matrix dimensions")
      ->delimiter(',');
  cmd.add_option("--count", flags.count, "instances per grid cell");
  cmd.add_option("--statements", flags.statements,
                 "statement ids, or \"all\" for every statement the mode "
                 "admits")
      ->delimiter(',');
  cmd.add_option("--out", flags.out, "report path (stdout when omitted)");
  cmd.add_option("--format", flags.format, "report format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd.add_option("--tolerance", flags.tolerance, "slack tolerance");
  cmd.add_option("--near-violation-threshold", flags.near_threshold,
                 "slack below which an instance is recorded (and refined "
                 "in search mode)");
  cmd.add_flag("--verbose", flags.verbose,
               "include every per-instance record in the JSON report");
}

CampaignConfig build_config(const CLI::App& cmd, const CampaignFlags& flags,
                            CampaignMode mode) {
  CampaignConfig config;
  if (!flags.config_path.empty())
    config = load_campaign_config(flags.config_path);
  config.mode = mode;  // the subcommand decides the mode
  if (cmd.count("--seed") > 0) config.sampler.seed = flags.seed;
  if (cmd.count("--dims") > 0) {
    config.dims.clear();
    for (long long d : flags.dims) config.dims.push_back(d);
  }
  if (cmd.count("--count") > 0) config.count = flags.count;
  if (cmd.count("--statements") > 0) config.statements = flags.statements;
  if (cmd.count("--out") > 0) config.output_path = flags.out;
  if (cmd.count("--format") > 0)
    config.format =
        flags.format == "csv" ? ReportFormat::Csv : ReportFormat::Json;
  if (cmd.count("--tolerance") > 0) config.tolerance = flags.tolerance;
  if (cmd.count("--near-violation-threshold") > 0)
    config.near_violation_threshold = flags.near_threshold;
  if (flags.verbose) config.verbose = true;
  return config;
}

int run_campaign_command(const CLI::App& cmd, const CampaignFlags& flags,
                         CampaignMode mode) {
  const CampaignConfig config = build_config(cmd, flags, mode);
  const CampaignOutcome outcome = run_campaign(config);
  if (config.output_path.empty())
    std::cout << render_report(outcome.report, config.format);
  if (outcome.exit_code == 1)
    std::cerr << "verify: " << outcome.report.total_violations
              << " violation(s) of proven statements\n";
  if (outcome.exit_code == 3)
    std::cerr << "campaign: numerical failure rate above 1% ("
              << outcome.report.total_failures << " of "
              << outcome.report.total_instances << ")\n";
  return outcome.exit_code;
}

struct ReplayFlags {
  std::vector<std::string> statements;
  std::uint64_t seed = 0;
  std::vector<long long> dims;
  InequalityParams params;
  double tolerance = kInequalityTolerance;
  double eig_min = SamplerConfig{}.eig_min;
  double eig_max = SamplerConfig{}.eig_max;
};

int run_replay_command(const ReplayFlags& flags) {
  if (flags.statements.size() != 1)
    throw ConfigError("replay needs exactly one statement id");
  if (flags.dims.size() != 1)
    throw ConfigError("replay needs exactly one dimension");
  ReplayRequest request;
  request.statement_id = flags.statements[0];
  request.dim = flags.dims[0];
  request.params = flags.params;
  request.seed = flags.seed;
  request.sampler.eig_min = flags.eig_min;
  request.sampler.eig_max = flags.eig_max;
  request.tolerance = flags.tolerance;
  const ReplayResult result = replay_instance(request);
  std::cout << replay_result_to_json(result).dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "meanforge: numerical verification and counterexample search for "
      "matrix geometric-mean inequalities"};
  app.require_subcommand(1);

  CampaignFlags verify_flags;
  CLI::App* verify =
      app.add_subcommand("verify", "run proven statements; violations are "
                                   "defects (exit 1)");
  add_campaign_options(*verify, verify_flags);

  CampaignFlags search_flags;
  CLI::App* search =
      app.add_subcommand("search", "hunt for counterexamples to "
                                   "conjectural statements (exit 0 on "
                                   "findings)");
  add_campaign_options(*search, search_flags);

  ReplayFlags replay_flags;
  CLI::App* replay =
      app.add_subcommand("replay", "regenerate one instance bit-exactly "
                                   "from its derived seed");
  replay->add_option("--statements", replay_flags.statements,
                     "statement id (exactly one)")
      ->delimiter(',')
      ->required();
  replay->add_option("--seed", replay_flags.seed,
                     "derived instance seed")
      ->required();
  replay->add_option("--dims", replay_flags.dims,
                     "matrix dimension (exactly one)")
      ->delimiter(',')
      ->required();
  replay->add_option("--m", replay_flags.params.m, "tuple length");
  replay->add_option("--t", replay_flags.params.t, "mean weight");
  replay->add_option("--p", replay_flags.params.p, "outer exponent");
  replay->add_option("--r", replay_flags.params.r, "inner exponent");
  replay->add_option("--tolerance", replay_flags.tolerance,
                     "slack tolerance");
  replay->add_option("--eig-min", replay_flags.eig_min,
                     "sampler spectrum lower bound");
  replay->add_option("--eig-max", replay_flags.eig_max,
                     "sampler spectrum upper bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed())
      return run_campaign_command(*verify, verify_flags,
                                  CampaignMode::Verify);
    if (search->parsed())
      return run_campaign_command(*search, search_flags,
                                  CampaignMode::Search);
    return run_replay_command(replay_flags);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const ParamOutOfRange& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 3;
  }
}
