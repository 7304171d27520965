#include "meanforge/json_io.hpp"

#include <unistd.h>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <string_view>
#include <system_error>
#include <vector>

#include "meanforge/errors.hpp"

namespace meanforge {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

// JSON has no inf/nan literals; non-finite slacks (failed instances)
// serialize as null.
ordered_json json_number(double value) {
  if (std::isfinite(value)) return value;
  return nullptr;
}

ordered_json json_values(const std::vector<double>& values) {
  ordered_json out = ordered_json::array();
  for (double v : values) out.push_back(json_number(v));
  return out;
}

[[noreturn]] void fail(const std::string& what) { throw ConfigError(what); }

const json& member(const json& j, std::string_view key,
                   std::string_view context) {
  auto it = j.find(key);
  if (it == j.end())
    fail(std::string(context) + ": missing key \"" + std::string(key) + "\"");
  return *it;
}

void reject_unknown_keys(const json& j,
                         std::initializer_list<std::string_view> allowed,
                         std::string_view context) {
  for (const auto& item : j.items()) {
    bool known = false;
    for (std::string_view key : allowed) known = known || item.key() == key;
    if (!known)
      fail(std::string(context) + ": unknown key \"" + item.key() + "\"");
  }
}

double as_double(const json& j, std::string_view context) {
  if (!j.is_number())
    fail(std::string(context) + ": expected a number");
  return j.get<double>();
}

std::int64_t as_integer(const json& j, std::string_view context) {
  if (!j.is_number_integer())
    fail(std::string(context) + ": expected an integer");
  return j.get<std::int64_t>();
}

std::uint64_t as_seed(const json& j, std::string_view context) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0)
    return static_cast<std::uint64_t>(j.get<std::int64_t>());
  fail(std::string(context) + ": expected a nonnegative integer");
}

std::vector<double> as_double_list(const json& j, std::string_view context) {
  if (!j.is_array()) fail(std::string(context) + ": expected an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (const auto& v : j) out.push_back(as_double(v, context));
  return out;
}

ordered_json params_fields(const InequalityParams& params) {
  ordered_json out;
  out["m"] = params.m;
  out["t"] = params.t;
  out["p"] = params.p;
  out["r"] = params.r;
  return out;
}

ordered_json verdict_to_json(const CheckVerdict& verdict) {
  ordered_json out;
  out["statement_id"] = verdict.statement_id;
  out["params"] = params_fields(verdict.params);
  out["lhs_values"] = json_values(verdict.lhs_values);
  out["rhs_values"] = json_values(verdict.rhs_values);
  out["slacks"] = json_values(verdict.slacks);
  out["min_slack"] = json_number(verdict.min_slack());
  out["holds"] = verdict.holds;
  out["is_proven_statement"] = verdict.is_proven_statement;
  return out;
}

void append_csv_double(std::string& out, double value) {
  out += format_double(value);
}

}  // namespace

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[48];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  if (ec != std::errc{}) return "nan";  // unreachable for finite doubles
  return std::string(buffer, end);
}

ordered_json matrix_to_json(const ComplexMatrix& matrix) {
  ordered_json data = ordered_json::array();
  for (Index i = 0; i < matrix.dim(); ++i) {
    ordered_json row = ordered_json::array();
    for (Index j = 0; j < matrix.dim(); ++j) {
      Complex z = matrix(i, j);
      row.push_back(ordered_json::array({z.real(), z.imag()}));
    }
    data.push_back(std::move(row));
  }
  ordered_json out;
  out["dim"] = matrix.dim();
  out["data"] = std::move(data);
  return out;
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_object()) fail("matrix: expected an object");
  reject_unknown_keys(j, {"dim", "data"}, "matrix");
  auto dim = as_integer(member(j, "dim", "matrix"), "matrix.dim");
  if (dim < 0) fail("matrix.dim: negative");
  const json& data = member(j, "data", "matrix");
  if (!data.is_array() || static_cast<std::int64_t>(data.size()) != dim)
    fail("matrix.data: expected " + std::to_string(dim) + " rows");
  DenseMatrix m(dim, dim);
  for (std::int64_t i = 0; i < dim; ++i) {
    const json& row = data[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<std::int64_t>(row.size()) != dim)
      fail("matrix.data: expected " + std::to_string(dim) + " columns");
    for (std::int64_t k = 0; k < dim; ++k) {
      const json& entry = row[static_cast<std::size_t>(k)];
      if (!entry.is_array() || entry.size() != 2)
        fail("matrix.data: entries must be [re, im] pairs");
      m(i, k) = Complex(as_double(entry[0], "matrix entry"),
                        as_double(entry[1], "matrix entry"));
    }
  }
  return ComplexMatrix(std::move(m));
}

ordered_json norm_spec_to_json(const NormSpec& spec) {
  ordered_json out;
  switch (spec.kind) {
    case NormSpec::Kind::Schatten:
      out["kind"] = "schatten";
      out["p"] = spec.p;
      break;
    case NormSpec::Kind::KyFan:
      out["kind"] = "kyfan";
      out["k"] = spec.k;
      break;
    case NormSpec::Kind::Trace:
      out["kind"] = "trace";
      break;
    case NormSpec::Kind::Spectral:
      out["kind"] = "spectral";
      break;
    case NormSpec::Kind::KyFanAll:
      out["kind"] = "kyfan_all";
      break;
  }
  return out;
}

NormSpec norm_spec_from_json(const json& j) {
  if (!j.is_object()) fail("norm: expected an object");
  const json& kind = member(j, "kind", "norm");
  if (!kind.is_string()) fail("norm.kind: expected a string");
  const auto name = kind.get<std::string>();
  if (name == "schatten") {
    reject_unknown_keys(j, {"kind", "p"}, "norm");
    return NormSpec::schatten(as_double(member(j, "p", "norm"), "norm.p"));
  }
  if (name == "kyfan") {
    reject_unknown_keys(j, {"kind", "k"}, "norm");
    return NormSpec::ky_fan(as_integer(member(j, "k", "norm"), "norm.k"));
  }
  reject_unknown_keys(j, {"kind"}, "norm");
  if (name == "trace") return NormSpec::trace();
  if (name == "spectral") return NormSpec::spectral();
  if (name == "kyfan_all") return NormSpec::ky_fan_all();
  fail("norm.kind: unknown kind \"" + name + "\"");
}

ordered_json sampler_config_to_json(const SamplerConfig& config) {
  ordered_json out;
  out["dim"] = config.dim;
  out["eig_min"] = config.eig_min;
  out["eig_max"] = config.eig_max;
  out["seed"] = config.seed;
  return out;
}

SamplerConfig sampler_config_from_json(const json& j) {
  if (!j.is_object()) fail("sampler: expected an object");
  reject_unknown_keys(j, {"dim", "eig_min", "eig_max", "seed"}, "sampler");
  SamplerConfig config;
  if (j.contains("dim"))
    config.dim = as_integer(j["dim"], "sampler.dim");
  if (j.contains("eig_min"))
    config.eig_min = as_double(j["eig_min"], "sampler.eig_min");
  if (j.contains("eig_max"))
    config.eig_max = as_double(j["eig_max"], "sampler.eig_max");
  if (j.contains("seed")) config.seed = as_seed(j["seed"], "sampler.seed");
  config.validate();
  return config;
}

ordered_json campaign_config_to_json(const CampaignConfig& config) {
  ordered_json out;
  out["mode"] = config.mode == CampaignMode::Verify ? "verify" : "search";
  out["statements"] = config.statements;
  ordered_json dims = ordered_json::array();
  for (Index d : config.dims) dims.push_back(d);
  out["dims"] = std::move(dims);
  out["count"] = config.count;
  ordered_json grids;
  grids["t"] = config.grids.t;
  grids["p"] = config.grids.p;
  grids["r"] = config.grids.r;
  grids["m"] = config.grids.m;
  out["param_grids"] = std::move(grids);
  out["sampler"] = sampler_config_to_json(config.sampler);
  out["tolerance"] = config.tolerance;
  out["near_violation_threshold"] = config.near_violation_threshold;
  out["output_path"] = config.output_path;
  out["format"] = config.format == ReportFormat::Json ? "json" : "csv";
  out["verbose"] = config.verbose;
  // Deliberately no "workers": reports must not depend on it.
  return out;
}

CampaignConfig campaign_config_from_json(const json& j) {
  if (!j.is_object()) fail("config: expected an object");
  reject_unknown_keys(j,
                      {"mode", "statements", "dims", "count", "param_grids",
                       "sampler", "tolerance", "near_violation_threshold",
                       "output_path", "format", "workers", "verbose"},
                      "config");
  CampaignConfig config;
  if (j.contains("mode")) {
    const json& mode = j["mode"];
    if (!mode.is_string()) fail("config.mode: expected a string");
    const auto name = mode.get<std::string>();
    if (name == "verify")
      config.mode = CampaignMode::Verify;
    else if (name == "search")
      config.mode = CampaignMode::Search;
    else
      fail("config.mode: unknown mode \"" + name + "\"");
  }
  if (j.contains("statements")) {
    const json& list = j["statements"];
    if (!list.is_array()) fail("config.statements: expected an array");
    config.statements.clear();
    for (const auto& s : list) {
      if (!s.is_string()) fail("config.statements: expected strings");
      config.statements.push_back(s.get<std::string>());
    }
  }
  if (j.contains("dims")) {
    const json& list = j["dims"];
    if (!list.is_array()) fail("config.dims: expected an array");
    config.dims.clear();
    for (const auto& d : list)
      config.dims.push_back(as_integer(d, "config.dims"));
  }
  if (j.contains("count"))
    config.count = static_cast<int>(as_integer(j["count"], "config.count"));
  if (j.contains("param_grids")) {
    const json& grids = j["param_grids"];
    if (!grids.is_object()) fail("config.param_grids: expected an object");
    reject_unknown_keys(grids, {"t", "p", "r", "m"}, "config.param_grids");
    if (grids.contains("t"))
      config.grids.t = as_double_list(grids["t"], "config.param_grids.t");
    if (grids.contains("p"))
      config.grids.p = as_double_list(grids["p"], "config.param_grids.p");
    if (grids.contains("r"))
      config.grids.r = as_double_list(grids["r"], "config.param_grids.r");
    if (grids.contains("m")) {
      if (!grids["m"].is_array())
        fail("config.param_grids.m: expected an array");
      config.grids.m.clear();
      for (const auto& v : grids["m"])
        config.grids.m.push_back(
            static_cast<int>(as_integer(v, "config.param_grids.m")));
    }
  }
  if (j.contains("sampler"))
    config.sampler = sampler_config_from_json(j["sampler"]);
  if (j.contains("tolerance"))
    config.tolerance = as_double(j["tolerance"], "config.tolerance");
  if (j.contains("near_violation_threshold"))
    config.near_violation_threshold = as_double(
        j["near_violation_threshold"], "config.near_violation_threshold");
  if (j.contains("output_path")) {
    if (!j["output_path"].is_string())
      fail("config.output_path: expected a string");
    config.output_path = j["output_path"].get<std::string>();
  }
  if (j.contains("format")) {
    if (!j["format"].is_string()) fail("config.format: expected a string");
    const auto name = j["format"].get<std::string>();
    if (name == "json")
      config.format = ReportFormat::Json;
    else if (name == "csv")
      config.format = ReportFormat::Csv;
    else
      fail("config.format: unknown format \"" + name + "\"");
  }
  if (j.contains("workers"))
    config.workers =
        static_cast<int>(as_integer(j["workers"], "config.workers"));
  if (j.contains("verbose")) {
    if (!j["verbose"].is_boolean()) fail("config.verbose: expected a bool");
    config.verbose = j["verbose"].get<bool>();
  }
  return config;
}

CampaignConfig load_campaign_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open config file: " + path);
  json parsed;
  try {
    parsed = json::parse(in);
  } catch (const json::parse_error& e) {
    fail("config file " + path + ": " + e.what());
  }
  return campaign_config_from_json(parsed);
}

ordered_json instance_record_to_json(const InstanceRecord& record) {
  ordered_json out;
  out["statement_id"] = record.statement_id;
  out["dim"] = record.dim;
  ordered_json params = params_fields(record.params);
  for (auto& item : params.items()) out[item.key()] = item.value();
  out["seed"] = record.seed;
  out["index"] = record.index;
  out["min_slack"] = json_number(record.min_slack);
  out["holds"] = record.holds;
  if (record.failed) {
    out["failed"] = true;
    out["failure_reason"] = record.failure_reason;
  }
  if (record.inconclusive)
    out["inconclusive"] = "violation within 100x tolerance of zero"
                          " -- precision-limited";
  if (record.trajectory) {
    ordered_json search;
    search["refined_slack"] = json_number(record.refined_slack);
    search["trajectory"] = json_values(*record.trajectory);
    out["search"] = std::move(search);
  }
  return out;
}

ordered_json report_to_json(const CampaignReport& report) {
  ordered_json out;
  out["config"] = campaign_config_to_json(report.config);
  out["rng_algorithm_version"] = report.rng_algorithm_version;
  ordered_json statements = ordered_json::array();
  for (const StatementSummary& summary : report.statements) {
    ordered_json s;
    s["statement_id"] = summary.statement_id;
    s["instances_run"] = summary.instances_run;
    s["failures"] = summary.failures;
    s["min_slack"] = json_number(summary.min_slack);
    s["min_slack_seed"] = summary.min_slack_seed;
    ordered_json violations = ordered_json::array();
    for (const InstanceRecord& r : summary.violations)
      violations.push_back(instance_record_to_json(r));
    s["violations"] = std::move(violations);
    ordered_json near = ordered_json::array();
    for (const InstanceRecord& r : summary.near_violations)
      near.push_back(instance_record_to_json(r));
    s["near_violations"] = std::move(near);
    statements.push_back(std::move(s));
  }
  out["statements"] = std::move(statements);
  ordered_json totals;
  totals["instances"] = report.total_instances;
  totals["violations"] = report.total_violations;
  totals["near_violations"] = report.total_near_violations;
  totals["failures"] = report.total_failures;
  out["totals"] = std::move(totals);
  if (report.config.verbose) {
    ordered_json instances = ordered_json::array();
    for (const InstanceRecord& r : report.instances)
      instances.push_back(instance_record_to_json(r));
    out["instances"] = std::move(instances);
  }
  return out;
}

std::string report_to_csv(const CampaignReport& report) {
  std::string out = "statement_id,dim,m,t,p,r,seed,min_slack,holds\n";
  for (const InstanceRecord& r : report.instances) {
    out += r.statement_id;
    out += ',';
    out += std::to_string(r.dim);
    out += ',';
    out += std::to_string(r.params.m);
    out += ',';
    append_csv_double(out, r.params.t);
    out += ',';
    append_csv_double(out, r.params.p);
    out += ',';
    append_csv_double(out, r.params.r);
    out += ',';
    out += std::to_string(r.seed);
    out += ',';
    append_csv_double(out, r.min_slack);
    out += ',';
    out += r.holds ? "true" : "false";
    out += '\n';
  }
  return out;
}

ordered_json replay_result_to_json(const ReplayResult& result) {
  ordered_json out;
  out["statement_id"] = result.request.statement_id;
  out["dim"] = result.request.dim;
  out["params"] = params_fields(result.request.params);
  out["seed"] = result.request.seed;
  out["tolerance"] = result.request.tolerance;
  out["sampler"] = sampler_config_to_json(result.request.sampler);
  ordered_json matrices;
  if (!result.inputs.as.empty()) {
    ordered_json as = ordered_json::array();
    for (const auto& a : result.inputs.as)
      as.push_back(matrix_to_json(a.matrix()));
    matrices["as"] = std::move(as);
  }
  if (!result.inputs.bs.empty()) {
    ordered_json bs = ordered_json::array();
    for (const auto& b : result.inputs.bs)
      bs.push_back(matrix_to_json(b.matrix()));
    matrices["bs"] = std::move(bs);
  }
  if (!result.inputs.raw.empty()) {
    ordered_json raw = ordered_json::array();
    for (const auto& m : result.inputs.raw) raw.push_back(matrix_to_json(m));
    matrices["raw"] = std::move(raw);
  }
  out["matrices"] = std::move(matrices);
  ordered_json verdicts = ordered_json::array();
  for (const CheckVerdict& v : result.evaluation.verdicts)
    verdicts.push_back(verdict_to_json(v));
  out["verdicts"] = std::move(verdicts);
  out["min_slack"] = json_number(result.evaluation.min_slack);
  out["holds"] = result.evaluation.holds;
  if (result.chain) {
    ordered_json chain;
    ordered_json steps = ordered_json::array();
    for (const ProofChainStep& step : result.chain->steps) {
      ordered_json s;
      s["label"] = step.label;
      s["values"] = json_values(step.values);
      steps.push_back(std::move(s));
    }
    chain["steps"] = std::move(steps);
    chain["monotone"] = result.chain->monotone;
    chain["max_violation"] = json_number(result.chain->max_violation);
    out["chain"] = std::move(chain);
  }
  return out;
}

std::string render_report(const CampaignReport& report, ReportFormat format) {
  if (format == ReportFormat::Csv) return report_to_csv(report);
  return report_to_json(report).dump(2) + "\n";
}

void write_text_atomically(const std::string& path,
                           const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path temp = target;
  temp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) fail("cannot write report file: " + temp.string());
    out.write(content.data(),
              static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) fail("short write to report file: " + temp.string());
  }
  std::error_code ec;
  fs::rename(temp, target, ec);
  if (ec) {
    fs::remove(temp);
    fail("cannot move report into place: " + ec.message());
  }
}

}  // namespace meanforge
