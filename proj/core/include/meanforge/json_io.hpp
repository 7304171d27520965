#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "meanforge/campaign.hpp"
#include "meanforge/matrix.hpp"
#include "meanforge/norms.hpp"
#include "meanforge/sampling.hpp"

namespace meanforge {

/// All serialization goes through ordered_json and a fixed double
/// formatter so report bytes are deterministic.

/// Shortest round-trip decimal form of a finite double; "inf"/"-inf"/
/// "nan" for the rest (used in CSV; JSON maps non-finite to null).
std::string format_double(double value);

/// {"dim": n, "data": [[[re, im], ...], ...]} with rows outermost.
nlohmann::ordered_json matrix_to_json(const ComplexMatrix& matrix);
ComplexMatrix matrix_from_json(const nlohmann::json& json);

/// {"kind": "schatten", "p": 2.0} | {"kind": "kyfan", "k": 3} |
/// {"kind": "kyfan_all"} | {"kind": "trace"} | {"kind": "spectral"}.
nlohmann::ordered_json norm_spec_to_json(const NormSpec& spec);
NormSpec norm_spec_from_json(const nlohmann::json& json);

/// {"dim": 4, "eig_min": 1e-3, "eig_max": 1e3, "seed": 42}.
nlohmann::ordered_json sampler_config_to_json(const SamplerConfig& config);
SamplerConfig sampler_config_from_json(const nlohmann::json& json);

/// Full campaign config; missing keys take defaults, unknown keys are
/// ConfigError. The echo omits `workers` (a performance knob with no
/// bearing on results).
nlohmann::ordered_json campaign_config_to_json(const CampaignConfig& config);
CampaignConfig campaign_config_from_json(const nlohmann::json& json);
CampaignConfig load_campaign_config(const std::string& path);

nlohmann::ordered_json instance_record_to_json(const InstanceRecord& record);
nlohmann::ordered_json report_to_json(const CampaignReport& report);

/// Flat per-instance table:
/// statement_id,dim,m,t,p,r,seed,min_slack,holds
std::string report_to_csv(const CampaignReport& report);

nlohmann::ordered_json replay_result_to_json(const ReplayResult& result);

/// Serialized report in the configured format, trailing newline included.
std::string render_report(const CampaignReport& report, ReportFormat format);

/// Writes via a temp file in the same directory plus rename, so readers
/// never observe a partial report.
void write_text_atomically(const std::string& path,
                           const std::string& content);

}  // namespace meanforge
