#pragma once

// JSON and CSV serialization.

#include "tula/analysis.hpp"
#include "tula/sampler.hpp"
#include "tula/transform.hpp"

#include <nlohmann/json.hpp>

#include <ostream>
#include <vector>

namespace tula {

/// {b, beta, dimension, gin: {scale, log_poly}}; the quadratic-tail kind adds
/// "tail": {"kind": "quadratic", "scale", "knot"}.
nlohmann::json to_json(const RadialTransform& t);
RadialTransform transform_from_json(const nlohmann::json& j);

nlohmann::json to_json(const G1Report& r);
nlohmann::json to_json(const AssumptionReport& r);
nlohmann::json to_json(const LsiEstimate& e, bool include_tables = false);
nlohmann::json to_json(const RegimeVerdict& v);
nlohmann::json to_json(const RadialDiagnostics& d);
nlohmann::json to_json(const SamplerConfig& c);

/// chain,step,space,coord0..coord{d-1}; one y row and one x row per record.
void write_chain_csv(std::ostream& os, const std::vector<ChainRun>& runs);
/// r,lambda_radial,lambda_tangential,beta_bar
void write_eigen_table_csv(std::ostream& os, const LsiEstimate& e);
/// chain,step,radius (x-space radius trace)
void write_radius_trace_csv(std::ostream& os, const std::vector<ChainRun>& runs);

}  // namespace tula
