#include "tula/io.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

namespace tula {
namespace {

// Shortest round-trip representation, independent of the C locale.
std::string num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

nlohmann::json finite_or_null(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

}  // namespace

nlohmann::json to_json(const RadialTransform& t) {
  nlohmann::json j;
  j["dimension"] = t.dimension();
  j["gin"] = {{"scale", t.bulk().scale}, {"log_poly", t.bulk().log_poly}};
  if (const auto* e = std::get_if<ExponentialTail>(&t.tail())) {
    j["b"] = e->b;
    j["beta"] = e->beta;
  } else {
    const auto& q = std::get<QuadraticTail>(t.tail());
    j["tail"] = {{"kind", "quadratic"}, {"scale", q.scale}, {"knot", q.knot}};
  }
  return j;
}

RadialTransform transform_from_json(const nlohmann::json& j) {
  GinSpec gin;
  gin.scale = j.at("gin").at("scale").get<double>();
  gin.log_poly = j.at("gin").at("log_poly").get<std::vector<double>>();
  const int d = j.at("dimension").get<int>();
  if (j.contains("tail") && j["tail"].value("kind", "exponential") == "quadratic") {
    const auto& q = j["tail"];
    return RadialTransform(QuadraticTail{q.at("scale").get<double>(), q.at("knot").get<double>()},
                           gin, d);
  }
  return RadialTransform(ExponentialTail{j.at("b").get<double>(), j.at("beta").get<double>()},
                         gin, d);
}

nlohmann::json to_json(const G1Report& r) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : r.entries)
    entries.push_back({{"name", e.name},
                       {"measured", finite_or_null(e.measured)},
                       {"expected", finite_or_null(e.expected)},
                       {"residual", finite_or_null(e.residual)},
                       {"required", e.required},
                       {"pass", e.pass}});
  return {{"pass", r.pass}, {"entries", entries}};
}

nlohmann::json to_json(const AssumptionReport& r) {
  nlohmann::json j;
  j["assumption"] = to_string(r.assumption);
  j["pass"] = r.pass;
  j["constants"] = r.constants;
  j["fitted"] = r.fitted;
  j["satisfied_from_radius"] =
      r.satisfied_from_radius ? nlohmann::json(*r.satisfied_from_radius) : nlohmann::json(nullptr);
  j["validation_from_radius"] = r.validation_from_radius;
  j["grid"] = r.grid;
  nlohmann::json lhs = nlohmann::json::array(), rhs = nlohmann::json::array();
  for (double v : r.lhs) lhs.push_back(finite_or_null(v));
  for (double v : r.rhs) rhs.push_back(finite_or_null(v));
  j["lhs"] = lhs;
  j["rhs"] = rhs;
  return j;
}

nlohmann::json to_json(const LsiEstimate& e, bool include_tables) {
  nlohmann::json j{{"a0", e.a0}, {"bound", e.bound}, {"root_residual", e.root_residual}};
  if (include_tables) {
    j["r"] = e.r;
    j["beta_bar"] = e.beta_bar;
  }
  return j;
}

nlohmann::json to_json(const RegimeVerdict& v) {
  nlohmann::json j{{"regime", to_string(v.regime)}, {"rule_fired", v.rule_fired}};
  if (v.witness) {
    j["witness"] = {{"coefficient", v.witness->coefficient},
                    {"log_exponent", v.witness->log_exponent},
                    {"offset", v.witness->offset},
                    {"log_factor", v.witness->log_factor}};
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

nlohmann::json to_json(const RadialDiagnostics& d) {
  nlohmann::json j{{"samples", d.samples},
                   {"ess", d.ess},
                   {"ks_statistic", d.ks_statistic},
                   {"ks_critical_1pct", d.ks_critical},
                   {"ks_pass", d.ks_pass}};
  j["moments"] = nlohmann::json::array();
  for (const auto& m : d.moments)
    j["moments"].push_back({{"power", m.power},
                            {"empirical", m.empirical},
                            {"expected", m.expected},
                            {"std_error", m.std_error},
                            {"ess", m.ess},
                            {"within_3se", m.within}});
  j["tails"] = nlohmann::json::array();
  for (const auto& t : d.tails)
    j["tails"].push_back({{"threshold", t.threshold},
                          {"empirical", t.empirical},
                          {"expected", t.expected},
                          {"std_error", t.std_error},
                          {"ess", t.ess},
                          {"within_3se", t.within}});
  return j;
}

nlohmann::json to_json(const SamplerConfig& c) {
  nlohmann::json init;
  init["kind"] = c.initial.kind == InitialDistribution::Kind::Gaussian ? "gaussian" : "point";
  init["mean"] = std::vector<double>(c.initial.mean.data(),
                                     c.initial.mean.data() + c.initial.mean.size());
  init["scale"] = c.initial.scale;
  return {{"step_size", c.step_size},
          {"num_steps", c.num_steps},
          {"seed", c.seed},
          {"thin", c.thin},
          {"num_chains", c.num_chains},
          {"initial", init}};
}

void write_chain_csv(std::ostream& os, const std::vector<ChainRun>& runs) {
  std::size_t d = 0;
  for (const auto& r : runs)
    if (r.size() > 0) d = static_cast<std::size_t>(r.y_samples.front().size());
  os << "chain,step,space";
  for (std::size_t i = 0; i < d; ++i) os << ",coord" << i;
  os << '\n';
  for (const auto& run : runs) {
    for (std::size_t k = 0; k < run.size(); ++k) {
      const Vector& y = run.y_samples[k];
      const Vector x = run.x(k);
      os << run.chain_index << ',' << run.steps[k] << ",y";
      for (Eigen::Index i = 0; i < y.size(); ++i) os << ',' << num(y[i]);
      os << '\n' << run.chain_index << ',' << run.steps[k] << ",x";
      for (Eigen::Index i = 0; i < x.size(); ++i) os << ',' << num(x[i]);
      os << '\n';
    }
  }
}

void write_eigen_table_csv(std::ostream& os, const LsiEstimate& e) {
  os << "r,lambda_radial,lambda_tangential,beta_bar\n";
  // solve_lsi_bound may have prepended r = 0 to a table that lacked it.
  const std::size_t off = e.r.size() - e.lambda_radial.size();
  for (std::size_t i = 0; i < e.lambda_radial.size(); ++i)
    os << num(e.r[i + off]) << ',' << num(e.lambda_radial[i]) << ','
       << num(e.lambda_tangential[i]) << ',' << num(e.beta_bar[i + off]) << '\n';
}

void write_radius_trace_csv(std::ostream& os, const std::vector<ChainRun>& runs) {
  os << "chain,step,radius\n";
  for (const auto& run : runs)
    for (std::size_t k = 0; k < run.size(); ++k)
      os << run.chain_index << ',' << run.steps[k] << ',' << num(run.x(k).norm()) << '\n';
}

}  // namespace tula
