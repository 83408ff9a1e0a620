#include "config.hpp"

#include <fstream>
#include <sstream>

#include "hww/snapshot.hpp"
#include "json.hpp"

namespace hww::cli {

using nlohmann::json;

namespace {
template <class T>
void opt(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

std::vector<ModeSpec> modes(const json& j) {
  std::vector<ModeSpec> out;
  for (const auto& m : j) {
    const int k = m.at("k").get<int>();
    const double re = m.value("re", 0.0), im = m.value("im", 0.0);
    out.push_back({k, cplx(re, im)});
  }
  return out;
}

Scheme scheme_of(const std::string& s) {
  if (s == "rk4") return Scheme::RK4;
  if (s == "ifrk4") return Scheme::IFRK4;
  throw ConfigError("unknown scheme '" + s + "' (expected rk4 or ifrk4)");
}

GoodVariableForm form_of(const std::string& s) {
  if (s == "consistent") return GoodVariableForm::Consistent;
  if (s == "literal") return GoodVariableForm::Literal;
  throw ConfigError("unknown good_variables '" + s + "' (expected consistent or literal)");
}

CflPolicy cfl_of(const std::string& s) {
  if (s == "ignore") return CflPolicy::Ignore;
  if (s == "warn") return CflPolicy::Warn;
  if (s == "error") return CflPolicy::Error;
  throw ConfigError("unknown cfl_policy '" + s + "'");
}

void validate(const RunConfig& c) {
  try {
    c.domain.validate();
    c.params.validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  auto need = [](bool ok, const std::string& msg) {
    if (!ok) throw ConfigError(msg);
  };
  need(c.T >= 0, "time.T must be nonnegative");
  need(c.dt >= 0, "time.dt must be nonnegative");
  need(c.cfl_fraction > 0, "time.cfl_fraction must be positive");
  need(c.output_every > 0, "time.output_every must be positive");
  need(c.snapshot_every >= 0, "time.snapshot_every must be nonnegative");
  need(c.spectral.cusp_floor > 0, "tolerances.cusp_floor must be positive");
  need(c.holo_tol > 0, "tolerances.holo_tol must be positive");
  need(c.threads >= 1, "threads must be at least 1");
  for (const auto& m : c.W_modes) need(m.k >= -c.domain.N / 2 && m.k < c.domain.N / 2, "W mode out of range");
  for (const auto& m : c.Q_modes) need(m.k >= -c.domain.N / 2 && m.k < c.domain.N / 2, "Q mode out of range");
  for (const auto& d : c.dispersion_cases) need(d.k < 0 && d.g > 0 && d.c >= 0, "bad dispersion case");
  need(c.nf_samples > 0, "normalform.samples must be positive");
  need(c.drift.n >= 0, "drift.n must be nonnegative");
}
}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig c;
  try {
    const json j = json::parse(text);
    if (!j.is_object()) throw ConfigError("config root must be an object");
    if (!j.contains("schema_version")) throw ConfigError("missing schema_version");
    if (j.at("schema_version").get<int>() != kSchemaVersion)
      throw ConfigError("unsupported schema_version " + j.at("schema_version").dump());

    if (j.contains("domain")) {
      const auto& d = j["domain"];
      opt(d, "N", c.domain.N);
      opt(d, "L", c.domain.L);
      opt(d, "pad", c.domain.pad);
    }
    if (j.contains("params")) {
      opt(j["params"], "g", c.params.g);
      opt(j["params"], "c", c.params.c);
    }
    if (j.contains("initial")) {
      const auto& i = j["initial"];
      if (i.contains("W")) c.W_modes = modes(i["W"]);
      if (i.contains("Q")) c.Q_modes = modes(i["Q"]);
      opt(i, "snapshot", c.snapshot);
    }
    if (j.contains("time")) {
      const auto& t = j["time"];
      opt(t, "T", c.T);
      opt(t, "dt", c.dt);
      opt(t, "cfl_fraction", c.cfl_fraction);
      opt(t, "output_every", c.output_every);
      opt(t, "snapshot_every", c.snapshot_every);
    }
    if (j.contains("scheme")) c.step.scheme = scheme_of(j["scheme"].get<std::string>());
    if (j.contains("cfl_policy")) c.step.cfl = cfl_of(j["cfl_policy"].get<std::string>());
    opt(j, "filter_order", c.step.filter_order);
    opt(j, "threads", c.threads);
    if (j.contains("tolerances")) {
      const auto& t = j["tolerances"];
      opt(t, "holo_tol", c.holo_tol);
      opt(t, "cusp_floor", c.spectral.cusp_floor);
      opt(t, "mean_tolerance", c.spectral.mean_tolerance);
      opt(t, "trunc_tol", c.trunc_tol);
      opt(t, "breach_delta", c.breach_delta);
      opt(t, "taylor_delta", c.taylor_delta);
    }
    if (j.contains("dispersion")) {
      const auto& d = j["dispersion"];
      if (d.contains("cases"))
        for (const auto& e : d["cases"])
          c.dispersion_cases.push_back({e.at("k").get<int>(), e.value("g", 1.0), e.value("c", 0.0)});
      opt(d, "eps", c.dispersion.eps);
      opt(d, "full", c.dispersion.full);
      opt(d, "dt", c.dispersion.dt);
      opt(d, "steps", c.dispersion.steps);
      opt(d, "tol", c.dispersion_tol);
    }
    if (j.contains("normalform")) {
      const auto& n = j["normalform"];
      opt(n, "samples", c.nf_samples);
      opt(n, "seed", c.seed);
      opt(n, "tol", c.nf_tol);
      opt(n, "eps", c.nf_eps);
      opt(n, "c_values", c.nf_c_values);
      opt(n, "slope_tol", c.nf_slope_tol);
    }
    if (j.contains("lifespan")) {
      const auto& l = j["lifespan"];
      opt(l, "eps", c.lifespan_eps);
      opt(l, "kappa", c.lifespan.kappa);
      opt(l, "dt", c.lifespan.dt);
      opt(l, "dt_fraction", c.lifespan.dt_fraction);
      opt(l, "growth_limit", c.lifespan.growth_limit);
      opt(l, "taylor_fraction", c.lifespan.taylor_fraction);
      opt(l, "small_data_limit", c.lifespan.small_data_limit);
      opt(l, "check_every", c.lifespan.check_every);
    }
    if (j.contains("drift")) {
      const auto& d = j["drift"];
      opt(d, "eps", c.drift_eps);
      opt(d, "c_values", c.drift_c_values);
      opt(d, "n", c.drift.n);
      opt(d, "T", c.drift.T);
      opt(d, "dt", c.drift.dt);
      opt(d, "sample_every", c.drift.sample_every);
      if (d.contains("good_variables")) c.drift.good.form = form_of(d["good_variables"].get<std::string>());
      if (d.contains("weight_exponent")) c.drift.good.weight_exponent = d["weight_exponent"].get<double>();
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  if (c.dispersion_cases.empty())
    for (int k : {-1, -4, -16})
      for (double cc : {0.0, 1.0, 2.0}) c.dispersion_cases.push_back({k, 1.0, cc});
  validate(c);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot read config " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return parse_config(ss.str());
}

WaveState initial_state(const RunConfig& cfg) {
  if (!cfg.snapshot.empty()) return load_snapshot(cfg.snapshot, cfg.spectral).state;
  return state_from_modes(Space::make(cfg.domain, cfg.spectral), cfg.W_modes, cfg.Q_modes);
}

}  // namespace hww::cli
