// Run configuration for the command-line front end, read from JSON.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hww/experiments.hpp"

namespace hww::cli {

struct ConfigError : Error {
  using Error::Error;
};

inline constexpr int kSchemaVersion = 1;

struct DispersionCase {
  int k;
  double g, c;
};

struct RunConfig {
  Domain domain;
  Params params;
  SpectralOptions spectral;

  std::vector<ModeSpec> W_modes, Q_modes;
  std::string snapshot;  // initial data from a snapshot when non-empty

  double T = 1;
  double dt = 0;  // 0 selects cfl_fraction of the CFL bound at t = 0
  double cfl_fraction = 0.5;
  int output_every = 10;
  int snapshot_every = 0;
  StepOptions step;

  double holo_tol = 1e-8;
  double trunc_tol = 1e-10;
  double breach_delta = 1e-3;   // cusp margin floor
  double taylor_delta = 1e-3;   // floor for g + a_

  std::vector<DispersionCase> dispersion_cases;
  DispersionOptions dispersion;
  double dispersion_tol = 1e-6;

  int nf_samples = 100;
  std::uint64_t seed = 20240601;
  double nf_tol = 1e-10;
  std::vector<double> nf_eps{1e-1, 3e-2, 1e-2};
  std::vector<double> nf_c_values{0.0, 1.0};
  double nf_slope_tol = 0.15;

  std::vector<double> lifespan_eps{0.2, 0.1, 0.05};
  LifespanOptions lifespan;

  std::vector<double> drift_eps{0.1, 0.05, 0.025};
  std::vector<double> drift_c_values{0.0, 1.0};
  DriftScanOptions drift;

  int threads = 1;
};

// throws ConfigError on malformed or out-of-range input
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& text);

// initial state described by the config (modes or snapshot)
WaveState initial_state(const RunConfig& cfg);

}  // namespace hww::cli
