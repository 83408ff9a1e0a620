// Command-line front end: hww <verb> --config FILE [--out DIR] [--seed N] [--threads N]
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "config.hpp"
#include "hww/snapshot.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace hww;
using namespace hww::cli;

namespace {

enum Exit { kOk = 0, kCheckFailed = 1, kConfig = 2, kBlowup = 3, kBreach = 4 };

struct Globals {
  std::string config, out = ".", snapshot;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
};

RunConfig configure(const Globals& g) {
  RunConfig c = g.config.empty() ? parse_config(R"({"schema_version": 1})") : load_config(g.config);
  if (g.seed) c.seed = *g.seed;
  if (g.threads) c.threads = *g.threads;
  c.lifespan.threads = c.drift.threads = c.threads;
  return c;
}

void emit(const Globals& g, const std::string& name, const json& j) {
  fs::create_directories(g.out);
  std::ofstream(fs::path(g.out) / (name + ".json")) << j.dump(2) << "\n";
  std::cout << j.dump(2) << "\n";
}

std::string snap_name(int idx) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "snap_%06d.vwav", idx);
  return buf;
}

int cmd_simulate(const Globals& g) {
  const RunConfig c = configure(g);
  fs::create_directories(g.out);
  WaveState s = initial_state(c);
  const Params& p = c.params;
  std::ofstream csv(fs::path(g.out) / "diagnostics.csv");
  write_csv_header(csv);

  auto breach = [&](const DiagnosticsRecord* d, const std::string& why) {
    json b{{"t", s.t}, {"reason", why}};
    if (d) b.update({{"cusp_margin", d->cusp_margin}, {"taylor_margin", d->taylor_margin}});
    std::ofstream(fs::path(g.out) / "breach.json") << b.dump(2) << "\n";
    save_snapshot((fs::path(g.out) / "breach.vwav").string(), s, p);
    std::cerr << "constraint breach at t = " << s.t << ": " << why << "\n";
    return kBreach;
  };
  auto check = [&](const DiagnosticsRecord& d) -> int {
    if (d.cusp_margin < c.breach_delta) return breach(&d, "cusp margin below threshold");
    if (d.taylor_margin < c.taylor_delta) return breach(&d, "Taylor margin below threshold");
    return kOk;
  };

  try {
    if (std::max(holomorphy_report(s.W).relative_defect, holomorphy_report(s.Q).relative_defect) > c.holo_tol)
      throw HolomorphyViolation("initial data is not holomorphic within holo_tol");
    DiagnosticsRecord d = diagnostics(s, p);
    write_csv_row(csv, d);
    if (int rc = check(d)) return rc;
    const double dt0 = c.dt > 0 ? c.dt : c.cfl_fraction * cfl_limit(s, p, c.step.cfl_constant);
    const int steps = c.T > 0 ? static_cast<int>(std::ceil(c.T / dt0 - 1e-12)) : 0;
    const double dt = steps ? c.T / steps : 0;
    int snaps = 0;
    for (int j = 1; j <= steps; ++j) {
      s = step(s, dt, p, c.step);
      if (j % c.output_every == 0 || j == steps) {
        d = diagnostics(s, p);
        write_csv_row(csv, d);
        if (int rc = check(d)) return rc;
      }
      if (c.snapshot_every > 0 && j % c.snapshot_every == 0)
        save_snapshot((fs::path(g.out) / snap_name(++snaps)).string(), s, p);
    }
  } catch (const CuspDegeneracy& e) {
    return breach(nullptr, e.what());
  } catch (const NumericalBlowup& e) {
    std::cerr << e.what() << "\n";
    return kBlowup;
  }
  save_snapshot((fs::path(g.out) / "final.vwav").string(), s, p);
  return kOk;
}

int cmd_dispersion(const Globals& g) {
  const RunConfig c = configure(g);
  json cases = json::array();
  bool pass = true;
  for (const auto& dc : c.dispersion_cases) {
    DispersionOptions o = c.dispersion;
    o.L = c.domain.L;
    const DispersionResult r = dispersion_fit(Params{dc.g, dc.c}, dc.k, o);
    const bool ok = r.rel_error <= c.dispersion_tol;
    pass = pass && ok;
    cases.push_back({{"k", r.k}, {"g", r.g}, {"c", r.c}, {"tau_plus", r.tau_plus}, {"tau_minus", r.tau_minus},
                     {"fit_plus", r.fit_plus}, {"fit_minus", r.fit_minus}, {"rel_error", r.rel_error},
                     {"pass", ok}});
  }
  emit(g, "dispersion", {{"flow", c.dispersion.full ? "full" : "linear"}, {"cases", cases}, {"pass", pass}});
  return pass ? kOk : kCheckFailed;
}

int cmd_normalform(const Globals& g) {
  const RunConfig c = configure(g);
  json systems = json::array(), sweeps = json::array();
  bool pass = true;
  for (double cv : c.nf_c_values) {
    const Params p{c.params.g, cv};
    for (const auto& r : verify_symbol_systems(p, c.nf_samples, c.seed, -10, -0.1, c.nf_tol)) {
      pass = pass && r.pass;
      systems.push_back({{"system", r.system}, {"c", cv}, {"samples", r.samples},
                         {"max_residual", r.max_residual}, {"pass", r.pass}});
    }
    const SpacePtr sp = Space::make(c.domain, c.spectral);
    const WaveState prof = state_from_modes(sp, {{-1, 1.0}, {-2, 0.3}}, {{-1, 0.5}, {-3, cplx(0, 0.2)}});
    const CubicSweep sw = cubic_residual_sweep(prof, c.nf_eps, p);
    const bool ok = std::abs(sw.slope_W - 3) <= c.nf_slope_tol && std::abs(sw.slope_Q - 3) <= c.nf_slope_tol;
    pass = pass && ok;
    sweeps.push_back({{"c", cv}, {"eps", sw.eps}, {"rW", sw.rW}, {"rQ", sw.rQ}, {"slope_W", sw.slope_W},
                      {"slope_Q", sw.slope_Q}, {"pass", ok}});
  }
  emit(g, "normalform", {{"symbol_systems", systems}, {"cubic_residual", sweeps}, {"pass", pass}});
  return pass ? kOk : kCheckFailed;
}

WaveState default_profile(const RunConfig& c) {
  if (!c.W_modes.empty() || !c.Q_modes.empty() || !c.snapshot.empty()) return initial_state(c);
  return state_from_modes(Space::make(c.domain, c.spectral), {{-1, 1.0}}, {{-2, 0.5}});
}

int cmd_lifespan(const Globals& g) {
  const RunConfig c = configure(g);
  const LifespanReport rep = lifespan_scan(default_profile(c), c.lifespan_eps, c.params, c.lifespan);
  json es = json::array();
  for (const auto& e : rep.entries)
    es.push_back({{"eps", e.eps}, {"T", e.T}, {"t_reached", e.t_reached}, {"dt", e.dt}, {"norm0", e.norm0},
                  {"norm_max", e.norm_max}, {"taylor_min", e.taylor_min}, {"cusp_min", e.cusp_min},
                  {"breached", e.breached}, {"breach", e.breach}, {"informational", e.informational},
                  {"pass", e.pass}});
  emit(g, "lifespan", {{"g", c.params.g}, {"c", c.params.c}, {"entries", es}, {"pass", rep.pass}});
  return rep.pass ? kOk : kCheckFailed;
}

int cmd_drift(const Globals& g) {
  const RunConfig c = configure(g);
  json reps = json::array();
  for (double cv : c.drift_c_values) {
    const DriftReport r = drift_scan(default_profile(c), c.drift_eps, Params{c.params.g, cv}, c.drift);
    std::vector<bool> unstable(r.unstable.begin(), r.unstable.end());
    reps.push_back({{"n", r.n}, {"c", r.c}, {"g", r.g}, {"eps", r.eps}, {"drift_raw", r.drift_raw},
                    {"drift_mod", r.drift_mod}, {"unstable", unstable}, {"slope_raw", r.slope_raw},
                    {"slope_mod", r.slope_mod}});
  }
  emit(g, "drift", reps);
  return kOk;
}

int cmd_diagnose(const Globals& g) {
  Snapshot snap;
  if (!g.snapshot.empty()) {
    snap = load_snapshot(g.snapshot);
  } else {
    const RunConfig c = configure(g);
    snap = {initial_state(c), c.params};
  }
  write_csv_header(std::cout);
  write_csv_row(std::cout, diagnostics(snap.state, snap.params));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"holomorphic water waves with constant vorticity"};
  app.require_subcommand(1);
  Globals g;
  std::uint64_t seed = 0;
  int threads = 1;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", g.config, "JSON configuration file");
    sub->add_option("--out", g.out, "output directory");
    sub->add_option("--seed", seed, "seed for random sampling")->each([&](const std::string&) { g.seed = seed; });
    sub->add_option("--threads", threads, "worker threads for sweeps")
        ->check(CLI::PositiveNumber)
        ->each([&](const std::string&) { g.threads = threads; });
  };
  struct Verb {
    const char* name;
    const char* help;
    int (*fn)(const Globals&);
  };
  const Verb verbs[] = {
      {"simulate", "advance the full system and write diagnostics", cmd_simulate},
      {"dispersion", "fit linear-mode frequencies against the dispersion relation", cmd_dispersion},
      {"normalform-verify", "check the normal form symbols and the cubic residual", cmd_normalform},
      {"lifespan-scan", "run small-data solutions to T = kappa / eps^2", cmd_lifespan},
      {"drift-scan", "amplitude scan of raw and modified energy drift", cmd_drift},
      {"diagnose", "recompute diagnostics for a snapshot", cmd_diagnose},
  };
  std::vector<std::pair<CLI::App*, const Verb*>> subs;
  for (const auto& v : verbs) {
    CLI::App* sub = app.add_subcommand(v.name, v.help);
    add_common(sub);
    if (std::string(v.name) == "diagnose") sub->add_option("--snapshot", g.snapshot, "snapshot file");
    subs.emplace_back(sub, &v);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }
  try {
    for (auto& [sub, v] : subs)
      if (sub->parsed()) return v->fn(g);
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kConfig;
  } catch (const HolomorphyViolation& e) {
    std::cerr << e.what() << "\n";
    return kConfig;
  } catch (const CuspDegeneracy& e) {
    std::cerr << e.what() << "\n";
    return kBreach;
  } catch (const NumericalBlowup& e) {
    std::cerr << e.what() << "\n";
    return kBlowup;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
  return kOk;
}
