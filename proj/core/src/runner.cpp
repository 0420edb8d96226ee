#include "flocksim/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>

#include <json.hpp>

#include "flocksim/agents.hpp"

namespace flock {

namespace {

using json = nlohmann::ordered_json;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_opt(const std::optional<double>& v) {
  return v ? fmt(*v) : std::string{};
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << body;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

json fit_to_json(const std::optional<DecayFit>& fit) {
  if (!fit) return nullptr;
  return json{{"rate", fit->rate},
              {"amplitude", fit->amplitude},
              {"r_squared", fit->r_squared},
              {"window", {fit->window_lo, fit->window_hi}},
              {"samples", fit->samples}};
}

std::optional<DecayFit> try_fit(
    const std::vector<std::pair<double, double>>& series, double lo,
    double hi) {
  try {
    return fit_decay(series, lo, hi);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::vector<std::pair<double, double>> record_series(
    const std::vector<DiagnosticsRecord>& recs,
    double DiagnosticsRecord::* member) {
  std::vector<std::pair<double, double>> out;
  out.reserve(recs.size());
  for (const auto& r : recs) out.emplace_back(r.t, r.*member);
  return out;
}

void write_agents_csv(const Scenario& s, const FieldState& initial,
                      const std::filesystem::path& dir) {
  AgentState a =
      sample_agents(initial.rho, initial.u, s.agents.count, s.agents.seed);
  const int per_cadence =
      std::max(1, static_cast<int>(std::lround(s.output.cadence / s.agents.dt)));
  const double dt = s.output.cadence / per_cadence;
  std::string body = "t,i,x,v\n";
  auto emit = [&](const AgentState& st) {
    for (int i = 0; i < st.count(); ++i)
      body += fmt(st.t) + "," + std::to_string(i) + "," + fmt(st.x[i]) + "," +
              fmt(st.v[i]) + "\n";
  };
  emit(a);
  const int cadences =
      static_cast<int>(std::ceil(s.step.t_end / s.output.cadence - 1e-12));
  for (int c = 0; c < cadences; ++c) {
    for (int k = 0; k < per_cadence; ++k)
      a = agents_step(a, s.kernel, dt, CsNormalization::Mean);
    emit(a);
  }
  write_text_file(dir / "agents.csv", body);
}

RunArtifacts run_scenario_at(const Scenario& s,
                             const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);

  const FieldState initial = make_initial_state(s);
  RunConfig cfg;
  cfg.ctl = s.step;
  cfg.cadence = s.output.cadence;
  cfg.e_convention = s.e_convention();
  cfg.line_emulation = s.mode == DomainMode::LineEmulation;
  cfg.support_eps = s.support_threshold;

  RunArtifacts art;
  art.directory = dir;
  art.trajectory = run(initial, s.kernel, cfg);
  Trajectory& traj = art.trajectory;
  if (traj.abort_reason)
    throw std::runtime_error("run aborted: " + *traj.abort_reason);

  const auto& recs = traj.records;
  const double t_final = recs.back().t;
  const double u_bar =
      recs.front().mass != 0.0 ? recs.front().momentum / recs.front().mass
                               : 0.0;

  // Flocking residuals against the final shifted snapshot.
  std::optional<DecayFit> residual_fit;
  if (traj.snapshots.size() >= 2 && !traj.blowup) {
    const FlockingProfile prof = flocking_residual(traj.snapshots, u_bar);
    for (size_t i = 0; i < recs.size() && i < prof.residual_series.size(); ++i)
      traj.records[i].flock_residual = prof.residual_series[i].second;
    residual_fit = try_fit(prof.residual_series, 0.5 * t_final,
                           prof.residual_series.size() >= 2
                               ? prof.residual_series[prof.residual_series.size() - 2].first
                               : t_final);
  }

  // Headline decay fits over the post-transient window.
  const double fit_lo = 0.2 * t_final;
  const auto v_fit = try_fit(
      record_series(recs, &DiagnosticsRecord::velocity_diameter), fit_lo,
      t_final);
  const auto ux_fit =
      try_fit(record_series(recs, &DiagnosticsRecord::sup_ux), fit_lo, t_final);
  const auto uxx_fit = try_fit(record_series(recs, &DiagnosticsRecord::sup_uxx),
                               fit_lo, t_final);
  const auto uxxx_fit = try_fit(
      record_series(recs, &DiagnosticsRecord::l2_uxxx), fit_lo, t_final);

  // Conservation residuals (M and P as stored; int e recomputed).
  const KernelContext ctx(s.kernel, s.grid());
  const double e0 = integral(compute_e(traj.snapshots.front(), ctx,
                                       cfg.e_convention));
  const double eT =
      integral(compute_e(traj.snapshots.back(), ctx, cfg.e_convention));
  const double mass_rel =
      std::fabs(recs.back().mass - recs.front().mass) /
      std::fabs(recs.front().mass);
  const double mom_abs = std::fabs(recs.back().momentum - recs.front().momentum);
  const double e_res = std::fabs(e0) > 1e-12 ? std::fabs(eT - e0) / std::fabs(e0)
                                             : std::fabs(eT - e0);

  // diagnostics.csv
  std::string csv = std::string(kDiagnosticsHeader) + "\n";
  for (const auto& r : recs) csv += diagnostics_csv_row(r) + "\n";
  write_text_file(dir / "diagnostics.csv", csv);

  if (s.output.snapshots) {
    std::string snap = "t,x,rho,u\n";
    for (const auto& st : traj.snapshots) {
      const auto& g = st.rho.grid();
      for (int j = 0; j < g.n; ++j)
        snap += fmt(st.t) + "," + fmt(g.node(j)) + "," + fmt(st.rho[j]) + "," +
                fmt(st.total_u(j)) + "\n";
    }
    write_text_file(dir / "snapshots.csv", snap);
  }

  if (s.agents.enabled) write_agents_csv(s, initial, dir);

  json summary;
  summary["schema_version"] = kSummarySchemaVersion;
  summary["scenario"] = serialize_scenario(s);
  summary["t_final"] = t_final;
  summary["snapshot_count"] = traj.snapshots.size();
  summary["conservation"] = {{"mass_relative", mass_rel},
                             {"momentum_absolute", mom_abs},
                             {"e_integral_relative", e_res}};
  if (!s.kernel.is_singular()) {
    const auto cls = threshold_classify(traj.snapshots.front(), ctx);
    summary["threshold"] = {{"min_e0", cls.min_e0},
                            {"subcritical", cls.subcritical}};
  } else {
    summary["threshold"] = nullptr;
  }
  summary["fits"] = {{"velocity_diameter", fit_to_json(v_fit)},
                     {"sup_ux", fit_to_json(ux_fit)},
                     {"sup_uxx", fit_to_json(uxx_fit)},
                     {"l2_uxxx", fit_to_json(uxxx_fit)},
                     {"flock_residual", fit_to_json(residual_fit)}};
  if (traj.blowup) {
    summary["blowup"] = {{"t", traj.blowup->t},
                         {"what", traj.blowup->what},
                         {"norm", traj.blowup->norm}};
    art.exit_code = kExitBlowup;
  } else {
    summary["blowup"] = nullptr;
    art.exit_code = kExitClean;
  }
  summary["exit_code"] = art.exit_code;
  art.summary_json = summary.dump(2) + "\n";
  write_text_file(dir / "summary.json", art.summary_json);
  return art;
}

}  // namespace

std::filesystem::path resolve_output_directory(const Scenario& s) {
  if (const char* env = std::getenv(kOutputDirEnvVar); env && *env)
    return std::filesystem::path(env);
  return std::filesystem::path(s.output.directory);
}

std::string diagnostics_csv_row(const DiagnosticsRecord& r) {
  std::string row;
  row += fmt(r.t);
  row += "," + fmt(r.mass);
  row += "," + fmt(r.momentum);
  row += "," + fmt(r.velocity_diameter);
  row += "," + fmt_opt(r.support_diameter);
  row += "," + fmt(r.min_e);
  row += "," + fmt(r.max_e);
  row += "," + fmt(r.min_rho);
  row += "," + fmt(r.max_rho);
  row += "," + fmt_opt(r.q_extremum);
  row += "," + fmt(r.sup_ux);
  row += "," + fmt(r.sup_uxx);
  row += "," + fmt(r.l2_uxxx);
  row += "," + fmt_opt(r.flock_residual);
  row += "," + fmt_opt(r.free_energy);
  return row;
}

RunArtifacts run_scenario(const Scenario& s) {
  return run_scenario_at(s, resolve_output_directory(s));
}

SweepResult run_sweep(const Scenario& templ, const std::string& axis,
                      std::vector<double> values) {
  if (!is_sweepable_axis(axis))
    throw std::invalid_argument("run_sweep: '" + axis +
                                "' is not a sweepable parameter");
  if (values.empty())
    throw std::invalid_argument("run_sweep: empty value list");
  std::sort(values.begin(), values.end());

  const std::filesystem::path base = resolve_output_directory(templ);
  std::filesystem::create_directories(base);
  std::string dir_key = axis;
  std::replace(dir_key.begin(), dir_key.end(), '.', '_');

  SweepResult result;
  for (double v : values) {
    Scenario s = templ;
    apply_axis(s, axis, v);
    const std::filesystem::path dir = base / (dir_key + "=" + fmt(v));
    const RunArtifacts art = run_scenario_at(s, dir);

    SweepRow row;
    row.value = v;
    row.exit_code = art.exit_code;
    const json summary = json::parse(art.summary_json);
    if (!summary["fits"]["velocity_diameter"].is_null()) {
      const auto& f = summary["fits"]["velocity_diameter"];
      row.v_fit.rate = f["rate"];
      row.v_fit.amplitude = f["amplitude"];
      row.v_fit.r_squared = f["r_squared"];
      row.v_fit.window_lo = f["window"][0];
      row.v_fit.window_hi = f["window"][1];
      row.v_fit.samples = f["samples"];
    }
    row.mass_residual = summary["conservation"]["mass_relative"];
    row.momentum_residual = summary["conservation"]["momentum_absolute"];
    result.rows.push_back(row);
    result.exit_code = std::max(result.exit_code, art.exit_code);
  }

  std::string csv =
      "value,exit_code,delta_V,r2_V,mass_residual,momentum_residual\n";
  for (const auto& r : result.rows)
    csv += fmt(r.value) + "," + std::to_string(r.exit_code) + "," +
           fmt(r.v_fit.rate) + "," + fmt(r.v_fit.r_squared) + "," +
           fmt(r.mass_residual) + "," + fmt(r.momentum_residual) + "\n";
  result.aggregate_csv = base / "sweep.csv";
  write_text_file(result.aggregate_csv, csv);
  return result;
}

}  // namespace flock
