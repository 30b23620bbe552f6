#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "asymcav/applications.hpp"
#include "asymcav/errors.hpp"
#include "asymcav/oracle_sim.hpp"
#include "parallel.hpp"

namespace asymcav::cli {
namespace {

const double kNaN = std::nan("");

std::string ppm_label(double ppm) { return format_double(ppm, 6); }

void add_warnings(CommandOutput& out, const CavitySpec& spec) {
  for (const std::string& w : validity_warnings(spec)) out.notes.push_back("warning: " + w);
}

std::vector<double> log_space(double a, double b, std::size_t n) {
  std::vector<double> v(n);
  const double la = std::log(a), lb = std::log(b);
  for (std::size_t i = 0; i < n; ++i)
    v[i] = i == 0 ? a : i + 1 == n ? b : std::exp(la + (lb - la) * static_cast<double>(i) / static_cast<double>(n - 1));
  return v;
}

// Photon number of a resonant "+"-mode drive at dx_plus. The closed forms
// used by the application commands assume delta_+ = 0.
double resonant_photon_number(const RunConfig& cfg, const CavitySpec& spec) {
  const DriveSection& d = cfg.drive;
  if (d.detuning_mode != "plus" || d.detuning != 0.0)
    throw ValidationError("drive.detuning", "this command assumes a resonant drive (detuning_mode = plus, detuning = 0)");
  if (d.port != 1) throw NumericError(NumericFailure::kUnsupportedPort, "only port-1 drive is modelled");
  if (d.photon_number) return *d.photon_number;
  const CouplingRates r = derive_couplings(spec);
  const double dxp = quadratic_points(r).plus;
  return flux_to_photon_number(r, eigenfrequencies(r, dxp).offset_plus, dxp, *d.input_flux);
}

// dx sweeps given in units of dx_plus need an avoided crossing to scale by.
void require_dx_scale(const RunConfig& cfg, double dxp) {
  if (cfg.sweep.parameter == "dx_over_dx_plus" && dxp == 0.0)
    throw ValidationError("sweep.parameter", "dx_over_dx_plus is undefined when cavity.tm_sq = 0; sweep dx instead");
}

CavitySpec with_L1(CavitySpec s, double L1_over_L) {
  s.L1 = L1_over_L * s.L;
  return s;
}

CavitySpec with_t1(CavitySpec s, double t1_ppm) {
  s.t1_sq = t1_ppm * kPpm;
  return s;
}

double full_noise_at_plus(const CavitySpec& spec, double photons, double omega) {
  const CouplingRates r = derive_couplings(spec);
  const OperatingPoint op = resonant_operating_point(r, quadratic_points(r).plus, photons);
  return force_noise_full(r, op, omega);
}

// ---------------------------------------------------------------- eigen

CommandOutput cmd_eigen(const RunConfig& cfg) {
  CommandOutput out;
  const CavitySpec spec = to_cavity_spec(cfg.cavity);
  add_warnings(out, spec);
  const CouplingRates r = derive_couplings(spec);
  const double dxp = quadratic_points(r).plus;
  require_dx_scale(cfg, dxp);
  const std::vector<double> grid = sweep_values(cfg.sweep);
  const bool scaled = cfg.sweep.parameter == "dx_over_dx_plus";

  struct Row {
    double dx, wp, wm, kp, km, theta;
  };
  const auto rows = parallel_map(grid.size(), [&](std::size_t i) {
    const double dx = scaled ? grid[i] * dxp : grid[i];
    const EigenFrequencies e = eigenfrequencies(r, dx);
    const BranchPair k = eigenmode_decay_rates(r, dx);
    return Row{dx, e.offset_plus, e.offset_minus, k.plus, k.minus, mixing(r, dx).theta_plus};
  });

  SweepResult t;
  auto& dx = t.add_numeric("dx");
  auto& rel = t.add_numeric("dx_over_dx_plus");
  auto& wp = t.add_numeric("omega_plus_offset", "(G1+G2)dx/2 - sqrt(((G2-G1)dx/2)^2 + J^2), lower branch");
  auto& wm = t.add_numeric("omega_minus_offset", "(G1+G2)dx/2 + sqrt(((G2-G1)dx/2)^2 + J^2)");
  auto& wpa = t.add_numeric("omega_plus", "omega0 + omega_plus_offset");
  auto& wma = t.add_numeric("omega_minus", "omega0 + omega_minus_offset");
  auto& gap = t.add_numeric("gap", "omega_minus - omega_plus");
  auto& kp = t.add_numeric("kappa_plus", "kappa1 cos^2(theta_plus) + kappa2 sin^2(theta_plus)");
  auto& km = t.add_numeric("kappa_minus", "kappa1 + kappa2 - kappa_plus");
  auto& th = t.add_numeric("theta_plus", "atan2(J, (G2-G1)dx/2) / 2");
  auto& w1 = t.add_numeric("omega1_uncoupled_offset", "G1 dx");
  auto& w2 = t.add_numeric("omega2_uncoupled_offset", "G2 dx");
  for (const Row& row : rows) {
    std::get<0>(dx.data).push_back(row.dx);
    std::get<0>(rel.data).push_back(row.dx / dxp);
    std::get<0>(wp.data).push_back(row.wp);
    std::get<0>(wm.data).push_back(row.wm);
    std::get<0>(wpa.data).push_back(r.omega0 + row.wp);
    std::get<0>(wma.data).push_back(r.omega0 + row.wm);
    std::get<0>(gap.data).push_back(row.wm - row.wp);
    std::get<0>(kp.data).push_back(row.kp);
    std::get<0>(km.data).push_back(row.km);
    std::get<0>(th.data).push_back(row.theta);
    std::get<0>(w1.data).push_back(r.G1 * row.dx);
    std::get<0>(w2.data).push_back(r.G2 * row.dx);
  }
  out.tables.push_back(std::move(t));
  out.notes.push_back("omega0 = " + format_double(r.omega0) + " rad/s");
  out.notes.push_back("J = " + format_double(r.J) + " rad/s");
  out.notes.push_back("dx_plus = " + format_double(dxp) + " m");
  return out;
}

// ---------------------------------------------------------------- noise

CommandOutput cmd_noise(const RunConfig& cfg) {
  CommandOutput out;
  const CavitySpec spec = to_cavity_spec(cfg.cavity);
  add_warnings(out, spec);
  const CouplingRates r = derive_couplings(spec);
  const QuadraticPointSummary q = quadratic_point_summary(spec, r);
  const OperatingPoint op = resolve_operating_point(r, to_drive_config(cfg.drive), q.dx_plus);
  const bool resonant = std::abs(op.Delta - q.offset_plus) == 0.0;

  const std::vector<double> grid = sweep_values(cfg.sweep);
  const bool scaled = cfg.sweep.parameter == "omega_over_kappa_plus";
  struct Row {
    double w, full, lg, margin;
    Regime regime;
  };
  const auto rows = parallel_map(grid.size(), [&](std::size_t i) {
    const double w = scaled ? grid[i] * q.kappa_plus : grid[i];
    Row row{w, force_noise_full(r, op, w), kNaN, large_gap_margin(spec, w), classify_regime(spec, w)};
    if (resonant) row.lg = force_noise_large_gap(spec, op.photon_number, w);
    return row;
  });

  SweepResult t;
  auto& w = t.add_numeric("omega");
  auto& wr = t.add_numeric("omega_over_kappa_plus");
  auto& method = t.add_text("method");
  auto& S = t.add_numeric("S_FF",
                          "full-two-port: kappa1|A1|^2 + kappa2|A2|^2 with A_k = -hbar sum_j G_j chi_jk conj(abar_j); "
                          "large-gap: hbar^2 N w0^2/(c^2 tm^2) (L2/L^2)(4 L1 kappa_- w^2 + L kappa_+^2 kappa2)/(w^2 + kappa_+^2/4)",
                          true);
  auto& Sn = t.add_numeric("S_FF_per_photon", "S_FF / |abar_+|^2", true);
  auto& regime = t.add_text("regime", "resolved if sqrt(B_eff)|w| >= 2 kappa_+, fast-cavity if |w| <= kappa_+/2");
  auto& margin = t.add_numeric("large_gap_margin", "(2 c |t_m| / L) / max(kappa1, kappa2, |w|)");
  auto push = [&](const Row& row, const char* m, double v) {
    std::get<0>(w.data).push_back(row.w);
    std::get<0>(wr.data).push_back(row.w / q.kappa_plus);
    std::get<1>(method.data).push_back(m);
    std::get<0>(S.data).push_back(v);
    std::get<0>(Sn.data).push_back(v / op.photon_number);
    std::get<1>(regime.data).push_back(std::string(to_string(row.regime)));
    std::get<0>(margin.data).push_back(row.margin);
  };
  for (const Row& row : rows) {
    push(row, "full-two-port", row.full);
    if (resonant) push(row, "large-gap", row.lg);
  }
  out.tables.push_back(std::move(t));
  out.notes.push_back("kappa_plus = " + format_double(q.kappa_plus) + " s^-1");
  out.notes.push_back("photon_number = " + format_double(op.photon_number));
  if (!resonant) out.notes.push_back("drive is detuned from the + mode; large-gap rows omitted");
  return out;
}

// ---------------------------------------------------------------- fig2

CommandOutput cmd_fig2(const RunConfig& cfg) {
  CommandOutput out;
  const CavitySpec base = to_cavity_spec(cfg.cavity);
  add_warnings(out, base);
  const double N = resonant_photon_number(cfg, base);
  const double Om = cfg.mech.Omega_m;
  const std::vector<double> grid = sweep_values(cfg.sweep);
  const std::vector<double>& t1s = cfg.figure.t1_sq_list;

  const auto half = parallel_map(t1s.size(), [&](std::size_t c) {
    return full_noise_at_plus(with_L1(with_t1(base, t1s[c]), 0.5), N, Om);
  });

  struct Row {
    double S, S_lg;
    Regime regime;
  };
  const std::size_t n = grid.size();
  const auto rows = parallel_map(t1s.size() * n, [&](std::size_t k) {
    const CavitySpec s = with_L1(with_t1(base, t1s[k / n]), grid[k % n]);
    return Row{full_noise_at_plus(s, N, Om), force_noise_large_gap(s, N, Om), classify_regime(s, Om)};
  });

  SweepResult t;
  auto& ct1 = t.add_numeric("t1_sq_ppm");
  auto& cx = t.add_numeric("L1_over_L");
  auto& cS = t.add_numeric("S_FF", "full-two-port spectrum at Omega_m, resonant + mode at dx_plus", true);
  auto& cN = t.add_numeric("S_FF_norm", "S_FF / S_FF(L1 = L/2)");
  auto& cLG = t.add_numeric("S_FF_large_gap_norm", "large-gap closed form / its value at L1 = L/2");
  auto& cM = t.add_numeric("L1_min_over_L", "(|t1|^2+T1)/(|t1|^2+T1+|t2|^2+T2)");
  auto& cR = t.add_text("regime");
  for (std::size_t c = 0; c < t1s.size(); ++c) {
    const CavitySpec s = with_t1(base, t1s[c]);
    const double lg_half = force_noise_large_gap(with_L1(s, 0.5), N, Om);
    const double B = optimal_L1(s).B;
    for (std::size_t i = 0; i < n; ++i) {
      const Row& row = rows[c * n + i];
      std::get<0>(ct1.data).push_back(t1s[c]);
      std::get<0>(cx.data).push_back(grid[i]);
      std::get<0>(cS.data).push_back(row.S);
      std::get<0>(cN.data).push_back(row.S / half[c]);
      std::get<0>(cLG.data).push_back(row.S_lg / lg_half);
      std::get<0>(cM.data).push_back(B);
      std::get<1>(cR.data).push_back(std::string(to_string(row.regime)));
    }
  }
  out.tables.push_back(std::move(t));

  // Inset: swept optimum against the resolved-sideband suppression factor.
  const std::vector<double> inset_t1 =
      log_space(cfg.figure.inset_start, cfg.figure.inset_stop, static_cast<std::size_t>(cfg.figure.inset_points));
  struct InsetRow {
    double reduction, argmin, exact, limit, B, kappa0;
    Regime regime;
  };
  const auto inset = parallel_map(inset_t1.size(), [&](std::size_t i) {
    const CavitySpec s = with_t1(base, inset_t1[i]);
    const double ref = full_noise_at_plus(with_L1(s, 0.5), N, Om);
    // Optimise over y = 1 - L1/L on a log grid; the minimum sits close to L1 = L.
    GridOptimizeOptions o;
    o.points = 201;
    o.log_scale = true;
    o.xtol = 1e-13;
    const GridOptimum best =
        grid_optimize([&](double y) { return full_noise_at_plus(with_L1(s, 1.0 - y), N, Om) / ref; }, 1e-7, 0.5, o);
    const Suppression sup = suppression_vs_mim(s);
    const MinForceNoise mf = min_force_noise(s, N, Om);
    return InsetRow{best.value, 1.0 - best.x, sup.exact, sup.limit, mf.B, empty_cavity_decay_rate(s), mf.regime};
  });
  SweepResult in;
  in.name = "inset";
  auto& it1 = in.add_numeric("t1_sq_ppm");
  auto& ired = in.add_numeric("optimal_reduction", "min over L1 of S_FF_norm (grid + golden section)");
  auto& iarg = in.add_numeric("argmin_L1_over_L");
  auto& iex = in.add_numeric("suppression_exact", "4(|t1|^2+T1)(|t2|^2+T2)/(|t1|^2+T1+|t2|^2+T2)^2");
  auto& ilim = in.add_numeric("suppression_limit", "4(T2+|t2|^2)/|t1|^2");
  auto& idev = in.add_numeric("relative_deviation", "optimal_reduction / suppression_exact - 1");
  auto& iB = in.add_numeric("L1_min_over_L");
  auto& ireg = in.add_text("regime", "at L1_min: resolved if sqrt(B) Omega_m >= 2 kappa_0");
  auto& isb = in.add_text("sideband_resolved", "Omega_m > kappa_0");
  for (std::size_t i = 0; i < inset.size(); ++i) {
    const InsetRow& row = inset[i];
    std::get<0>(it1.data).push_back(inset_t1[i]);
    std::get<0>(ired.data).push_back(row.reduction);
    std::get<0>(iarg.data).push_back(row.argmin);
    std::get<0>(iex.data).push_back(row.exact);
    std::get<0>(ilim.data).push_back(row.limit);
    std::get<0>(idev.data).push_back(row.reduction / row.exact - 1.0);
    std::get<0>(iB.data).push_back(row.B);
    std::get<1>(ireg.data).push_back(std::string(to_string(row.regime)));
    std::get<1>(isb.data).push_back(Om > row.kappa0 ? "true" : "false");
  }
  out.tables.push_back(std::move(in));
  return out;
}

// ---------------------------------------------------------------- fig3

CommandOutput cmd_fig3(const RunConfig& cfg) {
  CommandOutput out;
  const CavitySpec base = to_cavity_spec(cfg.cavity);
  add_warnings(out, base);
  const double N = resonant_photon_number(cfg, base);
  const MechanicalMode mech = to_mechanical_mode(cfg.mech);
  const std::vector<double> grid = sweep_values(cfg.sweep);

  // Curves: each fixed t1 plus the pointwise-optimal t1 (empty optional).
  std::vector<std::optional<double>> curves;
  for (double t : cfg.figure.t1_sq_list) curves.emplace_back(t);
  curves.emplace_back(std::nullopt);

  auto spec_for = [&](const std::optional<double>& t1, double x) {
    CavitySpec s = with_L1(base, x);
    s.t1_sq = t1 ? *t1 * kPpm : optimal_t1_at(s);
    return s;
  };
  struct Point {
    double t1, x_res_sq, ratio, validity;
  };
  auto evaluate = [&](const CavitySpec& s) {
    const QndReport q = qnd_ratio(s, N, mech);
    return Point{s.t1_sq / kPpm, q.x_res_sq, q.ratio, q.validity_ratio};
  };

  const std::size_t n = grid.size();
  const auto pts = parallel_map(curves.size() * n, [&](std::size_t k) {
    return evaluate(spec_for(curves[k / n], grid[k % n]));
  });

  SweepResult t;
  auto& cc = t.add_text("curve");
  auto& cx = t.add_numeric("L1_over_L");
  auto& ct = t.add_numeric("t1_sq_ppm", "fixed, or the positive root of 2 p t^2 + r t - r m = 0 (pointwise optimum)");
  auto& cxr = t.add_numeric("x_res_sq", "x_zpf^2 Gamma_ba / Gamma_meas");
  auto& cr = t.add_numeric("ratio", "64/(2n+1) g1 g2/(kappa_- kappa_+) beta^2 kappa1_ext/kappa_+");
  auto& cv = t.add_numeric("validity_ratio", "(Omega_m/kappa_+)/sqrt((g1+g2) kappa2/(4 g2 kappa_-))");
  auto& ch = t.add_numeric("x_res_sq_at_half", "x_res_sq at L1 = L/2 for this curve");
  auto& cmn = t.add_numeric("x_res_sq_at_L1_min", "x_res_sq at L1_min for this curve");
  auto& cm = t.add_numeric("L1_min_over_L");
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const std::string label = curves[c] ? ppm_label(*curves[c]) : "opt";
    const Point at_half = evaluate(spec_for(curves[c], 0.5));
    CavitySpec s_min = base;
    if (curves[c]) {
      s_min.t1_sq = *curves[c] * kPpm;
    } else {
      s_min.t1_sq = std::sqrt(base.T1 * (base.t2_sq + base.T1 + base.T2));
    }
    const double Bmin = optimal_L1(s_min).B;
    const Point at_min = evaluate(with_L1(s_min, Bmin));
    for (std::size_t i = 0; i < n; ++i) {
      const Point& p = pts[c * n + i];
      std::get<1>(cc.data).push_back(label);
      std::get<0>(cx.data).push_back(grid[i]);
      std::get<0>(ct.data).push_back(p.t1);
      std::get<0>(cxr.data).push_back(p.x_res_sq);
      std::get<0>(cr.data).push_back(p.ratio);
      std::get<0>(cv.data).push_back(p.validity);
      std::get<0>(ch.data).push_back(at_half.x_res_sq);
      std::get<0>(cmn.data).push_back(at_min.x_res_sq);
      std::get<0>(cm.data).push_back(Bmin);
    }
  }
  out.tables.push_back(std::move(t));
  out.notes.push_back("x_zpf = " + format_double(mech.x_zpf) + " m");
  return out;
}

// ---------------------------------------------------------------- single-row reports

SweepResult single_row(const std::vector<std::pair<std::string, double>>& values,
                       const std::map<std::string, std::string>& formulas = {},
                       const std::vector<std::string>& spectral = {},
                       const std::vector<std::pair<std::string, std::string>>& text = {}) {
  SweepResult t;
  for (const auto& [name, v] : values) {
    const auto f = formulas.find(name);
    const bool sd = std::find(spectral.begin(), spectral.end(), name) != spectral.end();
    std::get<0>(t.add_numeric(name, f == formulas.end() ? "" : f->second, sd).data).push_back(v);
  }
  for (const auto& [name, v] : text) std::get<1>(t.add_text(name).data).push_back(v);
  return t;
}

CommandOutput cmd_trap(const RunConfig& cfg) {
  CommandOutput out;
  const CavitySpec spec = to_cavity_spec(cfg.cavity);
  add_warnings(out, spec);
  const double N = resonant_photon_number(cfg, spec);
  const TrapReport tr = optical_spring(spec, N);
  const TrapNoiseRatio nr = trap_noise_ratio(spec, cfg.mech.Omega_m);
  const CouplingRates r = derive_couplings(spec);
  const QuadraticPointSummary q = quadratic_point_summary(spec, r);
  out.tables.push_back(single_row(
      {{"photon_number", N},
       {"k_opt", tr.k_opt},
       {"k_from_power", tr.k_from_power},
       {"omega_in", tr.omega_in},
       {"P_circ", tr.P_circ},
       {"S_FF_free_space", tr.S_FF_free_space},
       {"noise_ratio_exact", nr.exact},
       {"noise_ratio_limit", nr.limit},
       {"noise_ratio_at_Omega", nr.at_Omega},
       {"qdc_curvature", q.qdc_curvature},
       {"dx_plus", q.dx_plus}},
      {{"k_opt", "hbar |d^2 omega_+/dx^2| N"},
       {"k_from_power", "8 omega_in P_circ / (|t_m| c^2)"},
       {"P_circ", "hbar omega_in (c/2L) N"},
       {"S_FF_free_space", "8 hbar omega_in P_circ / c^2"},
       {"noise_ratio_exact", "(|t1|^2+T1)(|t2|^2+T2) / (2|t_m|^2 (|t1|^2+T1+|t2|^2+T2))"},
       {"noise_ratio_limit", "(|t2|^2+T2) / (2|t_m|^2)"},
       {"noise_ratio_at_Omega", "noise_ratio_limit (1 + 4 B X)/(1 + 4 X), X = Omega_m^2/kappa_0^2"}},
      {"S_FF_free_space"}));
  return out;
}

CommandOutput cmd_qnd(const RunConfig& cfg) {
  CommandOutput out;
  const CavitySpec spec = to_cavity_spec(cfg.cavity);
  add_warnings(out, spec);
  const double N = resonant_photon_number(cfg, spec);
  const MechanicalMode mech = to_mechanical_mode(cfg.mech);
  const QndReport q = qnd_ratio(spec, N, mech);
  const QndOptima o = qnd_optima(spec, mech);
  out.tables.push_back(single_row(
      {{"photon_number", N},
       {"x_zpf", mech.x_zpf},
       {"Gamma_meas", q.Gamma_meas},
       {"Gamma_meas_chained", q.Gamma_meas_chained},
       {"Gamma_ba", q.Gamma_ba},
       {"Gamma_ba_general", q.Gamma_ba_general},
       {"ratio", q.ratio},
       {"x_res_sq", q.x_res_sq},
       {"A", q.A},
       {"phi", q.phi},
       {"dphi_domega", q.dphi_domega},
       {"validity_ratio", q.validity_ratio},
       {"L1_min", o.L1_min},
       {"t1_opt_ppm", o.t1_opt / kPpm},
       {"t1_mim_ppm", o.t1_mim / kPpm},
       {"ratio_L1_min", o.ratio_L1min},
       {"ratio_mim", o.ratio_mim},
       {"ratio_opt", o.ratio_opt},
       {"ratio_mim_opt", o.ratio_mim_opt},
       {"improvement_vs_mim", o.improvement_vs_mim},
       {"improvement_vs_matched", o.improvement_vs_matched},
       {"improvement_fair", o.improvement_fair}},
      {{"Gamma_meas", "(16 N/kappa_+)(beta^2 kappa1_ext/kappa_+)(d^2omega_+/dx^2 x_zpf^2)^2"},
       {"Gamma_meas_chained", "4 |abar_out|^2 (dphi/domega_+ d^2omega_+/dx^2 x_zpf^2)^2"},
       {"Gamma_ba", "(2n+1) x_zpf^2 N kappa_- G1^2 G2^2 / (J^2 (G2-G1)^2)"},
       {"Gamma_ba_general", "x_zpf^2/hbar^2 [(1+n) S_FF(-Omega_m) + n S_FF(Omega_m)]"},
       {"ratio", "64/(2n+1) g1 g2/(kappa_- kappa_+) beta^2 kappa1_ext/kappa_+"},
       {"x_res_sq", "x_zpf^2 Gamma_ba / Gamma_meas"},
       {"t1_opt_ppm", "sqrt(T1 (|t2|^2 + T1 + T2))"},
       {"improvement_vs_mim", "(|t1|^2+T1+|t2|^2+T2)^2 / (4 (|t1|^2+T1)(|t2|^2+T2))"}},
      {}, {{"valid", q.valid ? "true" : "false"}}));
  return out;
}

CommandOutput cmd_optimize(const RunConfig& cfg) {
  CommandOutput out;
  const CavitySpec spec = to_cavity_spec(cfg.cavity);
  add_warnings(out, spec);
  const double N = resonant_photon_number(cfg, spec);
  const double Om = cfg.mech.Omega_m;
  const OptimalLength opt = optimal_L1(spec);
  const Suppression sup = suppression_vs_mim(spec);
  const MinForceNoise mf = min_force_noise(spec, N, Om);

  GridOptimizeOptions o;
  o.points = 201;
  o.log_scale = true;
  o.xtol = 1e-14;
  const GridOptimum best =
      grid_optimize([&](double y) { return full_noise_at_plus(with_L1(spec, 1.0 - y), N, Om); }, 1e-7, 0.5, o);
  const double numeric_L1 = (1.0 - best.x) * spec.L;

  out.tables.push_back(single_row(
      {{"L1_min", opt.L1_min},
       {"B", opt.B},
       {"L1_argmin_numeric", numeric_L1},
       {"suppression_exact", sup.exact},
       {"suppression_limit", sup.limit},
       {"S_min", mf.value},
       {"S_min_resolved", mf.resolved_value},
       {"S_min_fast_cavity", mf.fast_cavity_value},
       {"S_full_at_argmin", best.value}},
      {{"L1_min", "L (|t1|^2+T1)/(|t1|^2+T1+|t2|^2+T2)"},
       {"L1_argmin_numeric", "argmin over L1 of the full-two-port S_FF(Omega_m)"},
       {"suppression_exact", "4(|t1|^2+T1)(|t2|^2+T2)/(|t1|^2+T1+|t2|^2+T2)^2"},
       {"suppression_limit", "4(T2+|t2|^2)/|t1|^2"},
       {"S_min", "2 hbar^2 N w0^2/(c L |t_m|^2)(|t2|^2+T2)(1+4B Omega^2/kappa_+^2)/(1+4 Omega^2/kappa_+^2)"}},
      {"S_min", "S_min_resolved", "S_min_fast_cavity", "S_full_at_argmin"},
      {{"regime", std::string(to_string(mf.regime))}}));
  return out;
}

// ---------------------------------------------------------------- simulate

CommandOutput cmd_simulate(const RunConfig& cfg) {
  CommandOutput out;
  const CavitySpec spec = to_cavity_spec(cfg.cavity);
  add_warnings(out, spec);
  const SimulateConfig& sc = cfg.simulate;
  FieldState init;
  init.alpha1 = {sc.alpha1_re, sc.alpha1_im};
  init.alpha2 = {sc.alpha2_re, sc.alpha2_im};
  SimulationOptions opts;
  opts.dx = sc.dx;
  opts.sample_every = static_cast<std::size_t>(sc.sample_every);
  opts.timescale_margin = sc.timescale_margin;
  const auto traj = time_domain_fields(spec, init, sc.duration, sc.dt, opts);

  SweepResult t;
  auto& ct = t.add_numeric("time_s");
  auto& a1r = t.add_numeric("re_alpha1", "RK4 on d(alpha)/dt = M alpha, round-trip generator");
  auto& a1i = t.add_numeric("im_alpha1");
  auto& a2r = t.add_numeric("re_alpha2");
  auto& a2i = t.add_numeric("im_alpha2");
  for (const FieldState& s : traj) {
    std::get<0>(ct.data).push_back(s.time);
    std::get<0>(a1r.data).push_back(s.alpha1.real());
    std::get<0>(a1i.data).push_back(s.alpha1.imag());
    std::get<0>(a2r.data).push_back(s.alpha2.real());
    std::get<0>(a2i.data).push_back(s.alpha2.imag());
  }
  out.tables.push_back(std::move(t));
  out.notes.push_back("timescale_ratio = " + format_double(timescale_ratio(spec)));

  if (sc.fit) {
    const RingdownFit fit = fit_ringdown(traj);
    const CouplingRates r = derive_couplings(spec);
    const EigenFrequencies e = eigenfrequencies(r, sc.dx);
    const BranchPair k = eigenmode_decay_rates(r, sc.dx);
    auto rate = [&](std::size_t i) { return i < fit.decay_rates.size() ? fit.decay_rates[i] : kNaN; };
    SweepResult f = single_row({{"beat_frequency", fit.beat_frequency},
                                {"decay_rate_1", rate(0)},
                                {"decay_rate_2", rate(1)},
                                {"pair_decay_rate", fit.pair_decay_rate},
                                {"fit_residual", fit.fit_residual},
                                {"expected_gap", e.gap()},
                                {"expected_kappa_plus", k.plus},
                                {"expected_kappa_minus", k.minus}},
                               {{"beat_frequency", "matrix-pencil fit of |alpha1|^2"}});
    f.name = "fit";
    out.tables.push_back(std::move(f));
  }
  return out;
}

// ---------------------------------------------------------------- transmission-map

CommandOutput cmd_transmission_map(const RunConfig& cfg) {
  CommandOutput out;
  const CavitySpec spec = to_cavity_spec(cfg.cavity);
  add_warnings(out, spec);
  const CouplingRates r = derive_couplings(spec);
  const double dxp = quadratic_points(r).plus;
  require_dx_scale(cfg, dxp);
  std::vector<double> dx = sweep_values(cfg.sweep);
  if (cfg.sweep.parameter == "dx_over_dx_plus")
    for (double& v : dx) v *= dxp;
  SweepConfig dsweep{"", "linear", cfg.map.delta_min_over_J * r.J, cfg.map.delta_max_over_J * r.J,
                     cfg.map.delta_points};
  const std::vector<double> deltas = sweep_values(dsweep);

  const auto blocks = parallel_map(dx.size(), [&](std::size_t i) {
    return transmission_map(r, {dx[i]}, deltas);
  });

  SweepResult t;
  auto& cdx = t.add_numeric("dx");
  auto& crel = t.add_numeric("dx_over_dx_plus");
  auto& cD = t.add_numeric("Delta");
  auto& cDJ = t.add_numeric("Delta_over_J");
  auto& cT = t.add_numeric("transmission", "kappa1_ext kappa2_ext |chi_21(0)|^2");
  auto& c1 = t.add_numeric("omega1_uncoupled_offset", "G1 dx");
  auto& c2 = t.add_numeric("omega2_uncoupled_offset", "G2 dx");
  auto& cp = t.add_numeric("omega_plus_offset");
  auto& cm = t.add_numeric("omega_minus_offset");
  for (const auto& block : blocks) {
    for (const TransmissionPoint& p : block) {
      std::get<0>(cdx.data).push_back(p.dx);
      std::get<0>(crel.data).push_back(p.dx / dxp);
      std::get<0>(cD.data).push_back(p.Delta);
      std::get<0>(cDJ.data).push_back(p.Delta / r.J);
      std::get<0>(cT.data).push_back(p.transmission);
      std::get<0>(c1.data).push_back(p.offset_1);
      std::get<0>(c2.data).push_back(p.offset_2);
      std::get<0>(cp.data).push_back(p.offset_plus);
      std::get<0>(cm.data).push_back(p.offset_minus);
    }
  }
  out.tables.push_back(std::move(t));
  out.notes.push_back("J = " + format_double(r.J) + " rad/s");
  return out;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"eigen", "noise",    "fig2",     "fig3",            "trap",
                                                 "qnd",   "optimize", "simulate", "transmission-map"};
  return names;
}

std::vector<double> sweep_values(const SweepConfig& s) {
  const auto n = static_cast<std::size_t>(s.points);
  if (s.scale == "log") return log_space(s.start, s.stop, n);
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i)
    v[i] = i + 1 == n ? s.stop : s.start + (s.stop - s.start) * static_cast<double>(i) / static_cast<double>(n - 1);
  return v;
}

CommandOutput run_command(const std::string& command, const RunConfig& cfg) {
  static const std::map<std::string, std::function<CommandOutput(const RunConfig&)>> table = {
      {"eigen", cmd_eigen},       {"noise", cmd_noise},       {"fig2", cmd_fig2},
      {"fig3", cmd_fig3},         {"trap", cmd_trap},         {"qnd", cmd_qnd},
      {"optimize", cmd_optimize}, {"simulate", cmd_simulate}, {"transmission-map", cmd_transmission_map},
  };
  const auto it = table.find(command);
  if (it == table.end()) throw ValidationError("command", "unknown command '" + command + "'");
  return it->second(cfg);
}

}  // namespace asymcav::cli
