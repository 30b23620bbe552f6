#include "asymcav/applications.hpp"

#include <cmath>

#include "asymcav/errors.hpp"

namespace asymcav {
namespace {

struct PlusPoint {
  CouplingRates rates;
  QuadraticPointSummary q;
};

PlusPoint plus_point(const CavitySpec& spec) {
  PlusPoint p{derive_couplings(spec), {}};
  p.q = quadratic_point_summary(spec, p.rates, Branch::kPlus);
  return p;
}

void require_lossy(double a, double s) {
  if (a + s == 0.0)
    throw NumericError(NumericFailure::kDegenerateLossless, "all mirror transmissions and losses are zero");
}

}  // namespace

TrapReport optical_spring(const CavitySpec& spec, double photon_number) {
  const PlusPoint p = plus_point(spec);
  const double c = kSpeedOfLight;
  TrapReport t;
  t.k_opt = kHbar * p.q.qdc_curvature_magnitude() * photon_number;
  t.omega_in = p.q.omega_plus();
  t.P_circ = kHbar * t.omega_in * (c / (2.0 * spec.L)) * photon_number;
  t.k_from_power = 8.0 * t.omega_in * t.P_circ / (std::sqrt(spec.tm_sq) * c * c);
  t.S_FF_free_space = 8.0 * kHbar * t.omega_in * t.P_circ / (c * c);
  const TrapNoiseRatio r = trap_noise_ratio(spec, 0.0);
  t.noise_ratio_exact = r.exact;
  t.noise_ratio_limit = r.limit;
  return t;
}

TrapNoiseRatio trap_noise_ratio(const CavitySpec& spec, double Omega_m) {
  const double a = spec.loss1();
  const double s = spec.loss2();
  require_lossy(a, s);
  const double half_inv = 1.0 / (2.0 * spec.tm_sq);
  const double B = a / (a + s);
  const double k0 = empty_cavity_decay_rate(spec);
  const double X = 4.0 * Omega_m * Omega_m / (k0 * k0);
  TrapNoiseRatio r;
  r.exact = half_inv * a * s / (a + s);
  r.limit = half_inv * s;
  r.at_Omega = half_inv * s * (1.0 + B * X) / (1.0 + X);
  return r;
}

BackactionRate backaction_rate(const CavitySpec& spec, double photon_number, const MechanicalMode& mech) {
  const PlusPoint p = plus_point(spec);
  const CouplingRates& r = p.rates;
  const OperatingPoint op = resonant_operating_point(r, p.q.dx_plus, photon_number);
  const double x2 = mech.x_zpf * mech.x_zpf;
  const double n = mech.n;

  BackactionRate b;
  const double S_minus = force_noise_full(r, op, -mech.Omega_m);
  const double S_plus = force_noise_full(r, op, mech.Omega_m);
  b.general = x2 / (kHbar * kHbar) * ((1.0 + n) * S_minus + n * S_plus);

  const double dG = r.G2 - r.G1;
  const double G12 = r.G1 * r.G2;
  b.closed_form = (2.0 * n + 1.0) * x2 * photon_number * p.q.kappa_minus * G12 * G12 / (r.J * r.J * dG * dG);

  const double sb = mech.Omega_m / p.q.kappa_plus;
  const double threshold = dG * r.kappa2 / (4.0 * r.G2 * p.q.kappa_minus);
  b.validity_ratio = threshold > 0.0 ? sb * sb / threshold : HUGE_VAL;
  b.valid = b.validity_ratio >= kValidityMargin;
  return b;
}

double reflection_amplitude(double kappa_plus, double coupling, double delta) {
  const cdouble i{0.0, 1.0};
  const cdouble den = i * delta - 0.5 * kappa_plus;
  return std::abs((den + coupling) / den);
}

double reflected_phase(double kappa_plus, double coupling, double delta) {
  const double den = delta * delta + 0.25 * kappa_plus * kappa_plus - 0.5 * coupling * kappa_plus;
  return std::atan(coupling * delta / den);
}

double reflected_phase_slope(double kappa_plus, double coupling) {
  const double den = 0.25 * kappa_plus * kappa_plus - 0.5 * coupling * kappa_plus;
  if (den == 0.0)
    throw NumericError(NumericFailure::kPhaseSlopeSingular,
                       "kappa_+^2/4 equals beta^2 kappa1_ext kappa_+/2; the phase slope diverges");
  return -coupling / den;
}

HomodyneChain homodyne_chain(const CavitySpec& spec, double photon_number, double delta_plus) {
  const PlusPoint p = plus_point(spec);
  HomodyneChain h;
  h.kappa_plus = p.q.kappa_plus;
  h.coupling = p.q.beta * p.q.beta * p.rates.kappa1_ext;
  if (h.coupling == 0.0)
    throw NumericError(NumericFailure::kUndrivableMode, "input mirror is closed (t1_sq = 0)");
  h.A = reflection_amplitude(h.kappa_plus, h.coupling, delta_plus);
  h.phi = reflected_phase(h.kappa_plus, h.coupling, delta_plus);
  h.dphi_domega = reflected_phase_slope(h.kappa_plus, h.coupling);
  h.abar1_out = (0.5 * h.kappa_plus - h.coupling) * std::sqrt(photon_number) / std::sqrt(h.coupling);
  return h;
}

MeasurementRate measurement_rate(const CavitySpec& spec, double photon_number, const MechanicalMode& mech) {
  const PlusPoint p = plus_point(spec);
  const HomodyneChain h = homodyne_chain(spec, photon_number, 0.0);
  const double shift = p.q.qdc_curvature * mech.x_zpf * mech.x_zpf;
  MeasurementRate m;
  const double chain = h.dphi_domega * shift;
  m.chained = 4.0 * h.abar1_out * h.abar1_out * chain * chain;
  m.simplified = 16.0 * photon_number / h.kappa_plus * (h.coupling / h.kappa_plus) * shift * shift;
  return m;
}

QndReport qnd_ratio(const CavitySpec& spec, double photon_number, const MechanicalMode& mech) {
  const PlusPoint p = plus_point(spec);
  const CouplingRates& r = p.rates;
  const HomodyneChain h = homodyne_chain(spec, photon_number, 0.0);
  const MeasurementRate m = measurement_rate(spec, photon_number, mech);
  const BackactionRate b = backaction_rate(spec, photon_number, mech);

  QndReport out;
  out.Gamma_meas = m.simplified;
  out.Gamma_meas_chained = m.chained;
  out.Gamma_ba = b.closed_form;
  out.Gamma_ba_general = b.general;
  out.A = h.A;
  out.phi = h.phi;
  out.dphi_domega = h.dphi_domega;

  const double g1 = mech.x_zpf * std::abs(r.G1);
  const double g2 = mech.x_zpf * std::abs(r.G2);
  const double kp = p.q.kappa_plus;
  const double km = p.q.kappa_minus;
  out.ratio = 64.0 / (2.0 * mech.n + 1.0) * (g1 * g2 / (km * kp)) * (r.kappa1_ext * spec.L1 / (kp * spec.L));

  const double x2 = mech.x_zpf * mech.x_zpf;
  out.x_res_sq = out.Gamma_meas > 0.0 ? x2 * out.Gamma_ba / out.Gamma_meas : x2 / out.ratio;

  const double threshold = (g1 + g2) * r.kappa2 / (4.0 * g2 * km);
  out.validity_ratio = threshold > 0.0 ? (mech.Omega_m / kp) / std::sqrt(threshold) : HUGE_VAL;
  out.valid = out.validity_ratio >= kValidityMargin;
  return out;
}

double qnd_ratio_closed_form(const CavitySpec& spec, const MechanicalMode& mech) {
  const CouplingRates r = derive_couplings(spec);
  const double L = spec.L, L1 = spec.L1, L2 = spec.L2();
  const double kp = (L1 * r.kappa1 + L2 * r.kappa2) / L;
  const double km = (L2 * r.kappa1 + L1 * r.kappa2) / L;
  const double g1g2 = mech.x_zpf * mech.x_zpf * std::abs(r.G1 * r.G2);
  return 64.0 / (2.0 * mech.n + 1.0) * (g1g2 / (km * kp)) * (r.kappa1_ext * L1 / (kp * L));
}

QndOptima qnd_optima(const CavitySpec& spec, const MechanicalMode& mech) {
  const OptimalLength opt = optimal_L1(spec);
  const double t1 = spec.t1_sq, t2 = spec.t2_sq, T1 = spec.T1, T2 = spec.T2;
  const double a = t1 + T1;
  const double s = t2 + T2;
  if (s == 0.0)
    throw NumericError(NumericFailure::kDegenerateLossless, "back mirror is lossless (t2_sq + T2 = 0)");
  const double w = spec.omega0() * mech.x_zpf / kSpeedOfLight;
  const double pre = w * w / (2.0 * mech.n + 1.0);

  QndOptima q;
  q.L1_min = opt.L1_min;
  q.B = opt.B;
  q.ratio_L1min = t1 > 0.0 ? 256.0 * pre * t1 / (a * s * (a + s)) : 0.0;
  q.ratio_mim = 1024.0 * pre * t1 / ((a + s) * (a + s) * (a + s));
  q.improvement_vs_mim = 0.25 * (a + s) * (a + s) / (a * s);

  const double root = std::sqrt(T1 * (t2 + T1 + T2));
  q.t1_opt = root;
  q.ratio_opt = 256.0 * pre * (t2 + 2.0 * T1 + T2 - 2.0 * root) / (s * s * s);

  const double am = t2 + T1;
  q.ratio_matched = t2 > 0.0 ? 256.0 * pre * t2 / (am * s * (am + s)) : 0.0;
  q.improvement_vs_matched = q.ratio_matched > 0.0 ? q.ratio_opt / q.ratio_matched : HUGE_VAL;
  if (T1 == T2 && t2 > 0.0) {
    const double y = T1 / t2;
    q.improvement_matched_closed_form = 2.0 + 6.0 * y - 4.0 * std::sqrt(y * (1.0 + 2.0 * y));
  } else {
    q.improvement_matched_closed_form = std::nan("");
  }

  const double m = t2 + T1 + T2;
  q.t1_mim = 0.5 * m;
  q.ratio_mim_opt = 4096.0 / 27.0 * pre / (m * m);
  q.improvement_fair = 27.0 / 16.0 * m * m * (t2 + 2.0 * T1 + T2 - 2.0 * root) / (s * s * s);
  return q;
}

double optimal_t1_at(const CavitySpec& spec) {
  // Maximise t / ((p t + r)(t + m)^2), p = L2^2, r = L2^2 T1 + L1^2 s, m = T1 + s.
  const double L1 = spec.L1, L2 = spec.L2();
  const double s = spec.loss2();
  const double p = L2 * L2;
  const double r = p * spec.T1 + L1 * L1 * s;
  const double m = spec.T1 + s;
  // Positive root of 2 p t^2 + r t - r m = 0, written without cancellation.
  return 2.0 * m * r / (r + std::sqrt(r * r + 8.0 * p * m * r));
}

}  // namespace asymcav
