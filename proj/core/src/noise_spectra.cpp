#include "asymcav/noise_spectra.hpp"

#include <algorithm>
#include <cmath>

#include "asymcav/errors.hpp"

namespace asymcav {
namespace {

constexpr cdouble kI{0.0, 1.0};

// Large-gap eigenmode rates at the "+" quadratic point expressed through
// the sub-cavity rates.
struct LargeGapRates {
  double kappa1, kappa2, kappa_plus, kappa_minus;
};

LargeGapRates large_gap_rates(const CavitySpec& spec) {
  const CouplingRates r = derive_couplings(spec);
  const double L = spec.L, L1 = spec.L1, L2 = spec.L2();
  return {r.kappa1, r.kappa2, (L1 * r.kappa1 + L2 * r.kappa2) / L, (L2 * r.kappa1 + L1 * r.kappa2) / L};
}

double photon_prefactor(const CavitySpec& spec, double photon_number) {
  if (spec.tm_sq == 0.0)
    throw NumericError(NumericFailure::kDivisionDegenerate, "closed form needs tm_sq > 0");
  const double w0 = spec.omega0();
  return kHbar * kHbar * photon_number * w0 * w0 / (kSpeedOfLight * kSpeedOfLight * spec.tm_sq);
}

cdouble port1_transfer(const CouplingRates& rates, double Delta, double dx) {
  const SusceptibilityMatrix X = eigenmode_susceptibility(rates, Delta, dx, 0.0);
  const Mixing m = mixing(rates, dx);
  return (m.cos_plus * X.chi11 + m.sin_plus * X.chi21) * std::sqrt(rates.kappa1_ext);
}

}  // namespace

std::string_view to_string(DetuningMode mode) {
  switch (mode) {
    case DetuningMode::kAbsolute: return "absolute";
    case DetuningMode::kFromBare: return "bare";
    case DetuningMode::kFromPlus: return "plus";
  }
  return "plus";
}

DetuningMode detuning_mode_from_string(std::string_view s) {
  if (s == "absolute") return DetuningMode::kAbsolute;
  if (s == "bare") return DetuningMode::kFromBare;
  if (s == "plus") return DetuningMode::kFromPlus;
  throw ValidationError("drive.detuning_mode", "expected one of absolute, bare, plus");
}

void validate(const DriveConfig& drive, const std::string& prefix) {
  const std::string p = prefix.empty() ? "" : prefix + ".";
  if (!std::isfinite(drive.detuning)) throw ValidationError(p + "detuning", "must be finite");
  if (drive.port != 1 && drive.port != 2) throw ValidationError(p + "port", "must be 1 or 2");
  if (drive.photon_number.has_value() == drive.input_flux.has_value())
    throw ValidationError(p + "photon_number", "exactly one of photon_number and input_flux must be set");
  if (drive.photon_number && (!std::isfinite(*drive.photon_number) || *drive.photon_number < 0.0))
    throw ValidationError(p + "photon_number", "must be finite and non-negative");
  if (drive.input_flux && (!std::isfinite(*drive.input_flux) || *drive.input_flux < 0.0))
    throw ValidationError(p + "input_flux", "must be finite and non-negative");
}

OperatingPoint resolve_operating_point(const CouplingRates& rates, const DriveConfig& drive, double dx) {
  validate(drive);
  if (drive.port != 1)
    throw NumericError(NumericFailure::kUnsupportedPort, "only port-1 drive is modelled");
  OperatingPoint op;
  op.dx = dx;
  op.port = 1;
  switch (drive.detuning_mode) {
    case DetuningMode::kAbsolute: op.Delta = drive.detuning - rates.omega0; break;
    case DetuningMode::kFromBare: op.Delta = drive.detuning; break;
    case DetuningMode::kFromPlus: op.Delta = drive.detuning + eigenfrequencies(rates, dx).offset_plus; break;
  }
  if (drive.input_flux) {
    op.input_amplitude = std::sqrt(*drive.input_flux);
    op.photon_number = flux_to_photon_number(rates, op.Delta, dx, *drive.input_flux);
  } else {
    op.photon_number = *drive.photon_number;
    op.input_amplitude = std::sqrt(photon_number_to_flux(rates, op.Delta, dx, op.photon_number));
  }
  return op;
}

OperatingPoint resonant_operating_point(const CouplingRates& rates, double dx, double photon_number) {
  DriveConfig d;
  d.detuning_mode = DetuningMode::kFromPlus;
  d.photon_number = photon_number;
  return resolve_operating_point(rates, d, dx);
}

cdouble inverse_sub_cavity_susceptibility(const CouplingRates& rates, double Delta, double dx, double omega,
                                          int j) {
  const double G = j == 1 ? rates.G1 : rates.G2;
  const double kappa = j == 1 ? rates.kappa1 : rates.kappa2;
  return -kI * (Delta - G * dx + omega) + 0.5 * kappa;
}

cdouble sub_cavity_susceptibility(const CouplingRates& rates, double Delta, double dx, double omega, int j) {
  const cdouble inv = inverse_sub_cavity_susceptibility(rates, Delta, dx, omega, j);
  if (inv == 0.0)
    throw NumericError(NumericFailure::kDivisionDegenerate, "undamped sub-cavity driven exactly on resonance");
  return 1.0 / inv;
}

SusceptibilityMatrix eigenmode_susceptibility(const CouplingRates& rates, double Delta, double dx, double omega) {
  const cdouble c1 = inverse_sub_cavity_susceptibility(rates, Delta, dx, omega, 1);
  const cdouble c2 = inverse_sub_cavity_susceptibility(rates, Delta, dx, omega, 2);
  const cdouble det = c1 * c2 + rates.J * rates.J;
  if (det == 0.0)
    throw NumericError(NumericFailure::kDivisionDegenerate, "coupled susceptibility has an undamped pole here");
  const cdouble off = kI * rates.J / det;
  return {c2 / det, off, off, c1 / det, omega};
}

MeanFields steady_state_fields(const CouplingRates& rates, const OperatingPoint& op) {
  if (op.port != 1) throw NumericError(NumericFailure::kUnsupportedPort, "only port-1 drive is modelled");
  const SusceptibilityMatrix X = eigenmode_susceptibility(rates, op.Delta, op.dx, 0.0);
  const double in = std::sqrt(rates.kappa1_ext) * op.input_amplitude;
  const Mixing m = mixing(rates, op.dx);
  MeanFields f;
  f.abar1 = X.chi11 * in;
  f.abar2 = X.chi21 * in;
  f.abar_plus = m.cos_plus * f.abar1 + m.sin_plus * f.abar2;
  f.abar_minus = m.cos_minus * f.abar1 + m.sin_minus * f.abar2;
  return f;
}

double photons_per_flux(const CouplingRates& rates, double Delta, double dx) {
  return std::norm(port1_transfer(rates, Delta, dx));
}

double flux_to_photon_number(const CouplingRates& rates, double Delta, double dx, double flux) {
  return flux * photons_per_flux(rates, Delta, dx);
}

double photon_number_to_flux(const CouplingRates& rates, double Delta, double dx, double photons) {
  if (photons == 0.0) return 0.0;
  const double g = photons_per_flux(rates, Delta, dx);
  if (g == 0.0)
    throw NumericError(NumericFailure::kUndrivableMode, "the \"+\" mode is not reachable from port 1");
  return photons / g;
}

double force_noise_full(const CouplingRates& rates, const OperatingPoint& op, double omega) {
  const MeanFields f = steady_state_fields(rates, op);
  const SusceptibilityMatrix X = eigenmode_susceptibility(rates, op.Delta, op.dx, omega);
  const cdouble a1c = std::conj(f.abar1);
  const cdouble a2c = std::conj(f.abar2);
  const cdouble A1 = -kHbar * (rates.G1 * X.chi11 * a1c + rates.G2 * X.chi21 * a2c);
  const cdouble A2 = -kHbar * (rates.G1 * X.chi12 * a1c + rates.G2 * X.chi22 * a2c);
  return rates.kappa1 * std::norm(A1) + rates.kappa2 * std::norm(A2);
}

double force_noise_large_gap(const CavitySpec& spec, double photon_number, double omega) {
  const LargeGapRates k = large_gap_rates(spec);
  const double L = spec.L, L1 = spec.L1, L2 = spec.L2();
  const double w2 = omega * omega;
  const double num = 4.0 * L1 * k.kappa_minus * w2 + L * k.kappa_plus * k.kappa_plus * k.kappa2;
  const double den = w2 + 0.25 * k.kappa_plus * k.kappa_plus;
  return photon_prefactor(spec, photon_number) * (L2 / (L * L)) * num / den;
}

double large_gap_margin(const CavitySpec& spec, double omega) {
  const CouplingRates r = derive_couplings(spec);
  const double gap = 2.0 * kSpeedOfLight * std::sqrt(spec.tm_sq) / spec.L;
  const double scale = std::max({r.kappa1, r.kappa2, std::abs(omega)});
  return scale > 0.0 ? gap / scale : HUGE_VAL;
}

double force_noise_single_port(const CavitySpec& spec, double photon_number, double omega) {
  const CouplingRates r = derive_couplings(spec);
  const double kp = spec.L1 * r.kappa1 / spec.L;
  const double w2 = omega * omega;
  const double geo = 2.0 * spec.L2() / spec.L;
  return geo * geo * photon_prefactor(spec, photon_number) * w2 * kp / (w2 + 0.25 * kp * kp);
}

std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::kResolvedSideband: return "resolved-sideband";
    case Regime::kFastCavity: return "fast-cavity";
    case Regime::kIntermediate: return "intermediate";
  }
  return "intermediate";
}

namespace {

Regime classify(double sqrtB, double kappa_plus, double omega) {
  const double w = std::abs(omega);
  if (sqrtB * w >= 2.0 * kappa_plus) return Regime::kResolvedSideband;
  if (w <= 0.5 * kappa_plus) return Regime::kFastCavity;
  return Regime::kIntermediate;
}

}  // namespace

Regime classify_regime(const CavitySpec& spec, double omega) {
  const LargeGapRates k = large_gap_rates(spec);
  double B = 1.0;
  if (k.kappa2 > 0.0) B = std::min(1.0, spec.L1 * k.kappa_minus / (spec.L * k.kappa2));
  return classify(std::sqrt(B), k.kappa_plus, omega);
}

std::string_view to_string(NoiseMethod m) {
  switch (m) {
    case NoiseMethod::kFullTwoPort: return "full-two-port";
    case NoiseMethod::kFullSinglePort: return "full-single-port";
    case NoiseMethod::kLargeGap: return "large-gap";
    case NoiseMethod::kResonantSinglePort: return "resonant-single-port";
  }
  return "full-two-port";
}

NoiseSpectrum force_noise_spectrum(const CavitySpec& spec, double photon_number,
                                   const std::vector<double>& frequencies, NoiseMethod method) {
  NoiseSpectrum out;
  out.method = method;
  out.frequencies = frequencies;
  out.values.reserve(frequencies.size());
  out.regime.reserve(frequencies.size());

  CavitySpec eval = spec;
  if (method == NoiseMethod::kFullSinglePort) {
    eval.t2_sq = 0.0;
    eval.T2 = 0.0;
  }
  std::optional<CouplingRates> rates;
  std::optional<OperatingPoint> op;
  if (method == NoiseMethod::kFullTwoPort || method == NoiseMethod::kFullSinglePort) {
    rates = derive_couplings(eval);
    op = resonant_operating_point(*rates, quadratic_points(*rates).plus, photon_number);
  }
  for (double w : frequencies) {
    double v = 0.0;
    switch (method) {
      case NoiseMethod::kFullTwoPort:
      case NoiseMethod::kFullSinglePort: v = force_noise_full(*rates, *op, w); break;
      case NoiseMethod::kLargeGap: v = force_noise_large_gap(eval, photon_number, w); break;
      case NoiseMethod::kResonantSinglePort: v = force_noise_single_port(eval, photon_number, w); break;
    }
    out.values.push_back(v);
    out.regime.push_back(classify_regime(eval, w));
  }
  return out;
}

OptimalLength optimal_L1(const CavitySpec& spec) {
  const double total = spec.loss1() + spec.loss2();
  if (total == 0.0)
    throw NumericError(NumericFailure::kDegenerateLossless, "all mirror transmissions and losses are zero");
  const double B = spec.loss1() / total;
  return {B * spec.L, B};
}

MinForceNoise min_force_noise(const CavitySpec& spec, double photon_number, double Omega_m) {
  const OptimalLength opt = optimal_L1(spec);
  const double kappa_plus = empty_cavity_decay_rate(spec);
  const double x = 4.0 * Omega_m * Omega_m / (kappa_plus * kappa_plus);
  // 2 hbar^2 N w0^2 / (c L |t_m|^2)
  const double pref = 2.0 * kSpeedOfLight / spec.L * photon_prefactor(spec, photon_number);
  const double s = spec.loss2();
  MinForceNoise m;
  m.B = opt.B;
  m.L1_min = opt.L1_min;
  m.value = pref * s * (1.0 + opt.B * x) / (1.0 + x);
  m.resolved_value = pref * opt.B * s;
  m.fast_cavity_value = pref * s;
  m.regime = classify(std::sqrt(opt.B), kappa_plus, Omega_m);
  return m;
}

Suppression suppression_vs_mim(const CavitySpec& spec) {
  const double a = spec.loss1();
  const double s = spec.loss2();
  if (a + s == 0.0)
    throw NumericError(NumericFailure::kDegenerateLossless, "all mirror transmissions and losses are zero");
  Suppression out;
  out.exact = 4.0 * a * s / ((a + s) * (a + s));
  out.limit = spec.t1_sq > 0.0 ? 4.0 * (spec.T2 + spec.t2_sq) / spec.t1_sq : HUGE_VAL;
  return out;
}

double transmission(const CouplingRates& rates, double Delta, double dx) {
  const SusceptibilityMatrix X = eigenmode_susceptibility(rates, Delta, dx, 0.0);
  return rates.kappa1_ext * rates.kappa2_ext * std::norm(X.chi21);
}

std::vector<TransmissionPoint> transmission_map(const CouplingRates& rates, const std::vector<double>& dx_grid,
                                                const std::vector<double>& Delta_grid) {
  std::vector<TransmissionPoint> out;
  out.reserve(dx_grid.size() * Delta_grid.size());
  for (double dx : dx_grid) {
    const EigenFrequencies e = eigenfrequencies(rates, dx);
    for (double D : Delta_grid) {
      TransmissionPoint p;
      p.dx = dx;
      p.Delta = D;
      p.transmission = transmission(rates, D, dx);
      p.offset_1 = rates.G1 * dx;
      p.offset_2 = rates.G2 * dx;
      p.offset_plus = e.offset_plus;
      p.offset_minus = e.offset_minus;
      out.push_back(p);
    }
  }
  return out;
}

}  // namespace asymcav
