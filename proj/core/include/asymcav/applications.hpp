#pragma once

#include "asymcav/cavity_model.hpp"
#include "asymcav/noise_spectra.hpp"

namespace asymcav {

// Optical trap formed by the "+" mode at dx_plus, resonantly driven.
struct TrapReport {
  double k_opt = 0.0;            // N/m, hbar |d^2 omega_+/dx^2| N
  double k_from_power = 0.0;     // N/m, 8 omega_in P_circ / (|t_m| c^2)
  double omega_in = 0.0;         // rad/s
  double P_circ = 0.0;           // W
  double S_FF_free_space = 0.0;  // N^2 s, 8 hbar omega_in P_circ / c^2
  double noise_ratio_exact = 0.0;
  double noise_ratio_limit = 0.0;
};

// Also fills the resolved-sideband noise ratios, which do not depend on
// Omega_m.
TrapReport optical_spring(const CavitySpec& spec, double photon_number);

struct TrapNoiseRatio {
  double exact = 0.0;     // resolved-sideband, L1 = L1_min
  double limit = 0.0;     // (|t2|^2 + T2) / (2 |t_m|^2)
  double at_Omega = 0.0;  // finite-Omega_m form at L1_min
};

TrapNoiseRatio trap_noise_ratio(const CavitySpec& spec, double Omega_m);

struct BackactionRate {
  double general = 0.0;  // from the full spectrum at -Omega_m and +Omega_m
  double closed_form = 0.0;
  double validity_ratio = 0.0;  // (Omega_m/kappa_+)^2 / ((G2-G1) kappa2 / (4 G2 kappa_-))
  bool valid = false;           // validity_ratio >= kValidityMargin
};

inline constexpr double kValidityMargin = 10.0;

BackactionRate backaction_rate(const CavitySpec& spec, double photon_number, const MechanicalMode& mech);

// Idealised homodyne readout of the port-1 reflection, large-gap limit.
struct HomodyneChain {
  double A = 0.0;            // |reflection amplitude| at delta_plus
  double phi = 0.0;          // reflected phase at delta_plus
  double dphi_domega = 0.0;  // slope at delta_plus = 0
  double abar1_out = 0.0;    // real for resonant drive with real abar_+
  double coupling = 0.0;     // beta^2 kappa1_ext
  double kappa_plus = 0.0;
};

// Reflection amplitude and phase seen through port 1 at detuning delta from
// the "+" mode with decay kappa_plus and port-1 coupling beta^2 kappa1_ext.
double reflection_amplitude(double kappa_plus, double coupling, double delta);
double reflected_phase(double kappa_plus, double coupling, double delta);
double reflected_phase_slope(double kappa_plus, double coupling);

HomodyneChain homodyne_chain(const CavitySpec& spec, double photon_number, double delta_plus = 0.0);

struct MeasurementRate {
  double chained = 0.0;
  double simplified = 0.0;
};

MeasurementRate measurement_rate(const CavitySpec& spec, double photon_number, const MechanicalMode& mech);

struct QndReport {
  double Gamma_meas = 0.0;        // simplified large-gap form
  double Gamma_meas_chained = 0.0;
  double Gamma_ba = 0.0;          // resolved-sideband closed form
  double Gamma_ba_general = 0.0;  // from the full spectrum
  double ratio = 0.0;
  double x_res_sq = 0.0;
  double A = 0.0;
  double phi = 0.0;
  double dphi_domega = 0.0;
  double validity_ratio = 0.0;  // (Omega_m/kappa_+) / sqrt((g1+g2) kappa2 / (4 g2 kappa_-))
  bool valid = false;
};

QndReport qnd_ratio(const CavitySpec& spec, double photon_number, const MechanicalMode& mech);

// Measurement/backaction ratio at the L1 and t1 stored in spec, as a
// closed-form function of the geometry. Used for sweeps.
double qnd_ratio_closed_form(const CavitySpec& spec, const MechanicalMode& mech);

struct QndOptima {
  double L1_min = 0.0;
  double B = 0.0;
  double t1_opt = 0.0;   // |t1|^2 maximising the ratio at L1_min
  double t1_mim = 0.0;   // |t1|^2 maximising the ratio at L/2
  double ratio_L1min = 0.0;          // at L1_min, spec t1
  double ratio_mim = 0.0;            // at L/2, spec t1
  double ratio_opt = 0.0;            // at L1_min, t1_opt
  double ratio_matched = 0.0;        // at L1_min, t1 = t2
  double ratio_mim_opt = 0.0;        // at L/2, t1_mim
  double improvement_vs_mim = 0.0;   // ratio_L1min / ratio_mim
  double improvement_vs_matched = 0.0;
  double improvement_fair = 0.0;     // ratio_opt / ratio_mim_opt
  double improvement_matched_closed_form = 0.0;  // only meaningful for T1 == T2
};

QndOptima qnd_optima(const CavitySpec& spec, const MechanicalMode& mech);

// |t1|^2 maximising the closed-form ratio at the spec's L1 (not necessarily
// L1_min). Reduces to QndOptima::t1_opt at L1_min.
double optimal_t1_at(const CavitySpec& spec);

}  // namespace asymcav
