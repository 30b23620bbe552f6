#pragma once

#include <complex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "asymcav/cavity_model.hpp"

namespace asymcav {

using cdouble = std::complex<double>;

// How DriveConfig::detuning is interpreted.
enum class DetuningMode {
  kAbsolute,   // omega_in itself
  kFromBare,   // Delta = omega_in - omega0
  kFromPlus,   // delta_plus = omega_in - omega_plus(dx)
};

std::string_view to_string(DetuningMode mode);
DetuningMode detuning_mode_from_string(std::string_view s);

// Exactly one of photon_number (|abar_+|^2) or input_flux (|abar_1^in|^2,
// photons/s) must be set.
struct DriveConfig {
  DetuningMode detuning_mode = DetuningMode::kFromPlus;
  double detuning = 0.0;
  int port = 1;
  std::optional<double> photon_number;
  std::optional<double> input_flux;
};

void validate(const DriveConfig& drive, const std::string& prefix = "drive");

// Fully resolved drive at a membrane displacement.
struct OperatingPoint {
  double dx = 0.0;
  double Delta = 0.0;           // omega_in - omega0
  double input_amplitude = 0.0; // abar_1^in, real
  double photon_number = 0.0;   // |abar_+|^2
  int port = 1;

  double input_flux() const { return input_amplitude * input_amplitude; }
};

OperatingPoint resolve_operating_point(const CouplingRates& rates, const DriveConfig& drive, double dx);

// Resonant port-1 drive of the "+" mode at dx with the given photon number.
OperatingPoint resonant_operating_point(const CouplingRates& rates, double dx, double photon_number);

struct SusceptibilityMatrix {
  cdouble chi11, chi12, chi21, chi22;
  double evaluated_at = 0.0;
};

cdouble inverse_sub_cavity_susceptibility(const CouplingRates& rates, double Delta, double dx,
                                          double omega, int j);
cdouble sub_cavity_susceptibility(const CouplingRates& rates, double Delta, double dx, double omega, int j);
SusceptibilityMatrix eigenmode_susceptibility(const CouplingRates& rates, double Delta, double dx, double omega);

struct MeanFields {
  cdouble abar1, abar2, abar_plus, abar_minus;
};

MeanFields steady_state_fields(const CouplingRates& rates, const OperatingPoint& op);

// |abar_+|^2 per unit input flux, from the port-1 transfer amplitude.
double photons_per_flux(const CouplingRates& rates, double Delta, double dx);
double flux_to_photon_number(const CouplingRates& rates, double Delta, double dx, double flux);
double photon_number_to_flux(const CouplingRates& rates, double Delta, double dx, double photons);

// Zero-temperature, non-symmetrized force noise S_FF(omega) in N^2 s,
// for arbitrary dx and detuning.
double force_noise_full(const CouplingRates& rates, const OperatingPoint& op, double omega);

// Large-gap closed form; resonant drive of the "+" mode at dx_plus.
double force_noise_large_gap(const CavitySpec& spec, double photon_number, double omega);
// (2 c |t_m| / L) / max(kappa1, kappa2, |omega|); the closed form is flagged
// unreliable below 100.
double large_gap_margin(const CavitySpec& spec, double omega);
inline constexpr double kLargeGapMarginThreshold = 100.0;

// Single-port closed form (kappa2 taken as zero).
double force_noise_single_port(const CavitySpec& spec, double photon_number, double omega);

enum class Regime { kResolvedSideband, kFastCavity, kIntermediate };
std::string_view to_string(Regime r);

// Resolved if sqrt(B_eff) |omega| >= 2 kappa_+, fast-cavity if |omega| <= kappa_+ / 2.
Regime classify_regime(const CavitySpec& spec, double omega);

enum class NoiseMethod { kFullTwoPort, kFullSinglePort, kLargeGap, kResonantSinglePort };
std::string_view to_string(NoiseMethod m);

struct NoiseSpectrum {
  NoiseMethod method = NoiseMethod::kFullTwoPort;
  std::vector<double> frequencies;
  std::vector<double> values;
  std::vector<Regime> regime;
};

// Resonant drive of the "+" mode at dx_plus. kFullSinglePort runs the full
// path with kappa2 forced to zero.
NoiseSpectrum force_noise_spectrum(const CavitySpec& spec, double photon_number,
                                   const std::vector<double>& frequencies, NoiseMethod method);

struct OptimalLength {
  double L1_min = 0.0;
  double B = 0.0;  // (|t1|^2 + T1) / total dissipation
};

// Throws NumericError(kDegenerateLossless) when every loss term is zero.
OptimalLength optimal_L1(const CavitySpec& spec);

struct MinForceNoise {
  double value = 0.0;           // general form at Omega_m
  double resolved_value = 0.0;  // Omega_m >> kappa_+ / sqrt(B)
  double fast_cavity_value = 0.0;
  double B = 0.0;
  double L1_min = 0.0;
  Regime regime = Regime::kIntermediate;
};

MinForceNoise min_force_noise(const CavitySpec& spec, double photon_number, double Omega_m);

struct Suppression {
  double exact = 0.0;
  double limit = 0.0;
};

// Minimum force noise relative to L1 = L/2. The limit folds |t2|^2 into T2.
Suppression suppression_vs_mim(const CavitySpec& spec);

struct TransmissionPoint {
  double dx = 0.0;
  double Delta = 0.0;
  double transmission = 0.0;
  double offset_1 = 0.0;  // uncoupled omega_j - omega0
  double offset_2 = 0.0;
  double offset_plus = 0.0;
  double offset_minus = 0.0;
};

// Port-1 to port-2 power transmission kappa1_ext kappa2_ext |chi_21(0)|^2.
double transmission(const CouplingRates& rates, double Delta, double dx);
std::vector<TransmissionPoint> transmission_map(const CouplingRates& rates, const std::vector<double>& dx_grid,
                                                const std::vector<double>& Delta_grid);

}  // namespace asymcav
