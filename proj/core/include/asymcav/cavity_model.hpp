#pragma once

#include <optional>
#include <string>
#include <vector>

#include "asymcav/constants.hpp"

namespace asymcav {

// Two Fabry-Perot sub-cavities of lengths L1 and L2 = L - L1 separated by a
// partially transmitting membrane. All power transmissions and round-trip
// losses are dimensionless fractions (not ppm).
struct CavitySpec {
  double L = 0.1;
  double L1 = 0.05;
  double wavelength = kDefaultWavelength;
  double tm_sq = 0.0;
  double t1_sq = 0.0;
  double t2_sq = 0.0;
  double T1 = 0.0;
  double T2 = 0.0;

  double L2() const { return L - L1; }
  double omega0() const { return 2.0 * kPi * kSpeedOfLight / wavelength; }
  // Lumped dissipation per side: |t_j|^2 + T_j.
  double loss1() const { return t1_sq + T1; }
  double loss2() const { return t2_sq + T2; }
};

// Throws ValidationError naming the field (prefixed with `prefix`).
void validate(const CavitySpec& spec, const std::string& prefix = "cavity");

// Non-fatal: transmissions large enough that the high-reflectivity
// expansions behind the closed forms become questionable.
std::vector<std::string> validity_warnings(const CavitySpec& spec);

struct CouplingRates {
  double omega0 = 0.0;  // rad/s
  double G1 = 0.0;      // rad s^-1 m^-1
  double G2 = 0.0;
  double J = 0.0;       // rad/s
  double kappa1_ext = 0.0;
  double kappa2_ext = 0.0;
  double kappa1_int = 0.0;
  double kappa2_int = 0.0;
  double kappa1 = 0.0;
  double kappa2 = 0.0;
};

CouplingRates derive_couplings(const CavitySpec& spec);

// Eigenfrequencies are stored as offsets from omega0; the absolute values
// (~1e15 rad/s) lose about seven digits of the splitting.
// The "+" branch is the lower-frequency one.
struct EigenFrequencies {
  double omega0 = 0.0;
  double offset_plus = 0.0;
  double offset_minus = 0.0;

  double omega_plus() const { return omega0 + offset_plus; }
  double omega_minus() const { return omega0 + offset_minus; }
  double gap() const { return offset_minus - offset_plus; }
};

EigenFrequencies eigenfrequencies(const CouplingRates& rates, double dx);

// "+" mode = cos(theta_plus) a1 + sin(theta_plus) a2, and likewise for "-".
// theta_minus = theta_plus - pi/2, so the two modes are orthonormal.
struct Mixing {
  double theta_plus = 0.0;
  double theta_minus = 0.0;
  double cos_plus = 1.0;
  double sin_plus = 0.0;
  double cos_minus = 0.0;
  double sin_minus = -1.0;
  // cos^2 and sin^2 of theta_plus computed without cancellation.
  double cos2_plus = 1.0;
  double sin2_plus = 0.0;
};

Mixing mixing(const CouplingRates& rates, double dx);

struct BranchPair {
  double plus = 0.0;
  double minus = 0.0;
};

// d omega_pm / dx.
BranchPair linear_dispersive_coupling(const CouplingRates& rates, double dx);
// d^2 omega_pm / dx^2 (J held fixed).
BranchPair quadratic_dispersive_coupling(const CouplingRates& rates, double dx);
// Eigenmode power decay rates, first order in kappa / gap.
BranchPair eigenmode_decay_rates(const CouplingRates& rates, double dx);
// d kappa_pm / dx.
BranchPair dissipative_coupling(const CouplingRates& rates, double dx);

enum class Branch { kPlus, kMinus };

// Membrane displacements where d omega_pm / dx vanishes.
// Throws NumericError(kNoQuadraticPoint) when G1 * G2 >= 0.
BranchPair quadratic_points(const CouplingRates& rates);

struct QuadraticPointSummary {
  Branch branch = Branch::kPlus;
  double dx = 0.0;  // the selected point
  double dx_plus = 0.0;
  double dx_minus = 0.0;
  double alpha = 0.0;  // sin(theta_plus) at dx_plus
  double beta = 0.0;   // cos(theta_plus) at dx_plus
  double omega0 = 0.0;
  double offset_plus = 0.0;
  double offset_minus = 0.0;
  double kappa_plus = 0.0;
  double kappa_minus = 0.0;
  double kappa0 = 0.0;
  double qdc_curvature = 0.0;  // signed, of the selected branch
  double gap = 0.0;              // avoided gap: omega_-(dx_minus) - omega_+(dx_plus)
  double local_splitting = 0.0;  // omega_- - omega_+ at the selected point
  double dkappa_dx = 0.0;  // of the selected branch
  std::optional<double> Btilde;

  double omega_plus() const { return omega0 + offset_plus; }
  double omega_minus() const { return omega0 + offset_minus; }
  double qdc_curvature_magnitude() const;
};

// Btilde is filled only when x_zpf is given and single_port is set; it is
// evaluated with kappa2 -> 0.
QuadraticPointSummary quadratic_point_summary(const CavitySpec& spec, const CouplingRates& rates,
                                              Branch branch = Branch::kPlus,
                                              std::optional<double> x_zpf = std::nullopt,
                                              bool single_port = false);

// Empty-cavity power decay rate (c / 2L)(|t1|^2 + T1 + |t2|^2 + T2).
double empty_cavity_decay_rate(const CavitySpec& spec);

struct MechanicalMode {
  double Omega_m = 0.0;  // rad/s
  double mass = 0.0;     // kg
  double x_zpf = 0.0;    // m
  int n = 0;

  static MechanicalMode from_mass(double Omega_m, double mass, int n = 0);
  static MechanicalMode from_x_zpf(double Omega_m, double x_zpf, int n = 0);
};

double zero_point_fluctuation(double Omega_m, double mass);
void validate(const MechanicalMode& mech, const std::string& prefix = "mech");

// Closest L1 with an integer number of half wavelengths. Informational only;
// nothing else enforces commensurability.
struct CommensurateLength {
  double L1 = 0.0;
  long long mode_index = 0;
};
CommensurateLength nearest_commensurate_L1(const CavitySpec& spec);

}  // namespace asymcav
