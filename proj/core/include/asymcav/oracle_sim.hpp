#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <vector>

#include "asymcav/cavity_model.hpp"
#include "asymcav/noise_spectra.hpp"

namespace asymcav {

using Matrix2c = std::array<std::array<cdouble, 2>, 2>;

// Non-Hermitian coupled-mode matrix H (susceptibility^-1 = -i omega I + i H)
// in the frame of the drive at detuning Delta.
Matrix2c coupled_mode_matrix(const CouplingRates& rates, double Delta, double dx);

struct NumericEigensystem {
  // Sorted by ascending real part; index 0 is the "+" mode.
  std::array<cdouble, 2> eigenvalues;
  std::array<std::array<cdouble, 2>, 2> eigenvectors;  // eigenvectors[k] is mode k
  std::array<double, 2> offsets;  // mode frequency - omega0
  std::array<double, 2> kappas;   // -2 Im(eigenvalue)
  bool ill_conditioned = false;   // eigenvalue separation < 1e-12 omega0
};

// Eigenvalues of the full non-Hermitian matrix by the quadratic formula.
NumericEigensystem numeric_eigensystem(const CouplingRates& rates, double Delta, double dx);

// Eigendecomposition of the Hermitian part only (iterative solver), with the
// decay matrix projected onto its eigenvectors. This is the quantity the
// first-order closed forms describe.
NumericEigensystem hermitian_projection_eigensystem(const CouplingRates& rates, double Delta, double dx);

// (-i omega I + i H)^-1 by LU factorisation. Throws kSingularMatrix at exact poles.
SusceptibilityMatrix numeric_susceptibility(const CouplingRates& rates, double Delta, double dx, double omega);

// Steady state by a linear solve, scaled so the "+" mode (Hermitian-part
// eigenvector) holds the requested photon number.
MeanFields numeric_steady_state(const CouplingRates& rates, double Delta, double dx, double photon_number);

// Zero-temperature force noise assembled from numeric_susceptibility and
// numeric_steady_state.
double numeric_force_noise(const CouplingRates& rates, double Delta, double dx, double photon_number,
                           double omega);

struct FieldState {
  cdouble alpha1{0.0, 0.0};
  cdouble alpha2{0.0, 0.0};
  double time = 0.0;
};

// Generator M of d(alpha)/dt = M alpha in the frame rotating at omega0, built
// from the round-trip reflection and propagation phases of each sub-cavity.
Matrix2c round_trip_generator(const CavitySpec& spec, double dx);

// min_j(1/tau_j) / max(kappa1, kappa2, J), tau_j = 2 L_j / c.
double timescale_ratio(const CavitySpec& spec);

struct SimulationOptions {
  double dx = 0.0;
  std::size_t sample_every = 1;
  double timescale_margin = 5.0;
};

// Fixed-step RK4. Throws kStepTooLarge if dt > min(tau_j)/20 and
// kTimescaleViolation if timescale_ratio < options.timescale_margin.
std::vector<FieldState> time_domain_fields(const CavitySpec& spec, const FieldState& initial, double duration,
                                           double dt, const SimulationOptions& options = {});

// exp(M t) applied to the initial state; the reference the integrator is
// checked against.
FieldState exact_two_mode_solution(const Matrix2c& generator, const FieldState& initial, double t);

void write_trajectory_csv(std::ostream& os, const std::vector<FieldState>& trajectory, int precision = 17);

struct RingdownFit {
  double beat_frequency = 0.0;        // rad/s, 0 when no oscillating pair
  std::vector<double> decay_rates;    // s^-1, from non-oscillating components
  double pair_decay_rate = 0.0;       // s^-1, envelope rate of the oscillating pair
  double fit_residual = 0.0;          // rms(residual) / rms(signal)
};

// Matrix-pencil fit of |alpha1|^2. Throws kFitDiverged if the residual is
// not below 1e-3. A shorter final interval (the integrator's last step) is dropped.
RingdownFit fit_ringdown(const std::vector<FieldState>& trajectory);
// Same, for an arbitrary uniformly sampled real signal.
RingdownFit fit_exponentials(const std::vector<double>& signal, double sample_interval);

struct GridOptimizeOptions {
  std::size_t points = 101;
  bool log_scale = false;
  bool maximize = false;
  double xtol = 1e-9;  // absolute, on the parameter
};

struct GridOptimum {
  double x = 0.0;
  double value = 0.0;
  std::size_t evaluations = 0;
};

// Coarse grid scan, then golden-section refinement between the neighbours of
// the best grid point. Throws kNonFiniteObjective.
GridOptimum grid_optimize(const std::function<double(double)>& objective, double lo, double hi,
                          const GridOptimizeOptions& options = {});

}  // namespace asymcav
