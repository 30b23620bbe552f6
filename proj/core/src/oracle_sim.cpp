#include "asymcav/oracle_sim.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include "asymcav/errors.hpp"

namespace asymcav {
namespace {

constexpr cdouble kI{0.0, 1.0};

Eigen::Matrix2cd to_eigen(const Matrix2c& m) {
  Eigen::Matrix2cd e;
  e << m[0][0], m[0][1], m[1][0], m[1][1];
  return e;
}

std::array<cdouble, 2> eigenvector_for(const Matrix2c& H, cdouble lambda) {
  // Two candidate null vectors of (H - lambda I); keep the better scaled one.
  std::array<cdouble, 2> u{H[0][1], lambda - H[0][0]};
  std::array<cdouble, 2> w{lambda - H[1][1], H[1][0]};
  const double nu = std::norm(u[0]) + std::norm(u[1]);
  const double nw = std::norm(w[0]) + std::norm(w[1]);
  std::array<cdouble, 2> v = nu >= nw ? u : w;
  const double n = std::sqrt(std::max(nu, nw));
  if (n == 0.0) return {cdouble{1.0, 0.0}, cdouble{0.0, 0.0}};
  v[0] /= n;
  v[1] /= n;
  return v;
}

}  // namespace

Matrix2c coupled_mode_matrix(const CouplingRates& rates, double Delta, double dx) {
  Matrix2c H;
  H[0][0] = cdouble{-(Delta - rates.G1 * dx), -0.5 * rates.kappa1};
  H[1][1] = cdouble{-(Delta - rates.G2 * dx), -0.5 * rates.kappa2};
  H[0][1] = H[1][0] = cdouble{-rates.J, 0.0};
  return H;
}

NumericEigensystem numeric_eigensystem(const CouplingRates& rates, double Delta, double dx) {
  const Matrix2c H = coupled_mode_matrix(rates, Delta, dx);
  const cdouble mean = 0.5 * (H[0][0] + H[1][1]);
  const cdouble half = 0.5 * (H[0][0] - H[1][1]);
  const cdouble root = std::sqrt(half * half + H[0][1] * H[1][0]);
  std::array<cdouble, 2> lam{mean - root, mean + root};
  if (lam[1].real() < lam[0].real()) std::swap(lam[0], lam[1]);

  NumericEigensystem out;
  for (int k = 0; k < 2; ++k) {
    out.eigenvalues[k] = lam[k];
    out.eigenvectors[k] = eigenvector_for(H, lam[k]);
    out.offsets[k] = lam[k].real() + Delta;
    out.kappas[k] = -2.0 * lam[k].imag();
  }
  out.ill_conditioned = std::abs(lam[1] - lam[0]) < 1e-12 * std::abs(rates.omega0);
  return out;
}

NumericEigensystem hermitian_projection_eigensystem(const CouplingRates& rates, double Delta, double dx) {
  Eigen::Matrix2d h;
  h << -(Delta - rates.G1 * dx), -rates.J, -rates.J, -(Delta - rates.G2 * dx);
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> solver(h);
  const Eigen::Vector2d vals = solver.eigenvalues();
  const Eigen::Matrix2d vecs = solver.eigenvectors();

  NumericEigensystem out;
  for (int k = 0; k < 2; ++k) {
    Eigen::Vector2d v = vecs.col(k);
    if (v(0) < 0.0 || (v(0) == 0.0 && v(1) < 0.0)) v = -v;
    const double kappa = rates.kappa1 * v(0) * v(0) + rates.kappa2 * v(1) * v(1);
    out.eigenvalues[k] = cdouble{vals(k), -0.5 * kappa};
    out.eigenvectors[k] = {cdouble{v(0), 0.0}, cdouble{v(1), 0.0}};
    out.offsets[k] = vals(k) + Delta;
    out.kappas[k] = kappa;
  }
  out.ill_conditioned = std::abs(vals(1) - vals(0)) < 1e-12 * std::abs(rates.omega0);
  return out;
}

SusceptibilityMatrix numeric_susceptibility(const CouplingRates& rates, double Delta, double dx, double omega) {
  const Eigen::Matrix2cd H = to_eigen(coupled_mode_matrix(rates, Delta, dx));
  const Eigen::Matrix2cd M = -kI * omega * Eigen::Matrix2cd::Identity() + kI * H;
  Eigen::FullPivLU<Eigen::Matrix2cd> lu(M);
  if (!lu.isInvertible() || M.determinant() == 0.0)
    throw NumericError(NumericFailure::kSingularMatrix, "inverse susceptibility is singular at this frequency");
  const Eigen::Matrix2cd X = lu.solve(Eigen::Matrix2cd::Identity());
  return {X(0, 0), X(0, 1), X(1, 0), X(1, 1), omega};
}

MeanFields numeric_steady_state(const CouplingRates& rates, double Delta, double dx, double photon_number) {
  const Eigen::Matrix2cd H = to_eigen(coupled_mode_matrix(rates, Delta, dx));
  const Eigen::Matrix2cd M = kI * H;
  Eigen::Vector2cd drive(std::sqrt(rates.kappa1_ext), 0.0);
  const Eigen::Vector2cd a = M.fullPivLu().solve(drive);

  const NumericEigensystem modes = hermitian_projection_eigensystem(rates, Delta, dx);
  auto project = [&](int k) {
    return std::real(modes.eigenvectors[k][0]) * a(0) + std::real(modes.eigenvectors[k][1]) * a(1);
  };
  const cdouble plus = project(0);
  if (std::abs(plus) == 0.0)
    throw NumericError(NumericFailure::kUndrivableMode, "the \"+\" mode is not reachable from port 1");
  const double scale = std::sqrt(photon_number) / std::abs(plus);
  return {a(0) * scale, a(1) * scale, plus * scale, project(1) * scale};
}

double numeric_force_noise(const CouplingRates& rates, double Delta, double dx, double photon_number,
                           double omega) {
  const MeanFields f = numeric_steady_state(rates, Delta, dx, photon_number);
  const SusceptibilityMatrix X = numeric_susceptibility(rates, Delta, dx, omega);
  Eigen::Matrix2cd chi;
  chi << X.chi11, X.chi12, X.chi21, X.chi22;
  Eigen::Vector2cd weighted(rates.G1 * std::conj(f.abar1), rates.G2 * std::conj(f.abar2));
  const Eigen::Vector2cd A = -kHbar * (chi.transpose() * weighted);
  return rates.kappa1 * std::norm(A(0)) + rates.kappa2 * std::norm(A(1));
}

Matrix2c round_trip_generator(const CavitySpec& spec, double dx) {
  const double c = kSpeedOfLight;
  const double tau1 = 2.0 * spec.L1 / c;
  const double tau2 = 2.0 * spec.L2() / c;
  // Round-trip phase picked up from the membrane displacement; it lengthens
  // sub-cavity 1 and shortens sub-cavity 2.
  const double phase = 2.0 * spec.omega0() * dx / c;
  const double phi1 = phase;
  const double phi2 = -phase;
  const double r1 = std::sqrt(1.0 - spec.t1_sq - spec.T1);
  const double r2 = std::sqrt(1.0 - spec.t2_sq - spec.T2);
  const double hop = std::sqrt(spec.tm_sq) * c / (2.0 * std::sqrt(spec.L1 * spec.L2()));

  Matrix2c M;
  M[0][0] = cdouble{0.5 * std::log1p(-(spec.t1_sq + spec.T1)), phi1} / tau1;
  M[1][1] = cdouble{0.5 * std::log1p(-(spec.t2_sq + spec.T2)), phi2} / tau2;
  M[0][1] = kI * hop * r1 * std::exp(kI * phi1);
  M[1][0] = kI * hop * r2 * std::exp(kI * phi2);
  return M;
}

double timescale_ratio(const CavitySpec& spec) {
  const CouplingRates r = derive_couplings(spec);
  const double fastest = std::min(kSpeedOfLight / (2.0 * spec.L1), kSpeedOfLight / (2.0 * spec.L2()));
  const double slowest = std::max({r.kappa1, r.kappa2, r.J});
  return slowest > 0.0 ? fastest / slowest : HUGE_VAL;
}

std::vector<FieldState> time_domain_fields(const CavitySpec& spec, const FieldState& initial, double duration,
                                           double dt, const SimulationOptions& options) {
  validate(spec);
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ValidationError("simulate.dt", "must be positive and finite");
  if (!(duration >= 0.0) || !std::isfinite(duration))
    throw ValidationError("simulate.duration", "must be non-negative and finite");
  if (options.sample_every == 0) throw ValidationError("simulate.sample_every", "must be at least 1");

  const double tau_min = 2.0 * std::min(spec.L1, spec.L2()) / kSpeedOfLight;
  if (dt > tau_min / 20.0) {
    std::ostringstream os;
    os << "dt = " << dt << " s exceeds min round-trip time / 20 = " << tau_min / 20.0 << " s";
    throw NumericError(NumericFailure::kStepTooLarge, os.str());
  }
  const double ratio = timescale_ratio(spec);
  if (ratio < options.timescale_margin) {
    std::ostringstream os;
    os << "round-trip rate / max(kappa, J) = " << ratio << " is below the margin " << options.timescale_margin;
    throw NumericError(NumericFailure::kTimescaleViolation, os.str());
  }

  const Matrix2c M = round_trip_generator(spec, options.dx);
  auto rhs = [&M](cdouble a1, cdouble a2, cdouble& d1, cdouble& d2) {
    d1 = M[0][0] * a1 + M[0][1] * a2;
    d2 = M[1][0] * a1 + M[1][1] * a2;
  };

  const auto steps = static_cast<std::size_t>(std::ceil(duration / dt - 1e-9));
  std::vector<FieldState> out;
  out.reserve(steps / options.sample_every + 2);
  cdouble a1 = initial.alpha1, a2 = initial.alpha2;
  out.push_back({a1, a2, initial.time});
  for (std::size_t k = 1; k <= steps; ++k) {
    cdouble k11, k12, k21, k22, k31, k32, k41, k42;
    rhs(a1, a2, k11, k12);
    rhs(a1 + 0.5 * dt * k11, a2 + 0.5 * dt * k12, k21, k22);
    rhs(a1 + 0.5 * dt * k21, a2 + 0.5 * dt * k22, k31, k32);
    rhs(a1 + dt * k31, a2 + dt * k32, k41, k42);
    a1 += dt / 6.0 * (k11 + 2.0 * k21 + 2.0 * k31 + k41);
    a2 += dt / 6.0 * (k12 + 2.0 * k22 + 2.0 * k32 + k42);
    if (k % options.sample_every == 0 || k == steps)
      out.push_back({a1, a2, initial.time + static_cast<double>(k) * dt});
  }
  return out;
}

FieldState exact_two_mode_solution(const Matrix2c& M, const FieldState& initial, double t) {
  const cdouble mean = 0.5 * (M[0][0] + M[1][1]);
  const cdouble half = 0.5 * (M[0][0] - M[1][1]);
  const cdouble q = std::sqrt(half * half + M[0][1] * M[1][0]);
  const cdouble qt = q * t;
  const cdouble ch = std::cosh(qt);
  const cdouble sh = std::abs(qt) < 1e-8 ? t * (1.0 + qt * qt / 6.0) : std::sinh(qt) / q;
  const cdouble e = std::exp(mean * t);
  const cdouble a1 = initial.alpha1, a2 = initial.alpha2;
  FieldState out;
  out.alpha1 = e * (ch * a1 + sh * (half * a1 + M[0][1] * a2));
  out.alpha2 = e * (ch * a2 + sh * (M[1][0] * a1 - half * a2));
  out.time = initial.time + t;
  return out;
}

void write_trajectory_csv(std::ostream& os, const std::vector<FieldState>& trajectory, int precision) {
  os << "time_s,re_alpha1,im_alpha1,re_alpha2,im_alpha2\n";
  char buf[256];
  for (const FieldState& s : trajectory) {
    std::snprintf(buf, sizeof buf, "%.*g,%.*g,%.*g,%.*g,%.*g\n", precision, s.time, precision, s.alpha1.real(),
                  precision, s.alpha1.imag(), precision, s.alpha2.real(), precision, s.alpha2.imag());
    os << buf;
  }
}

}  // namespace asymcav
