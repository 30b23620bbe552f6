#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "asymcav/errors.hpp"
#include "asymcav/oracle_sim.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace asymcav;

namespace {

double tau_min(const CavitySpec& s) { return 2 * std::min(s.L1, s.L2()) / kSpeedOfLight; }

double max_error_vs_exact(const CavitySpec& s, double dx, double duration, double dt) {
  FieldState init;
  init.alpha1 = {0.6, 0.0};
  init.alpha2 = {0.0, 0.8};
  SimulationOptions o;
  o.dx = dx;
  const auto traj = time_domain_fields(s, init, duration, dt, o);
  const Matrix2c M = round_trip_generator(s, dx);
  double err = 0;
  for (const FieldState& f : traj) {
    const FieldState e = exact_two_mode_solution(M, init, f.time);
    err = std::max({err, std::abs(f.alpha1 - e.alpha1), std::abs(f.alpha2 - e.alpha2)});
  }
  return err;
}

}  // namespace

TEST_SUITE("oracle-sim") {

TEST_CASE("coupled-mode matrix reproduces the susceptibility") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 300; ++i) {
    const CavitySpec s = oracle::random_spec(rng);
    const CouplingRates r = derive_couplings(s);
    const double dx = 3 * u(rng) * oracle::dx_scale(s);
    const double D = u(rng) * r.J, w = u(rng) * r.J;
    const SusceptibilityMatrix a = numeric_susceptibility(r, D, dx, w);
    const SusceptibilityMatrix b = eigenmode_susceptibility(r, D, dx, w);
    CHECK(std::abs(a.chi11 - b.chi11) <= 1e-10 * std::abs(b.chi11));
    CHECK(std::abs(a.chi12 - b.chi12) <= 1e-10 * std::abs(b.chi12));
    CHECK(std::abs(a.chi22 - b.chi22) <= 1e-10 * std::abs(b.chi22));
  }
}

TEST_CASE("Hermitian-projection eigensystem matches the closed forms") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 300; ++i) {
    const CavitySpec s = oracle::random_spec(rng);
    const CouplingRates r = derive_couplings(s);
    const double dx = 5 * u(rng) * oracle::dx_scale(s);
    const NumericEigensystem h = hermitian_projection_eigensystem(r, 0.0, dx);
    const EigenFrequencies e = eigenfrequencies(r, dx);
    const BranchPair k = eigenmode_decay_rates(r, dx);
    const double scale = std::abs(0.5 * (r.G1 + r.G2) * dx) + 0.5 * e.gap();
    CHECK(std::abs(h.offsets[0] - e.offset_plus) < 1e-12 * scale);
    CHECK(std::abs(h.offsets[1] - e.offset_minus) < 1e-12 * scale);
    CHECK(h.kappas[0] == doctest::Approx(k.plus).epsilon(1e-10));
    CHECK(h.kappas[1] == doctest::Approx(k.minus).epsilon(1e-10));
  }
}

TEST_CASE("full non-Hermitian eigenvalues deviate from the first-order rates at order kappa/gap") {
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 300; ++i) {
    const CavitySpec s = oracle::random_spec(rng);
    const CouplingRates r = derive_couplings(s);
    const double dx = 5 * u(rng) * oracle::dx_scale(s);
    const NumericEigensystem n = numeric_eigensystem(r, 0.0, dx);
    const EigenFrequencies e = eigenfrequencies(r, dx);
    const BranchPair k = eigenmode_decay_rates(r, dx);
    const double small = (r.kappa1 + r.kappa2) / e.gap();
    CHECK(std::abs(n.kappas[0] - k.plus) <= 2 * small * (r.kappa1 + r.kappa2) + 1e-9 * k.plus);
    CHECK(std::abs(n.kappas[0] + n.kappas[1] - r.kappa1 - r.kappa2) <= 1e-9 * (r.kappa1 + r.kappa2));
    CHECK(std::abs(n.offsets[0] - e.offset_plus) <= small * (r.kappa1 + r.kappa2) + 1e-12 * e.gap());
  }
}

TEST_CASE("numeric force noise agrees with the closed-form chain") {
  std::mt19937_64 rng(44);
  for (int i = 0; i < 100; ++i) {
    const CavitySpec s = oracle::random_spec(rng);
    const CouplingRates r = derive_couplings(s);
    const double dx = quadratic_points(r).plus;
    const OperatingPoint op = resonant_operating_point(r, dx, 10.0);
    const double w = std::exp(std::uniform_real_distribution<double>(0, 18)(rng));
    CHECK(numeric_force_noise(r, op.Delta, dx, 10.0, w) == doctest::Approx(force_noise_full(r, op, w)).epsilon(1e-9));
    const MeanFields m = numeric_steady_state(r, op.Delta, dx, 10.0);
    CHECK(std::norm(m.abar_plus) == doctest::Approx(10.0).epsilon(1e-9));
  }
}

TEST_CASE("singular susceptibility at an undamped pole") {
  const CouplingRates r = derive_couplings(fixtures::symmetric_lossless());
  CHECK_THROWS_AS(numeric_susceptibility(r, -r.J, 0.0, 0.0), NumericError);
}

TEST_CASE("lossless generator is anti-Hermitian") {
  const CavitySpec s = fixtures::symmetric_lossless();
  for (double dx : {0.0, 1e-9, -3e-9}) {
    const Matrix2c M = round_trip_generator(s, dx);
    const double scale = std::abs(M[0][1]);
    CHECK(std::abs(M[0][0] + std::conj(M[0][0])) < 1e-12 * scale);
    CHECK(std::abs(M[1][1] + std::conj(M[1][1])) < 1e-12 * scale);
    CHECK(std::abs(M[0][1] + std::conj(M[1][0])) < 1e-12 * scale);
  }
}

TEST_CASE("Rabi oscillation in the symmetric lossless cavity") {
  const CavitySpec s = fixtures::symmetric_lossless();
  FieldState init;
  init.alpha1 = 1.0;
  const auto traj = time_domain_fields(s, init, 1.1e-7, 8e-12);
  double max2 = 0;
  for (const FieldState& f : traj) {
    CHECK(std::norm(f.alpha1) + std::norm(f.alpha2) == doctest::Approx(1.0).epsilon(1e-9));
    max2 = std::max(max2, std::norm(f.alpha2));
  }
  CHECK(max2 > 0.999);
  const RingdownFit fit = fit_ringdown(traj);
  const double twoJ = 2 * derive_couplings(s).J;
  CHECK(fit.beat_frequency == doctest::Approx(twoJ).epsilon(0.01));
  CHECK(std::abs(fit.pair_decay_rate) < 1e-6 * twoJ);
}

TEST_CASE("lossy ringdown recovers the eigenmode decay rates") {
  const CavitySpec s = fixtures::ringdown();
  const CouplingRates r = derive_couplings(s);
  const double dx = quadratic_points(r).plus;
  const BranchPair k = eigenmode_decay_rates(r, dx);
  FieldState init;
  init.alpha1 = 1.0;
  SimulationOptions o;
  o.dx = dx;
  o.sample_every = 500;
  const double dt = tau_min(s) / 20;
  const auto traj = time_domain_fields(s, init, 8e-6, dt, o);
  const RingdownFit fit = fit_ringdown(traj);
  REQUIRE(fit.decay_rates.size() == 2);
  CHECK(fit.decay_rates[0] == doctest::Approx(std::max(k.plus, k.minus)).epsilon(0.02));
  CHECK(fit.decay_rates[1] == doctest::Approx(std::min(k.plus, k.minus)).epsilon(0.02));
  CHECK(fit.beat_frequency == doctest::Approx(eigenfrequencies(r, dx).gap()).epsilon(0.01));
  CHECK(fit.pair_decay_rate == doctest::Approx(0.5 * (k.plus + k.minus)).epsilon(0.02));
}

TEST_CASE("RK4 converges at fourth order against the exact solution") {
  const CavitySpec s = fixtures::ringdown();
  const double dx = quadratic_points(derive_couplings(s)).plus;
  const double base = tau_min(s) / 20;
  const double e1 = max_error_vs_exact(fixtures::symmetric_lossless(), 0.0, 5e-8, tau_min(fixtures::symmetric_lossless()) / 20);
  const double e2 = max_error_vs_exact(fixtures::symmetric_lossless(), 0.0, 5e-8, tau_min(fixtures::symmetric_lossless()) / 40);
  CHECK(std::log2(e1 / e2) >= 3.0);
  const double l1 = max_error_vs_exact(s, dx, 2e-7, base);
  const double l2 = max_error_vs_exact(s, dx, 2e-7, base / 2);
  CHECK((l2 < 1e-12 || std::log2(l1 / l2) >= 3.0));
}

TEST_CASE("guards on step size and timescale separation") {
  const CavitySpec s = fixtures::symmetric_lossless();
  FieldState init;
  init.alpha1 = 1.0;
  try {
    time_domain_fields(s, init, 1e-9, tau_min(s) / 10);
    FAIL("expected StepTooLarge");
  } catch (const NumericError& e) {
    CHECK(e.kind() == NumericFailure::kStepTooLarge);
  }
  CavitySpec strong = s;
  strong.tm_sq = 0.09;
  try {
    time_domain_fields(strong, init, 1e-9, 1e-12);
    FAIL("expected TimescaleViolation");
  } catch (const NumericError& e) {
    CHECK(e.kind() == NumericFailure::kTimescaleViolation);
  }
  SimulationOptions lax;
  lax.timescale_margin = 1.0;
  CHECK_NOTHROW(time_domain_fields(strong, init, 1e-10, 1e-12, lax));
  CHECK_THROWS_AS(time_domain_fields(s, init, 1e-9, -1.0), ValidationError);
}

TEST_CASE("simulation is deterministic") {
  const CavitySpec s = fixtures::symmetric_lossless();
  FieldState init;
  init.alpha1 = 1.0;
  const auto a = time_domain_fields(s, init, 1e-8, 8e-12);
  const auto b = time_domain_fields(s, init, 1e-8, 8e-12);
  std::ostringstream sa, sb;
  write_trajectory_csv(sa, a);
  write_trajectory_csv(sb, b);
  CHECK(sa.str() == sb.str());
  CHECK(sa.str().rfind("time_s,re_alpha1,im_alpha1,re_alpha2,im_alpha2\n", 0) == 0);
}

TEST_CASE("exponential fit on synthetic signals") {
  const double h = 1e-3;
  std::vector<double> sig;
  for (int i = 0; i < 400; ++i) {
    const double t = i * h;
    sig.push_back(0.7 * std::exp(-3.0 * t) + 0.2 * std::exp(-11.0 * t) + 0.1 * std::exp(-5.0 * t) * std::cos(90.0 * t));
  }
  const RingdownFit f = fit_exponentials(sig, h);
  REQUIRE(f.decay_rates.size() == 2);
  CHECK(f.decay_rates[0] == doctest::Approx(11.0).epsilon(1e-6));
  CHECK(f.decay_rates[1] == doctest::Approx(3.0).epsilon(1e-6));
  CHECK(f.beat_frequency == doctest::Approx(90.0).epsilon(1e-6));
  CHECK(f.pair_decay_rate == doctest::Approx(5.0).epsilon(1e-6));
  CHECK(f.fit_residual < 1e-8);

  std::mt19937_64 rng(45);
  std::normal_distribution<double> noise;
  std::vector<double> junk(200);
  for (double& v : junk) v = noise(rng);
  CHECK_THROWS_AS(fit_exponentials(junk, h), NumericError);
  CHECK_THROWS_AS(fit_exponentials({1, 2, 3}, h), ValidationError);
}

TEST_CASE("grid optimiser") {
  const GridOptimum a = grid_optimize([](double x) { return (x - 0.3) * (x - 0.3); }, 0, 1);
  CHECK(a.x == doctest::Approx(0.3).epsilon(1e-8));
  GridOptimizeOptions o;
  o.log_scale = true;
  o.maximize = true;
  o.xtol = 1e-15;
  const GridOptimum b = grid_optimize([](double x) { return x / (1 + x * x * 1e8); }, 1e-9, 1, o);
  CHECK(b.x == doctest::Approx(1e-4).epsilon(1e-6));
  CHECK_THROWS_AS(grid_optimize([](double) { return std::nan(""); }, 0, 1), NumericError);
  CHECK_THROWS_AS(grid_optimize([](double x) { return x; }, 1, 0), ValidationError);
  // Boundary optimum.
  CHECK(grid_optimize([](double x) { return x; }, 2, 5).x == doctest::Approx(2.0));
}

}  // TEST_SUITE
