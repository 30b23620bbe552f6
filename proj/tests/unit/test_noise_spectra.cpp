#include <doctest.h>

#include <cmath>
#include <random>

#include "asymcav/errors.hpp"
#include "asymcav/noise_spectra.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace asymcav;

namespace {

double rel_c(cdouble a, oracle::lc b) {
  const oracle::lc d = oracle::lc(a.real(), a.imag()) - b;
  return static_cast<double>(std::abs(d) / std::abs(b));
}

double full_at_plus(const CavitySpec& s, double N, double w) {
  const CouplingRates r = derive_couplings(s);
  return force_noise_full(r, resonant_operating_point(r, quadratic_points(r).plus, N), w);
}

}  // namespace

TEST_SUITE("noise-spectra") {

TEST_CASE("closed-form susceptibility matches direct inversion") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 1000; ++i) {
    const CavitySpec s = oracle::random_spec(rng);
    const CouplingRates r = derive_couplings(s);
    const double dx = 5 * u(rng) * oracle::dx_scale(s);
    const double Delta = 3 * u(rng) * r.J;
    const double w = 3 * u(rng) * r.J;
    const SusceptibilityMatrix X = eigenmode_susceptibility(r, Delta, dx, w);
    const oracle::Chi o = oracle::susceptibility(oracle::raw(s), Delta, dx, w);
    CHECK(rel_c(X.chi11, o.m[0][0]) < 1e-10);
    CHECK(rel_c(X.chi12, o.m[0][1]) < 1e-10);
    CHECK(rel_c(X.chi21, o.m[1][0]) < 1e-10);
    CHECK(rel_c(X.chi22, o.m[1][1]) < 1e-10);
  }
}

TEST_CASE("sub-cavity susceptibility and its degenerate pole") {
  CavitySpec s = fixtures::symmetric_lossless();
  const CouplingRates r = derive_couplings(s);
  CHECK_THROWS_AS(sub_cavity_susceptibility(r, 0.0, 0.0, 0.0, 1), NumericError);
  const cdouble c = sub_cavity_susceptibility(r, 1e6, 0.0, 0.0, 2);
  CHECK(c.imag() == doctest::Approx(1e-6));
  // Lossless coupled pole at the eigenfrequency.
  const double pole = eigenfrequencies(r, 0.0).offset_plus;
  CHECK_THROWS_AS(eigenmode_susceptibility(r, pole, 0.0, 0.0), NumericError);
}

TEST_CASE("full force noise matches the long-double oracle") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int i = 0; i < 300; ++i) {
    const CavitySpec s = oracle::random_spec(rng);
    const CouplingRates r = derive_couplings(s);
    const double dx = 4 * u(rng) * oracle::dx_scale(s);
    DriveConfig d;
    d.detuning_mode = DetuningMode::kFromPlus;
    d.detuning = u(rng) * r.kappa1;
    d.photon_number = 1e6;
    const OperatingPoint op = resolve_operating_point(r, d, dx);
    const double w = std::exp(u(rng) * 6) * (r.kappa1 + r.kappa2);
    const double got = force_noise_full(r, op, w);
    const oracle::ld ref = oracle::force_noise(oracle::raw(s), op.Delta, dx, 1e6, w);
    CHECK(oracle::rel(got, ref) < 1e-8);
  }
}

TEST_CASE("large-gap closed form matches its oracle and the full chain") {
  const CavitySpec s = fixtures::fig2();
  for (double w : {0.0, 1e3, fixtures::kOmegaM, 1e7, 1e8}) {
    CHECK(oracle::rel(force_noise_large_gap(s, 3.0, w), oracle::large_gap_noise(s, 3.0, w)) < 1e-13);
    if (w > 0) CHECK(full_at_plus(s, 3.0, w) == doctest::Approx(force_noise_large_gap(s, 3.0, w)).epsilon(0.02));
  }
  // Prototype values at Omega_m: the asymmetry between +Omega and -Omega is
  // second order in kappa/gap.
  const double lg = force_noise_large_gap(s, 1.0, fixtures::kOmegaM);
  CHECK(full_at_plus(s, 1.0, fixtures::kOmegaM) / lg == doctest::Approx(1.00182).epsilon(1e-4));
  CHECK(full_at_plus(s, 1.0, -fixtures::kOmegaM) / lg == doctest::Approx(0.99818).epsilon(1e-4));
}

TEST_CASE("single-port forms agree") {
  CavitySpec s = fixtures::fig2();
  s.t2_sq = 0.0;
  s.T2 = 0.0;
  for (double w : {0.0, 1e4, fixtures::kOmegaM, 1e8}) {
    const double a = force_noise_single_port(s, 2.0, w);
    const double b = force_noise_large_gap(s, 2.0, w);
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
  }
  CHECK(force_noise_single_port(s, 1.0, 0.0) == 0.0);
}

TEST_CASE("single-port raw susceptibility form agrees with the general chain") {
  // |L2 X11 + i L1 J chi2(0)* X21|^2 / |sqrt(L1) + i sqrt(L2) J chi2(0)|^2, from the oracle.
  for (double f : {0.6, 0.9, 0.99}) {
    CavitySpec s = fixtures::fig2();
    s.t2_sq = s.T2 = 0.0;
    s.L1 = f * s.L;
    const oracle::Raw o = oracle::raw(s);
    const oracle::ld dx = oracle::stationary_point_lower(o);
    const oracle::ld D = oracle::hermitian_eigen(o, dx).value[0];
    const oracle::lc I(0, 1);
    const oracle::lc chi2 = 1.0L / (-I * (D - o.G2 * dx) + o.k2 / 2.0L);
    const oracle::ld L1 = s.L1, L2 = s.L2(), L = s.L;
    const CouplingRates r = derive_couplings(s);
    const OperatingPoint op = resonant_operating_point(r, quadratic_points(r).plus, 1.0);
    for (double w : {1e4, fixtures::kOmegaM, -fixtures::kOmegaM, 1e7}) {
      const oracle::Chi X = oracle::susceptibility(o, D, dx, w);
      const oracle::ld num = std::norm(L2 * X.m[0][0] + I * L1 * o.J * std::conj(chi2) * X.m[1][0]);
      const oracle::ld den = std::norm(std::sqrt(L1) + I * std::sqrt(L2) * o.J * chi2);
      const oracle::ld ref = oracle::hbar * oracle::hbar * o.k1 * L * (o.w0 / (L1 * L2)) * (o.w0 / (L1 * L2)) * num / den;
      CHECK(oracle::rel(force_noise_full(r, op, w), static_cast<double>(ref)) < 1e-7);
    }
  }
}

TEST_CASE("spectrum properties: positivity and linearity in photon number") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 100; ++i) {
    const CavitySpec s = oracle::random_spec(rng);
    const double w = std::exp(std::uniform_real_distribution<double>(0, 20)(rng));
    const double a = full_at_plus(s, 1.0, w);
    CHECK(a >= 0.0);
    CHECK(full_at_plus(s, 2.0, w) == doctest::Approx(2 * a).epsilon(1e-12));
    CHECK(force_noise_large_gap(s, 2.0, w) == doctest::Approx(2 * force_noise_large_gap(s, 1.0, w)).epsilon(1e-14));
  }
}

TEST_CASE("photon number and flux are inverse maps") {
  const CavitySpec s = fixtures::fig2();
  const CouplingRates r = derive_couplings(s);
  const double dx = quadratic_points(r).plus;
  const double Delta = eigenfrequencies(r, dx).offset_plus;
  const double flux = photon_number_to_flux(r, Delta, dx, 1e8);
  CHECK(flux_to_photon_number(r, Delta, dx, flux) == doctest::Approx(1e8).epsilon(1e-13));
  DriveConfig d;
  d.input_flux = flux;
  const OperatingPoint op = resolve_operating_point(r, d, dx);
  CHECK(op.photon_number == doctest::Approx(1e8).epsilon(1e-13));
  CHECK(std::norm(steady_state_fields(r, op).abar_plus) == doctest::Approx(1e8).epsilon(1e-10));
}

TEST_CASE("detuning conventions resolve to the same operating point") {
  const CavitySpec s = fixtures::fig2();
  const CouplingRates r = derive_couplings(s);
  const double dx = quadratic_points(r).plus;
  DriveConfig a, b, c;
  a.detuning_mode = DetuningMode::kFromPlus;
  a.detuning = 1e4;
  b.detuning_mode = DetuningMode::kFromBare;
  b.detuning = 1e4 + eigenfrequencies(r, dx).offset_plus;
  c.detuning_mode = DetuningMode::kAbsolute;
  c.detuning = r.omega0 + b.detuning;
  a.photon_number = b.photon_number = c.photon_number = 1.0;
  const double da = resolve_operating_point(r, a, dx).Delta;
  CHECK(resolve_operating_point(r, b, dx).Delta == doctest::Approx(da).epsilon(1e-14));
  // The absolute form loses the digits below omega0's ulp.
  CHECK(std::abs(resolve_operating_point(r, c, dx).Delta - da) < 1.0);
  CHECK(detuning_mode_from_string("plus") == DetuningMode::kFromPlus);
  CHECK(to_string(DetuningMode::kFromBare) == "bare");
  CHECK_THROWS_AS(detuning_mode_from_string("nope"), ValidationError);
}

TEST_CASE("drive validation and unsupported port") {
  const CouplingRates r = derive_couplings(fixtures::fig2());
  DriveConfig d;
  CHECK_THROWS_AS(resolve_operating_point(r, d, 0.0), ValidationError);
  d.photon_number = 1.0;
  d.input_flux = 1.0;
  CHECK_THROWS_AS(resolve_operating_point(r, d, 0.0), ValidationError);
  d.input_flux.reset();
  d.port = 2;
  CHECK_THROWS_AS(resolve_operating_point(r, d, 0.0), NumericError);
}

TEST_CASE("optimal length and suppression for the 400 ppm front mirror") {
  const CavitySpec s = fixtures::fig2();
  const OptimalLength o = optimal_L1(s);
  CHECK(o.L1_min == doctest::Approx(0.099751).epsilon(1e-5));
  CHECK(o.B == doctest::Approx(401.0 / 402.0).epsilon(1e-14));
  const Suppression sup = suppression_vs_mim(s);
  CHECK(std::abs(sup.exact - 9.93e-3) < 1e-5);
  CHECK(sup.limit == doctest::Approx(1e-2).epsilon(1e-14));
  CavitySpec none = s;
  none.t1_sq = none.T1 = none.T2 = 0.0;
  CHECK_THROWS_AS(optimal_L1(none), NumericError);
}

TEST_CASE("minimum force noise equals the large-gap spectrum at the optimum") {
  std::mt19937_64 rng(24);
  for (int i = 0; i < 100; ++i) {
    CavitySpec s = oracle::random_spec(rng);
    const double w = std::exp(std::uniform_real_distribution<double>(5, 18)(rng));
    const MinForceNoise m = min_force_noise(s, 1.0, w);
    s.L1 = m.L1_min;
    CHECK(m.value == doctest::Approx(force_noise_large_gap(s, 1.0, w)).epsilon(1e-12));
    CHECK(m.resolved_value <= m.fast_cavity_value);
  }
}

TEST_CASE("numeric optimum over L1 sits at the analytic optimum") {
  const CavitySpec s = fixtures::fig2();
  double best = 0, best_val = HUGE_VAL;
  for (int i = 0; i <= 4000; ++i) {
    CavitySpec t = s;
    t.L1 = s.L * (0.995 + 0.005 * i / 4000.0 * 0.9999);
    const double v = full_at_plus(t, 1.0, fixtures::kOmegaM);
    if (v < best_val) best_val = v, best = t.L1;
  }
  CHECK(std::abs(best - optimal_L1(s).L1_min) < 1e-4 * s.L);
  CHECK(best == doctest::Approx(0.0997538).epsilon(2e-6));
}

TEST_CASE("regime classification") {
  const CavitySpec s = fixtures::fig2();
  const double kp = quadratic_point_summary(s, derive_couplings(s)).kappa_plus;
  CHECK(classify_regime(s, 0.1 * kp) == Regime::kFastCavity);
  CHECK(classify_regime(s, 100 * kp) == Regime::kResolvedSideband);
  CHECK(classify_regime(s, kp) == Regime::kIntermediate);
  CHECK(to_string(Regime::kResolvedSideband) == "resolved-sideband");
}

TEST_CASE("spectrum driver methods") {
  CavitySpec s = fixtures::fig2();
  const std::vector<double> w = {1e4, 1e5, 1e6};
  const NoiseSpectrum full = force_noise_spectrum(s, 1.0, w, NoiseMethod::kFullTwoPort);
  const NoiseSpectrum lg = force_noise_spectrum(s, 1.0, w, NoiseMethod::kLargeGap);
  const NoiseSpectrum sp = force_noise_spectrum(s, 1.0, w, NoiseMethod::kFullSinglePort);
  const NoiseSpectrum rsp = force_noise_spectrum(s, 1.0, w, NoiseMethod::kResonantSinglePort);
  REQUIRE(full.values.size() == 3);
  for (std::size_t i = 0; i < w.size(); ++i) {
    CHECK(full.values[i] == doctest::Approx(lg.values[i]).epsilon(0.02));
    CHECK(sp.values[i] == doctest::Approx(rsp.values[i]).epsilon(0.02));
    CHECK(full.regime[i] == classify_regime(s, w[i]));
  }
}

TEST_CASE("large-gap margin") {
  const CavitySpec s = fixtures::fig2();
  CHECK(large_gap_margin(s, 0.0) > kLargeGapMarginThreshold);
  CHECK(large_gap_margin(s, 1e9) < 1.0);
}

TEST_CASE("transmission map") {
  CavitySpec s;
  s.L = 0.1;
  s.L1 = 0.1 * 100 / 101;
  s.tm_sq = 7e-2;
  s.t1_sq = 6e-2;
  s.t2_sq = 4e-2;
  const CouplingRates r = derive_couplings(s);
  const std::vector<double> dx = {-1e-8, 0.0, 1e-8};
  const std::vector<double> D = {-r.J, 0.0, r.J};
  const auto map = transmission_map(r, dx, D);
  REQUIRE(map.size() == 9);
  for (const TransmissionPoint& p : map) {
    CHECK(p.transmission >= 0.0);
    CHECK(p.transmission <= 1.0 + 1e-12);
    CHECK(p.offset_1 == doctest::Approx(r.G1 * p.dx));
  }
  // Lossless and symmetric: on a normal mode |(k/2 + iJ)^2 + J^2|^2 gives T = 1 / (1 + k^2 / 16 J^2).
  CavitySpec m = fixtures::symmetric_lossless();
  m.t1_sq = m.t2_sq = 1e-3;
  const CouplingRates rm = derive_couplings(m);
  const double q = rm.kappa1 / (4 * rm.J);
  CHECK(transmission(rm, eigenfrequencies(rm, 0.0).offset_plus, 0.0) == doctest::Approx(1 / (1 + q * q)).epsilon(1e-12));
}

}  // TEST_SUITE
