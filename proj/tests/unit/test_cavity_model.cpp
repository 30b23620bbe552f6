#include <doctest.h>

#include <cmath>
#include <random>

#include "asymcav/cavity_model.hpp"
#include "asymcav/errors.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace asymcav;

TEST_SUITE("cavity-model") {

TEST_CASE("coupling rates for the symmetric 5 cm example") {
  CavitySpec s = fixtures::symmetric_lossless();
  const CouplingRates r = derive_couplings(s);
  CHECK(r.J == doctest::Approx(kSpeedOfLight * 0.1 / (2 * 0.05)).epsilon(1e-14));
  CHECK(r.J == doctest::Approx(2.998e8).epsilon(1e-3));
  CHECK(r.G2 == doctest::Approx(3.541e16).epsilon(1e-3));
  CHECK(r.G1 == doctest::Approx(-r.G2).epsilon(1e-15));
}

TEST_CASE("coupling rates match the oracle on random configs") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const CavitySpec s = oracle::random_spec(rng);
    const CouplingRates r = derive_couplings(s);
    const oracle::Raw o = oracle::raw(s);
    CHECK(oracle::rel(r.G1, o.G1) < 1e-14);
    CHECK(oracle::rel(r.G2, o.G2) < 1e-14);
    CHECK(oracle::rel(r.J, o.J) < 1e-14);
    CHECK(oracle::rel(r.kappa1, o.k1) < 1e-14);
    CHECK(oracle::rel(r.kappa2, o.k2) < 1e-14);
    CHECK(r.J > 0.0);
  }
}

TEST_CASE("eigenfrequencies and decay rates match the Hermitian oracle") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 500; ++i) {
    const CavitySpec s = oracle::random_spec(rng);
    const double dx = std::uniform_real_distribution<double>(-5, 5)(rng) * oracle::dx_scale(s);
    const CouplingRates r = derive_couplings(s);
    const oracle::Raw o = oracle::raw(s);
    const oracle::HermitianEigen e = oracle::hermitian_eigen(o, dx);
    const EigenFrequencies f = eigenfrequencies(r, dx);
    const double scale = std::abs(0.5 * (r.G1 + r.G2) * dx) + 0.5 * f.gap();
    CHECK(std::abs(f.offset_plus - static_cast<double>(e.value[0])) < 1e-13 * scale);
    CHECK(std::abs(f.offset_minus - static_cast<double>(e.value[1])) < 1e-13 * scale);
    CHECK(f.offset_plus < f.offset_minus);

    const auto k = oracle::projected_kappas(o, dx);
    const BranchPair kp = eigenmode_decay_rates(r, dx);
    CHECK(oracle::rel(kp.plus, k[0]) < 1e-12);
    CHECK(oracle::rel(kp.minus, k[1]) < 1e-12);
    CHECK(kp.plus + kp.minus == doctest::Approx(r.kappa1 + r.kappa2).epsilon(1e-14));
  }
}

TEST_CASE("mixing angles") {
  const CouplingRates r = derive_couplings(fixtures::fig2());
  const Mixing m0 = mixing(r, 0.0);
  CHECK(m0.theta_plus == doctest::Approx(kPi / 4).epsilon(1e-15));
  CHECK(m0.theta_minus == doctest::Approx(-kPi / 4).epsilon(1e-15));
  std::mt19937_64 rng(13);
  for (int i = 0; i < 100; ++i) {
    const double dx = std::uniform_real_distribution<double>(-1e-7, 1e-7)(rng);
    const Mixing m = mixing(r, dx);
    CHECK(m.cos2_plus + m.sin2_plus == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(m.theta_minus == doctest::Approx(m.theta_plus - kPi / 2).epsilon(1e-15));
    CHECK(m.cos_plus * m.cos_minus + m.sin_plus * m.sin_minus == doctest::Approx(0.0).epsilon(1e-15));
    // The "+" mode vector agrees with the oracle's lower eigenvector up to sign.
    const auto e = oracle::hermitian_eigen(oracle::raw(fixtures::fig2()), dx);
    const double overlap = m.cos_plus * static_cast<double>(e.vec[0][0]) + m.sin_plus * static_cast<double>(e.vec[0][1]);
    CHECK(std::abs(overlap) == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("first and second derivatives against finite differences") {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 200; ++i) {
    const CavitySpec s = oracle::random_spec(rng);
    const double h = oracle::dx_scale(s);
    const double dx = std::uniform_real_distribution<double>(-3, 3)(rng) * h;
    const CouplingRates r = derive_couplings(s);
    const oracle::Raw o = oracle::raw(s);
    for (int b = 0; b < 2; ++b) {
      auto f = [&](oracle::ld y) { return oracle::hermitian_eigen(o, y).value[b]; };
      auto k = [&](oracle::ld y) { return oracle::projected_kappas(o, y)[b]; };
      const double d1 = static_cast<double>(oracle::derivative(f, dx, 1e-3L * h));
      const double d2 = static_cast<double>(oracle::second_derivative(f, dx, 1e-2L * h));
      const double dk = static_cast<double>(oracle::derivative(k, dx, 1e-3L * h));
      const BranchPair ldc = linear_dispersive_coupling(r, dx);
      const BranchPair qdc = quadratic_dispersive_coupling(r, dx);
      const BranchPair dis = dissipative_coupling(r, dx);
      CHECK(oracle::rel(b == 0 ? ldc.plus : ldc.minus, d1) < 1e-7);
      CHECK(oracle::rel(b == 0 ? qdc.plus : qdc.minus, d2) < 1e-6);
      if (std::abs(r.kappa1 - r.kappa2) > 1e-6 * (r.kappa1 + r.kappa2))
        CHECK(oracle::rel(b == 0 ? dis.plus : dis.minus, dk) < 1e-6);
    }
  }
}

TEST_CASE("quadratic point matches a bisection root of the slope") {
  const CavitySpec s = fixtures::fig2();
  const CouplingRates r = derive_couplings(s);
  const BranchPair q = quadratic_points(r);
  CHECK(q.plus == doctest::Approx(6.77e-9).epsilon(1e-3));
  CHECK(q.minus == doctest::Approx(-q.plus).epsilon(1e-15));
  const oracle::ld root = oracle::stationary_point_lower(oracle::raw(s));
  CHECK(oracle::rel(q.plus, root) < 1e-8);

  std::mt19937_64 rng(15);
  for (int i = 0; i < 50; ++i) {
    const CavitySpec rs = oracle::random_spec(rng);
    if (std::abs(rs.L1 / rs.L - 0.5) < 0.02) continue;  // stationary point too close to 0 for a relative check
    const oracle::ld rr = oracle::stationary_point_lower(oracle::raw(rs));
    CHECK(oracle::rel(quadratic_points(derive_couplings(rs)).plus, rr) < 1e-7);
  }
}

TEST_CASE("no quadratic point for same-sign dispersive couplings") {
  CouplingRates r = derive_couplings(fixtures::fig2());
  r.G1 = std::abs(r.G1);
  CHECK_THROWS_AS(quadratic_points(r), NumericError);
  try {
    quadratic_points(r);
  } catch (const NumericError& e) {
    CHECK(e.kind() == NumericFailure::kNoQuadraticPoint);
  }
}

TEST_CASE("structural invariants at the quadratic point") {
  std::mt19937_64 rng(16);
  for (int i = 0; i < 200; ++i) {
    const CavitySpec s = oracle::random_spec(rng);
    const CouplingRates r = derive_couplings(s);
    const QuadraticPointSummary q = quadratic_point_summary(s, r);
    CHECK(q.alpha * q.alpha + q.beta * q.beta == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(q.kappa_plus == doctest::Approx(empty_cavity_decay_rate(s)).epsilon(1e-12));
    CHECK(q.kappa0 == doctest::Approx(q.kappa_plus).epsilon(1e-12));
    CHECK(q.gap == doctest::Approx(2 * kSpeedOfLight * std::sqrt(s.tm_sq) / s.L).epsilon(1e-9));
    const auto e = oracle::hermitian_eigen(oracle::raw(s), q.dx);
    CHECK(q.local_splitting == doctest::Approx(static_cast<double>(e.value[1] - e.value[0])).epsilon(1e-12));
    CHECK(q.qdc_curvature_magnitude() ==
          doctest::Approx(4 / std::sqrt(s.tm_sq) * s.omega0() * s.omega0() / (kSpeedOfLight * s.L)).epsilon(1e-9));
    const double km = kSpeedOfLight / (2 * s.L) * (s.L2() * s.L2() * s.loss1() + s.L1 * s.L1 * s.loss2()) / (s.L1 * s.L2());
    CHECK(q.kappa_minus == doctest::Approx(km).epsilon(1e-9));
  }
}

TEST_CASE("curvature is independent of the membrane position") {
  CavitySpec s = fixtures::fig2();
  const double ref = quadratic_point_summary(s, derive_couplings(s)).qdc_curvature_magnitude();
  for (double x = 0.5; x <= 0.999; x += 0.0125) {
    s.L1 = x * s.L;
    CHECK(quadratic_point_summary(s, derive_couplings(s)).qdc_curvature_magnitude() ==
          doctest::Approx(ref).epsilon(1e-9));
  }
}

TEST_CASE("single-port dissipative ratio reduces to the geometric form") {
  CavitySpec s = fixtures::fig2();
  const double xzpf = 2e-15;
  const CouplingRates r = derive_couplings(s);
  const double expect = 4 / std::sqrt(s.tm_sq) * s.omega0() / kSpeedOfLight * s.L2() / s.L * xzpf;
  const QuadraticPointSummary p = quadratic_point_summary(s, r, Branch::kPlus, xzpf, true);
  const QuadraticPointSummary m = quadratic_point_summary(s, r, Branch::kMinus, xzpf, true);
  REQUIRE(p.Btilde);
  REQUIRE(m.Btilde);
  CHECK(std::abs(*p.Btilde) == doctest::Approx(expect).epsilon(1e-9));
  CHECK(std::abs(*m.Btilde) == doctest::Approx(expect).epsilon(1e-9));
  CHECK_FALSE(quadratic_point_summary(s, r).Btilde);
}

TEST_CASE("validation names the offending field") {
  CavitySpec s = fixtures::fig2();
  auto field_of = [](const CavitySpec& bad) -> std::string {
    try {
      validate(bad);
    } catch (const ValidationError& e) {
      return e.field();
    }
    return "";
  };
  s.L1 = 0.1;
  CHECK(field_of(s) == "cavity.L1");
  s = fixtures::fig2();
  s.tm_sq = 1.0;
  CHECK(field_of(s) == "cavity.tm_sq");
  s = fixtures::fig2();
  s.T2 = -1e-6;
  CHECK(field_of(s) == "cavity.T2");
  s = fixtures::fig2();
  s.L = std::nan("");
  CHECK_FALSE(field_of(s).empty());
  CHECK(field_of(fixtures::fig2()).empty());
}

TEST_CASE("validity warnings for large transmissions") {
  CavitySpec s = fixtures::fig2();
  CHECK(validity_warnings(s).empty());
  s.tm_sq = 0.2;
  CHECK(validity_warnings(s).size() == 1);
  s.t1_sq = 0.15;
  CHECK(validity_warnings(s).size() == 2);
}

TEST_CASE("zero-membrane-transmission gives J = 0 and decoupled modes") {
  CavitySpec s = fixtures::fig2();
  s.tm_sq = 0.0;
  const CouplingRates r = derive_couplings(s);
  CHECK(r.J == 0.0);
  const EigenFrequencies e = eigenfrequencies(r, 1e-9);
  CHECK(e.offset_plus == doctest::Approx(r.G1 * 1e-9));
  CHECK(e.offset_minus == doctest::Approx(r.G2 * 1e-9));
}

TEST_CASE("mechanical mode helpers") {
  const double x = zero_point_fluctuation(fixtures::kOmegaM, 1e-11);
  CHECK(x == doctest::Approx(std::sqrt(kHbar / (2 * 1e-11 * fixtures::kOmegaM))).epsilon(1e-15));
  const MechanicalMode a = MechanicalMode::from_mass(fixtures::kOmegaM, 1e-11, 2);
  const MechanicalMode b = MechanicalMode::from_x_zpf(fixtures::kOmegaM, a.x_zpf, 2);
  CHECK(b.mass == doctest::Approx(1e-11).epsilon(1e-14));
  CHECK(b.n == 2);
  MechanicalMode bad = a;
  bad.n = -1;
  CHECK_THROWS_AS(validate(bad), ValidationError);
}

TEST_CASE("commensurate sub-cavity length") {
  const CavitySpec s = fixtures::fig2();
  const CommensurateLength c = nearest_commensurate_L1(s);
  CHECK(std::abs(c.L1 - s.L1) <= s.wavelength / 4);
  CHECK(2 * c.L1 / s.wavelength == doctest::Approx(static_cast<double>(c.mode_index)).epsilon(1e-12));
}

}  // TEST_SUITE
