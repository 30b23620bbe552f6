#include "asymcav/cavity_model.hpp"

#include <cmath>
#include <sstream>

#include "asymcav/errors.hpp"

namespace asymcav {
namespace {

void require_finite(double v, const std::string& field) {
  if (!std::isfinite(v)) throw ValidationError(field, "must be finite");
}

void require_fraction(double v, const std::string& field) {
  require_finite(v, field);
  if (v < 0.0 || v >= 1.0) {
    std::ostringstream os;
    os << "must lie in [0, 1) as a fraction, got " << v;
    throw ValidationError(field, os.str());
  }
}

struct Geometry {
  double s;  // (G1 + G2) / 2
  double a;  // (G2 - G1) / 2
  double u;  // a * dx
  double R;  // hypot(a dx, J), half the gap
};

Geometry geometry(const CouplingRates& r, double dx) {
  Geometry g{};
  g.s = 0.5 * (r.G1 + r.G2);
  g.a = 0.5 * (r.G2 - r.G1);
  g.u = g.a * dx;
  g.R = std::hypot(g.u, r.J);
  return g;
}

}  // namespace

void validate(const CavitySpec& spec, const std::string& prefix) {
  const std::string p = prefix.empty() ? "" : prefix + ".";
  require_finite(spec.L, p + "L");
  require_finite(spec.L1, p + "L1");
  require_finite(spec.wavelength, p + "wavelength");
  if (spec.L <= 0.0) throw ValidationError(p + "L", "must be positive");
  if (spec.L1 <= 0.0 || spec.L1 >= spec.L)
    throw ValidationError(p + "L1", "must satisfy 0 < L1 < L");
  if (spec.wavelength <= 0.0) throw ValidationError(p + "wavelength", "must be positive");
  require_fraction(spec.tm_sq, p + "tm_sq");
  require_fraction(spec.t1_sq, p + "t1_sq");
  require_fraction(spec.t2_sq, p + "t2_sq");
  require_fraction(spec.T1, p + "T1");
  require_fraction(spec.T2, p + "T2");
}

std::vector<std::string> validity_warnings(const CavitySpec& spec) {
  std::vector<std::string> out;
  if (spec.tm_sq >= 0.1) out.push_back("tm_sq >= 0.1: membrane not weakly transmitting");
  if (spec.t1_sq >= 0.1) out.push_back("t1_sq >= 0.1: input mirror not highly reflective");
  if (spec.t2_sq >= 0.1) out.push_back("t2_sq >= 0.1: back mirror not highly reflective");
  return out;
}

CouplingRates derive_couplings(const CavitySpec& spec) {
  validate(spec);
  const double c = kSpeedOfLight;
  const double L1 = spec.L1;
  const double L2 = spec.L2();
  CouplingRates r;
  r.omega0 = spec.omega0();
  r.G1 = -r.omega0 / L1;
  r.G2 = r.omega0 / L2;
  r.J = c * std::sqrt(spec.tm_sq) / (2.0 * std::sqrt(L1 * L2));
  r.kappa1_ext = c * spec.t1_sq / (2.0 * L1);
  r.kappa2_ext = c * spec.t2_sq / (2.0 * L2);
  r.kappa1_int = c * spec.T1 / (2.0 * L1);
  r.kappa2_int = c * spec.T2 / (2.0 * L2);
  r.kappa1 = r.kappa1_ext + r.kappa1_int;
  r.kappa2 = r.kappa2_ext + r.kappa2_int;
  return r;
}

EigenFrequencies eigenfrequencies(const CouplingRates& rates, double dx) {
  const Geometry g = geometry(rates, dx);
  EigenFrequencies e;
  e.omega0 = rates.omega0;
  e.offset_plus = g.s * dx - g.R;
  e.offset_minus = g.s * dx + g.R;
  return e;
}

Mixing mixing(const CouplingRates& rates, double dx) {
  const Geometry g = geometry(rates, dx);
  Mixing m;
  m.theta_plus = 0.5 * std::atan2(rates.J, g.u);
  m.theta_minus = m.theta_plus - 0.5 * kPi;
  if (g.R == 0.0) {
    m.cos2_plus = 1.0;
    m.sin2_plus = 0.0;
  } else if (g.u >= 0.0) {
    m.sin2_plus = rates.J * rates.J / (2.0 * g.R * (g.R + g.u));
    m.cos2_plus = 1.0 - m.sin2_plus;
  } else {
    m.cos2_plus = rates.J * rates.J / (2.0 * g.R * (g.R - g.u));
    m.sin2_plus = 1.0 - m.cos2_plus;
  }
  m.cos_plus = std::sqrt(m.cos2_plus);
  m.sin_plus = std::sqrt(m.sin2_plus);
  m.cos_minus = m.sin_plus;
  m.sin_minus = -m.cos_plus;
  return m;
}

BranchPair linear_dispersive_coupling(const CouplingRates& rates, double dx) {
  const Geometry g = geometry(rates, dx);
  if (g.R == 0.0) return {g.s, g.s};
  const double odd = g.a * g.u / g.R;
  return {g.s - odd, g.s + odd};
}

BranchPair quadratic_dispersive_coupling(const CouplingRates& rates, double dx) {
  const Geometry g = geometry(rates, dx);
  const double k = g.a * g.a * rates.J * rates.J / (g.R * g.R * g.R);
  return {-k, k};
}

BranchPair eigenmode_decay_rates(const CouplingRates& rates, double dx) {
  const Mixing m = mixing(rates, dx);
  return {rates.kappa1 * m.cos2_plus + rates.kappa2 * m.sin2_plus,
          rates.kappa1 * m.sin2_plus + rates.kappa2 * m.cos2_plus};
}

BranchPair dissipative_coupling(const CouplingRates& rates, double dx) {
  const Geometry g = geometry(rates, dx);
  const double d = (rates.kappa1 - rates.kappa2) * g.a * rates.J * rates.J / (2.0 * g.R * g.R * g.R);
  return {d, -d};
}

BranchPair quadratic_points(const CouplingRates& rates) {
  if (!(rates.G1 * rates.G2 < 0.0)) {
    throw NumericError(NumericFailure::kNoQuadraticPoint,
                       "dispersive couplings G1, G2 must have opposite signs");
  }
  const double dxp = rates.J * (rates.G2 + rates.G1) /
                     ((rates.G2 - rates.G1) * std::sqrt(-rates.G1 * rates.G2));
  return {dxp, -dxp};
}

double QuadraticPointSummary::qdc_curvature_magnitude() const { return std::abs(qdc_curvature); }

double empty_cavity_decay_rate(const CavitySpec& spec) {
  return kSpeedOfLight / (2.0 * spec.L) * (spec.loss1() + spec.loss2());
}

QuadraticPointSummary quadratic_point_summary(const CavitySpec& spec, const CouplingRates& rates,
                                              Branch branch, std::optional<double> x_zpf,
                                              bool single_port) {
  const BranchPair pts = quadratic_points(rates);
  const bool plus = branch == Branch::kPlus;

  QuadraticPointSummary q;
  q.branch = branch;
  q.dx_plus = pts.plus;
  q.dx_minus = pts.minus;
  q.dx = plus ? pts.plus : pts.minus;
  q.alpha = 1.0 / std::sqrt(1.0 - rates.G2 / rates.G1);
  q.beta = 1.0 / std::sqrt(1.0 - rates.G1 / rates.G2);
  q.omega0 = rates.omega0;

  const EigenFrequencies e = eigenfrequencies(rates, q.dx);
  q.offset_plus = e.offset_plus;
  q.offset_minus = e.offset_minus;
  q.local_splitting = e.gap();
  q.gap = eigenfrequencies(rates, pts.minus).offset_minus - eigenfrequencies(rates, pts.plus).offset_plus;

  const BranchPair k = eigenmode_decay_rates(rates, q.dx);
  q.kappa_plus = k.plus;
  q.kappa_minus = k.minus;
  q.kappa0 = empty_cavity_decay_rate(spec);

  const BranchPair curv = quadratic_dispersive_coupling(rates, q.dx);
  q.qdc_curvature = plus ? curv.plus : curv.minus;
  const BranchPair dk = dissipative_coupling(rates, q.dx);
  q.dkappa_dx = plus ? dk.plus : dk.minus;

  if (x_zpf && single_port) {
    // kappa2 -> 0: the kappa1 factor cancels between d kappa / dx and kappa.
    const Geometry g = geometry(rates, q.dx);
    const Mixing m = mixing(rates, q.dx);
    const double slope = g.a * rates.J * rates.J / (2.0 * g.R * g.R * g.R);
    q.Btilde = plus ? *x_zpf * slope / m.cos2_plus : -*x_zpf * slope / m.sin2_plus;
  }
  return q;
}

double zero_point_fluctuation(double Omega_m, double mass) {
  return std::sqrt(kHbar / (2.0 * mass * Omega_m));
}

MechanicalMode MechanicalMode::from_mass(double Omega_m, double mass, int n) {
  MechanicalMode m;
  m.Omega_m = Omega_m;
  m.mass = mass;
  m.x_zpf = zero_point_fluctuation(Omega_m, mass);
  m.n = n;
  return m;
}

MechanicalMode MechanicalMode::from_x_zpf(double Omega_m, double x_zpf, int n) {
  MechanicalMode m;
  m.Omega_m = Omega_m;
  m.x_zpf = x_zpf;
  m.mass = kHbar / (2.0 * Omega_m * x_zpf * x_zpf);
  m.n = n;
  return m;
}

void validate(const MechanicalMode& mech, const std::string& prefix) {
  const std::string p = prefix.empty() ? "" : prefix + ".";
  require_finite(mech.Omega_m, p + "Omega_m");
  require_finite(mech.mass, p + "mass");
  require_finite(mech.x_zpf, p + "x_zpf");
  if (mech.Omega_m <= 0.0) throw ValidationError(p + "Omega_m", "must be positive");
  if (mech.mass <= 0.0) throw ValidationError(p + "mass", "must be positive");
  if (mech.x_zpf <= 0.0) throw ValidationError(p + "x_zpf", "must be positive");
  if (mech.n < 0) throw ValidationError(p + "n", "must be non-negative");
  const double x = zero_point_fluctuation(mech.Omega_m, mech.mass);
  if (std::abs(x - mech.x_zpf) > 1e-12 * x)
    throw ValidationError(p + "x_zpf", "inconsistent with mass and Omega_m");
}

CommensurateLength nearest_commensurate_L1(const CavitySpec& spec) {
  const double half = 0.5 * spec.wavelength;
  long long n = std::llround(spec.L1 / half);
  if (n < 1) n = 1;
  return {static_cast<double>(n) * half, n};
}

}  // namespace asymcav
