#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>

#include "asymcav/errors.hpp"
#include "asymcav/oracle_sim.hpp"

namespace asymcav {
namespace {

constexpr std::size_t kMaxSamples = 1200;
constexpr int kMaxOrder = 4;
constexpr double kAcceptResidual = 1e-3;
constexpr double kMinRelativeAmplitude = 1e-2;

}  // namespace

RingdownFit fit_exponentials(const std::vector<double>& signal, double sample_interval) {
  if (signal.size() < 12) throw ValidationError("trajectory", "need at least 12 samples to fit");
  if (!(sample_interval > 0.0)) throw ValidationError("trajectory", "sample interval must be positive");

  const std::size_t stride = (signal.size() + kMaxSamples - 1) / kMaxSamples;
  std::vector<double> y;
  for (std::size_t i = 0; i < signal.size(); i += stride) y.push_back(signal[i]);
  const double h = sample_interval * static_cast<double>(stride);
  const auto N = static_cast<Eigen::Index>(y.size());
  const Eigen::Index P = N / 3;  // pencil parameter

  Eigen::MatrixXd Y(N - P, P + 1);
  for (Eigen::Index i = 0; i < N - P; ++i)
    for (Eigen::Index k = 0; k <= P; ++k) Y(i, k) = y[static_cast<std::size_t>(i + k)];

  Eigen::BDCSVD<Eigen::MatrixXd> svd(Y, Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();
  // True order is at most kMaxOrder, so the next singular value is the noise floor.
  const double floor = sv.size() > kMaxOrder ? sv(kMaxOrder) : 0.0;
  int order = 0;
  for (Eigen::Index i = 0; i < std::min<Eigen::Index>(kMaxOrder, sv.size()); ++i)
    if (sv(i) > 1e-9 * sv(0) && sv(i) > 10.0 * floor) ++order;
  if (order == 0) throw NumericError(NumericFailure::kFitDiverged, "signal has no resolvable component");

  const Eigen::MatrixXd V = svd.matrixV().leftCols(order);
  const Eigen::MatrixXd V1 = V.topRows(P);
  const Eigen::MatrixXd V2 = V.bottomRows(P);
  const Eigen::MatrixXd A = V1.completeOrthogonalDecomposition().solve(V2);
  Eigen::EigenSolver<Eigen::MatrixXd> es(A);
  const Eigen::VectorXcd z = es.eigenvalues();

  Eigen::MatrixXcd Z(N, order);
  for (int m = 0; m < order; ++m) {
    cdouble p{1.0, 0.0};
    for (Eigen::Index k = 0; k < N; ++k) {
      Z(k, m) = p;
      p *= z(m);
    }
  }
  Eigen::VectorXcd yc(N);
  for (Eigen::Index k = 0; k < N; ++k) yc(k) = y[static_cast<std::size_t>(k)];
  const Eigen::VectorXcd amp = Z.colPivHouseholderQr().solve(yc);

  const Eigen::VectorXcd model = Z * amp;
  double res2 = 0.0, sig2 = 0.0;
  for (Eigen::Index k = 0; k < N; ++k) {
    const double r = y[static_cast<std::size_t>(k)] - model(k).real();
    res2 += r * r;
    sig2 += y[static_cast<std::size_t>(k)] * y[static_cast<std::size_t>(k)];
  }
  RingdownFit fit;
  fit.fit_residual = sig2 > 0.0 ? std::sqrt(res2 / sig2) : 0.0;
  if (!(fit.fit_residual < kAcceptResidual)) {
    std::ostringstream os;
    os << "relative rms residual " << fit.fit_residual << " with model order " << order;
    throw NumericError(NumericFailure::kFitDiverged, os.str());
  }

  const double amax = amp.cwiseAbs().maxCoeff();
  double pair_amp = 0.0;
  for (int m = 0; m < order; ++m) {
    if (std::abs(amp(m)) < kMinRelativeAmplitude * amax) continue;
    const cdouble s = std::log(z(m)) / h;
    if (std::abs(std::arg(z(m))) < 1e-6) {
      fit.decay_rates.push_back(-s.real());
    } else if (s.imag() > 0.0 && std::abs(amp(m)) > pair_amp) {
      pair_amp = std::abs(amp(m));
      fit.beat_frequency = s.imag();
      fit.pair_decay_rate = -s.real();
    }
  }
  std::sort(fit.decay_rates.begin(), fit.decay_rates.end(), std::greater<>());
  return fit;
}

RingdownFit fit_ringdown(const std::vector<FieldState>& trajectory) {
  if (trajectory.size() < 2) throw ValidationError("trajectory", "need at least two samples");
  const double h = trajectory[1].time - trajectory[0].time;
  std::size_t n = trajectory.size();
  // The integrator always emits the final step, which may close a shorter interval.
  if (n > 2 && std::abs(trajectory[n - 1].time - trajectory[n - 2].time - h) > 1e-6 * h) --n;
  std::vector<double> power;
  power.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0 && std::abs(trajectory[i].time - trajectory[i - 1].time - h) > 1e-6 * h)
      throw ValidationError("trajectory", "samples must be uniformly spaced");
    power.push_back(std::norm(trajectory[i].alpha1));
  }
  return fit_exponentials(power, h);
}

}  // namespace asymcav
