#include <cmath>
#include <sstream>

#include "asymcav/errors.hpp"
#include "asymcav/oracle_sim.hpp"

namespace asymcav {

GridOptimum grid_optimize(const std::function<double(double)>& objective, double lo, double hi,
                          const GridOptimizeOptions& options) {
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
    throw ValidationError("bounds", "need finite lo < hi");
  if (options.log_scale && lo <= 0.0) throw ValidationError("bounds", "log scale needs lo > 0");
  if (options.points < 3) throw ValidationError("points", "need at least 3 grid points");

  const double sign = options.maximize ? -1.0 : 1.0;
  const double ulo = options.log_scale ? std::log(lo) : lo;
  const double uhi = options.log_scale ? std::log(hi) : hi;
  auto to_x = [&](double u) { return options.log_scale ? std::exp(u) : u; };

  std::size_t evals = 0;
  auto eval = [&](double u) {
    const double x = to_x(u);
    const double v = objective(x);
    ++evals;
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "objective(" << x << ") = " << v;
      throw NumericError(NumericFailure::kNonFiniteObjective, os.str());
    }
    return sign * v;
  };

  const std::size_t n = options.points;
  std::size_t best = 0;
  double best_val = 0.0;
  auto grid_u = [&](std::size_t i) {
    return i + 1 == n ? uhi : ulo + (uhi - ulo) * static_cast<double>(i) / static_cast<double>(n - 1);
  };
  for (std::size_t i = 0; i < n; ++i) {
    const double v = eval(grid_u(i));
    if (i == 0 || v < best_val) {
      best = i;
      best_val = v;
    }
  }

  double a = grid_u(best == 0 ? 0 : best - 1);
  double b = grid_u(best + 1 >= n ? n - 1 : best + 1);
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = eval(c), fd = eval(d);
  for (int it = 0; it < 300 && std::abs(to_x(b) - to_x(a)) > options.xtol; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = eval(d);
    }
  }

  GridOptimum out;
  const double u = fc < fd ? c : d;
  const double v = std::min(fc, fd);
  if (v <= best_val) {
    out.x = to_x(u);
    out.value = sign * v;
  } else {
    out.x = to_x(grid_u(best));
    out.value = sign * best_val;
  }
  out.evaluations = evals;
  return out;
}

}  // namespace asymcav
