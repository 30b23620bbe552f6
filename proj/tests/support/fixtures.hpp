#pragma once

#include "asymcav/cavity_model.hpp"

namespace fixtures {

inline constexpr double kOmegaM = 2.0 * asymcav::kPi * 240e3;

// L = 10 cm, L1 = 9 cm, |t_m|^2 = 1e4 ppm, |t1|^2 = 400 ppm, |t2|^2 = 0,
// T1 = T2 = 1 ppm.
inline asymcav::CavitySpec fig2() {
  asymcav::CavitySpec s;
  s.L = 0.1;
  s.L1 = 0.09;
  s.tm_sq = 1e-2;
  s.t1_sq = 400e-6;
  s.t2_sq = 0.0;
  s.T1 = 1e-6;
  s.T2 = 1e-6;
  return s;
}

inline asymcav::CavitySpec symmetric_lossless() {
  asymcav::CavitySpec s;
  s.L = 0.1;
  s.L1 = 0.05;
  s.tm_sq = 1e-2;
  return s;
}

// Lossy ringdown geometry: small membrane transmission so the round-trip
// rate stays well above every cavity rate.
inline asymcav::CavitySpec ringdown() {
  asymcav::CavitySpec s;
  s.L = 0.1;
  s.L1 = 0.07;
  s.tm_sq = 1e-4;
  s.t1_sq = 400e-6;
  s.t2_sq = 100e-6;
  s.T1 = 1e-6;
  s.T2 = 1e-6;
  return s;
}

}  // namespace fixtures
