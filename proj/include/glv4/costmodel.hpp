#pragma once

#include "glv4/arith.hpp"

namespace glv4 {

// Relative prices, everything expressed in F_{p^2} multiplications (m).
// The F_p side (M, S, A, I) is priced in M and converted with M_per_m.
struct CostModelWeights {
  double s_per_m = 0.70;
  double a_per_m = 0.2;
  double i_per_m = 50;
  double M_per_m = 0.75;
  double S_per_M = 0.85;
  double A_per_M = 0.2;
  double I_per_M = 200;

  static CostModelWeights ones() { return {1, 1, 1, 1, 1, 1, 1}; }
};

// m + s_per_m s + a_per_m a + i_per_m i
double weighted_ext(const OpCounter& c, const CostModelWeights& w = {});
// (M + S_per_M S + A_per_M A + I_per_M I) * M_per_m
double weighted_base(const OpCounter& c, const CostModelWeights& w = {});

}  // namespace glv4
