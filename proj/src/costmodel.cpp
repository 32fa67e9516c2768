#include "glv4/costmodel.hpp"

namespace glv4 {

double weighted_ext(const OpCounter& c, const CostModelWeights& w) {
  return double(c.m) + w.s_per_m * double(c.s) + w.a_per_m * double(c.a) +
         w.i_per_m * double(c.i);
}

double weighted_base(const OpCounter& c, const CostModelWeights& w) {
  double M = double(c.M) + w.S_per_M * double(c.S) + w.A_per_M * double(c.A) +
             w.I_per_M * double(c.I);
  return M * w.M_per_m;
}

}  // namespace glv4
