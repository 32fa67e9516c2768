#include "support.hpp"

namespace glv4::test {

const TwistInstance& p1() {
  static const TwistInstance t = [] {
    Rng rng(1);
    return reference_twist(rng);
  }();
  return t;
}

const GlvContext& p1_ctx() {
  static const GlvContext c = GlvContext::make(p1(), Method::cornacchia);
  return c;
}

const GlvContext& p1_lll_ctx() {
  static const GlvContext c = GlvContext::make(p1(), Method::lll);
  return c;
}

const BaseInstance& p2() {
  static const BaseInstance b = [] {
    Rng rng(1);
    return reference_base(rng);
  }();
  return b;
}

std::vector<Int> admissible_primes(Family f, long start, int count) {
  std::vector<Int> out;
  for (Int p = start; int(out.size()) < count; ++p) {
    if (!is_probable_prime(p)) continue;
    try {
      catalog_get(f, p);
      out.push_back(p);
    } catch (const ResidueConditionFailed&) {
    }
  }
  return out;
}

}  // namespace glv4::test
