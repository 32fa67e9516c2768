#pragma once

#include "glv4/campaign.hpp"

namespace glv4::test {

// The worked-example twist and the F_p comparison curve, built once.
const TwistInstance& p1();
const GlvContext& p1_ctx();
const GlvContext& p1_lll_ctx();
const BaseInstance& p2();

// The first `count` primes >= start accepted by catalog_get for f.
std::vector<Int> admissible_primes(Family f, long start, int count);

}  // namespace glv4::test
