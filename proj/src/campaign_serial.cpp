#include "glv4/campaign.hpp"

namespace glv4 {

DecompReport decomposition_campaign_serial(const DecompJob& job, const std::vector<Int>& ks) {
  std::vector<DecompSample> v;
  v.reserve(ks.size());
  for (const auto& k : ks) v.push_back(decompose_sample(job, k));
  return aggregate(job, v);
}

MulReport mul_campaign_serial(const GlvContext& ctx, Mode mode, int cores,
                              const std::vector<Int>& ks) {
  std::vector<MulSample> v;
  v.reserve(ks.size());
  for (const auto& k : ks) v.push_back(mul_sample(ctx, mode, cores, k));
  return aggregate(v);
}

}  // namespace glv4
