#include <exception>

#include "glv4/campaign.hpp"

namespace glv4 {

namespace {

// Fills out[i] = f(i) on OpenMP threads; results land in input order so the
// aggregate matches the serial runner exactly.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t count, Fn f) {
  std::vector<T> out(count);
  std::exception_ptr err;
  const long n = long(count);
#pragma omp parallel for schedule(dynamic, 8)
  for (long i = 0; i < n; ++i) {
    try {
      out[std::size_t(i)] = f(std::size_t(i));
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  return out;
}

}  // namespace

DecompReport decomposition_campaign_omp(const DecompJob& job, const std::vector<Int>& ks) {
  auto v = parallel_map<DecompSample>(ks.size(),
                                      [&](std::size_t i) { return decompose_sample(job, ks[i]); });
  return aggregate(job, v);
}

MulReport mul_campaign_omp(const GlvContext& ctx, Mode mode, int cores,
                           const std::vector<Int>& ks) {
  auto v = parallel_map<MulSample>(
      ks.size(), [&](std::size_t i) { return mul_sample(ctx, mode, cores, ks[i]); });
  return aggregate(v);
}

}  // namespace glv4
