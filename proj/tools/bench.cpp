// Serial vs. parallel timing for the heavy kernels.
#include <chrono>
#include <cstdio>
#include <functional>

#include "engel/analysis.hpp"
#include "engel/oracle.hpp"

using namespace engel;
using Clock = std::chrono::steady_clock;

namespace {

double time_ms(const std::function<void()>& fn) {
  auto t0 = Clock::now();
  fn();
  auto t1 = Clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void row(const char* name, std::uint64_t q, const std::function<void(ExecPolicy)>& fn) {
  double ts = time_ms([&] { fn(ExecPolicy::serial); });
  double tp = time_ms([&] { fn(ExecPolicy::parallel); });
  std::printf("%-22s q=%-6llu serial %9.2f ms   parallel %9.2f ms   speedup %.2fx\n",
              name, static_cast<unsigned long long>(q), ts, tp,
              tp > 0 ? ts / tp : 0.0);
}

}  // namespace

int main() {
  for (std::uint64_t q : {101ull, 499ull, 1009ull}) {
    Field F(q);
    row("compute_Tn(n=8)", q, [&](ExecPolicy pol) { compute_Tn(F, 8, pol); });
    row("orbit_analysis", q, [&](ExecPolicy pol) { orbit_analysis(F, pol); });
    row("stabilized_image", q,
        [&](ExecPolicy pol) { stabilized_image(F, pol); });
  }
  for (std::uint64_t q : {17ull, 29ull, 41ull}) {
    Field F(q);
    row("engel_image(m=2)", q,
        [&](ExecPolicy pol) { engel_image(F, 2, {}, pol); });
    row("fiber_sizes(m=2)", q,
        [&](ExecPolicy pol) { fiber_sizes(F, 2, {}, pol); });
  }
  for (std::uint64_t q : {11ull, 13ull}) {
    Field F(q);
    row("pi_triple_counts", q,
        [&](ExecPolicy pol) { pi_triple_counts(F, {}, pol); });
  }
  return 0;
}
