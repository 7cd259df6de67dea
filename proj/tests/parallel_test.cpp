#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "engel/analysis.hpp"
#include "engel/oracle.hpp"

using namespace engel;

// The OpenMP kernels must agree bit-for-bit with the serial reference paths.

TEST_CASE("compute_Tn: serial == parallel") {
  for (std::uint64_t q : {7ull, 16ull, 49ull, 101ull}) {
    Field F(q);
    for (unsigned n : {0u, 1u, 3u, 7u}) {
      auto a = compute_Tn(F, n, ExecPolicy::serial);
      auto b = compute_Tn(F, n, ExecPolicy::parallel);
      CHECK(a.in_Tn == b.in_Tn);
      CHECK(a.in_Tn_prime == b.in_Tn_prime);
      CHECK(a.in_full == b.in_full);
    }
  }
}

TEST_CASE("rho_full_missing_by_n: serial == parallel") {
  for (std::uint64_t q : {11ull, 27ull, 53ull}) {
    Field F(q);
    CHECK(rho_full_missing_by_n(F, unsigned(q), ExecPolicy::serial) ==
          rho_full_missing_by_n(F, unsigned(q), ExecPolicy::parallel));
  }
}

TEST_CASE("orbit_analysis and stabilized_image: serial == parallel") {
  for (std::uint64_t q : {9ull, 25ull, 61ull}) {
    Field F(q);
    auto a = orbit_analysis(F, ExecPolicy::serial);
    auto b = orbit_analysis(F, ExecPolicy::parallel);
    CHECK(a.cycle_lengths == b.cycle_lengths);
    CHECK(a.max_preperiod == b.max_preperiod);
    CHECK(a.periodic_points == b.periodic_points);

    auto sa = stabilized_image(F, ExecPolicy::serial);
    auto sb = stabilized_image(F, ExecPolicy::parallel);
    CHECK(sa.n0 == sb.n0);
    CHECK(sa.image == sb.image);
  }
}

TEST_CASE("oracle kernels: serial == parallel") {
  for (std::uint64_t q : {5ull, 9ull, 13ull}) {
    Field F(q);
    for (unsigned m : {1u, 2u}) {
      auto a = engel_image(F, m, {}, ExecPolicy::serial);
      auto b = engel_image(F, m, {}, ExecPolicy::parallel);
      CHECK(a.class_hit == b.class_hit);

      auto fa = fiber_sizes(F, m, {}, ExecPolicy::serial);
      auto fb = fiber_sizes(F, m, {}, ExecPolicy::parallel);
      CHECK(fa.per_class == fb.per_class);
      CHECK(fa.max_dev == fb.max_dev);
    }
    CHECK(pi_triple_counts(F, {}, ExecPolicy::serial) ==
          pi_triple_counts(F, {}, ExecPolicy::parallel));
    CHECK(p_tilde_fiber_count(F, 1, 1, {}, ExecPolicy::serial) ==
          p_tilde_fiber_count(F, 1, 1, {}, ExecPolicy::parallel));
  }
}

TEST_CASE("decide paths: serial == parallel") {
  for (std::uint64_t q : {8ull, 11ull, 29ull}) {
    Field F(q);
    for (unsigned m = 1; m <= 4; ++m) {
      auto a = decide_psl(F, m, ExecPolicy::serial);
      auto b = decide_psl(F, m, ExecPolicy::parallel);
      CHECK(a.surjective == b.surjective);
      CHECK(a.uncovered == b.uncovered);
      if (q % 2 && m >= 2) {
        auto sa = decide_sl_almost(F, m, ExecPolicy::serial);
        auto sb = decide_sl_almost(F, m, ExecPolicy::parallel);
        CHECK(sa.verdict == sb.verdict);
        CHECK(sa.uncovered == sb.uncovered);
      }
    }
  }
}
