#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "engel/exec.hpp"
#include "engel/sl2.hpp"

namespace engel {

/// Explicit work limits for the brute-force paths. Exceeding a cap is a
/// refusal (ResourceCapError), never a silently truncated result.
struct OracleCaps {
  std::uint64_t max_q_class = 64;  // conjugacy-reduced loops, ~q^4 work
  std::uint64_t max_q_pairs = 17;  // full (x,y) double enumeration, ~q^6 work
};

struct ResourceCapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Exact image of e_m on SL(2,q), stored as a hit flag per conjugacy class
/// (the image is conjugation-closed).
struct OracleImage {
  std::uint64_t q = 0;
  unsigned m = 0;
  ClassDecomposition cd;
  std::vector<std::uint8_t> class_hit;

  bool contains(const Mat& z) const {
    return class_hit[cd.class_of[cd.gi.index(z)]];
  }
  std::uint64_t element_count() const;
  bool full() const;
  /// Mask over F_q of attained traces.
  std::vector<std::uint8_t> trace_set(const Field& F) const;
  /// Number of distinct PSL classes attained.
  std::uint64_t psl_class_count(const Sl2& G) const;
};

/// Conjugacy-reduced enumeration: x over class representatives, y over the
/// whole group.
OracleImage engel_image(const Field& F, unsigned m, const OracleCaps& caps = {},
                        ExecPolicy pol = ExecPolicy::parallel);

/// Raw (q^3-q)^2 double loop; hit flag per element in enumeration order.
/// Only for validating the reduced method at tiny q.
std::vector<std::uint8_t> engel_image_naive(const Field& F, unsigned m,
                                            const OracleCaps& caps = {});

struct FiberReport {
  std::uint64_t q = 0;
  unsigned m = 0;
  std::uint64_t order = 0;               // |SL(2,q)|
  std::vector<std::uint64_t> per_class;  // |E_m(g)| for one g in each class
  std::vector<Elt> class_trace;
  // Deviation | |E_m(g)| / order - 1 | over S = {g : tr g != +-2}.
  double max_dev = 0, min_dev = 0;
  std::uint64_t s_size = 0;  // |S|, element count
};

/// Exact fiber sizes of e_m per conjugacy class, by the weighted tally
/// (reps x full group, tallies weighted by class size). Verifies that fibers
/// sum to (q^3-q)^2 before returning.
FiberReport fiber_sizes(const Field& F, unsigned m, const OracleCaps& caps = {},
                        ExecPolicy pol = ExecPolicy::parallel);

/// Recount of per-class fibers by the raw double loop; validates fiber_sizes.
std::vector<std::uint64_t> fiber_sizes_naive(const Field& F, unsigned m,
                                             const OracleCaps& caps = {});

/// |pi^{-1}(s,u,t)| for every triple, dense at index (s*q + u)*q + t.
std::vector<std::uint64_t> pi_triple_counts(const Field& F,
                                            const OracleCaps& caps = {},
                                            ExecPolicy pol = ExecPolicy::parallel);

/// Theorem 2.2 check: every (s,u,t) in F_q^3 attained by pi.
bool pi_fiber_check(const Field& F, const OracleCaps& caps = {},
                    ExecPolicy pol = ExecPolicy::parallel);

/// |tau^{-1}(a)| = #{M : tr M = a}, by one pass over the group.
std::uint64_t tau_fiber_count(const Field& F, Elt a);

/// |p~^{-1}(s,t)| = #{(x,y) : tr[x,y] = s, tr y = t} (Lemma 7.2).
std::uint64_t p_tilde_fiber_count(const Field& F, Elt s, Elt t,
                                  const OracleCaps& caps = {},
                                  ExecPolicy pol = ExecPolicy::parallel);

/// PSL classes attained by e_m, as canonical representatives.
std::vector<PslClass> psl_image(const Field& F, unsigned m,
                                const OracleCaps& caps = {},
                                ExecPolicy pol = ExecPolicy::parallel);

}  // namespace engel
