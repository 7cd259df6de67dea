#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "engel/exec.hpp"
#include "engel/sl2.hpp"
#include "engel/tracemap.hpp"

namespace engel {

/// Image of psi over F_q^3: the plane {u=t} minus Z_q for odd q.
struct PsiImage {
  bool even = false;
  std::vector<PlanePoint> z_set;  // (s,t) with t^2 = 4 and s-2 a non-square

  bool contains(const Field& F, Elt s, Elt t) const;
};

PsiImage psi_image(const Field& F);

/// T_n / T'_n / full-plane image data for one (q, n) cell.
struct ImageReport {
  std::uint64_t q = 0;
  unsigned n = 0;
  std::vector<std::uint8_t> in_Tn;       // rho_n(Y_q)
  std::vector<std::uint8_t> in_Tn_prime; // rho_n(Y_q minus t=0 rows)
  std::vector<std::uint8_t> in_full;     // rho_n over all of A^2

  std::vector<Elt> Tn() const;
  std::vector<Elt> missing() const;  // complement of the full-plane image
  /// Unordered pairs {a,-a} with neither member in T_n.
  std::vector<std::pair<Elt, Elt>> missing_pairs(const Field& F) const;
};

ImageReport compute_Tn(const Field& F, unsigned n,
                       ExecPolicy pol = ExecPolicy::parallel);

/// missing()-sets of the full-plane rho image for every n in [1, nmax],
/// computed in one forward sweep per row. Index 0 of the result is n = 1.
std::vector<std::vector<Elt>> rho_full_missing_by_n(
    const Field& F, unsigned nmax, ExecPolicy pol = ExecPolicy::parallel);

struct PslVerdict {
  unsigned m = 0;
  bool surjective = false;
  /// For odd q: pairs {a,-a} with neither trace covered. For even q:
  /// uncovered traces a, stored as (a,a).
  std::vector<std::pair<Elt, Elt>> uncovered;
};

/// Surjectivity of e_m on PSL(2,q) via Cor. "a or -a in T_{m-1}".
/// m = 1 is the commutator case and uses T_0 = rho_0(Y_q).
/// Rejects q <= 3.
PslVerdict decide_psl(const Field& F, unsigned m,
                      ExecPolicy pol = ExecPolicy::parallel);

enum class SlAlmost { yes, no, undetermined_at_minus2 };

struct SlVerdict {
  unsigned m = 0;
  SlAlmost verdict = SlAlmost::no;
  std::vector<Elt> uncovered;  // traces a != -2 outside T_{m-1}, plus -2 when
                               // -2 is outside even the full T_{m-1}
};

/// Almost-surjectivity of e_m on SL(2,q), q > 3 odd, m >= 2. Sufficiency at
/// trace -2 needs -2 in T'_{m-1}; when only that fails the verdict is
/// undetermined_at_minus2 and the caller may fall back to the oracle.
SlVerdict decide_sl_almost(const Field& F, unsigned m,
                           ExecPolicy pol = ExecPolicy::parallel);

/// e_m(x,y) = -id solvable, via the 2-adic criterion: 2^m divides q - 1 or
/// q + 1 (some c in F_{q^2} with c + 1/c in F_q has c^{2^{m-1}} = -1).
/// Requires odd q >= 7 and m >= 2.
bool minus_id_solvable(const Field& F, unsigned m);

/// Constructive witness pair with e_m(x,y) = -id; verifies before returning.
std::pair<Mat, Mat> minus_id_witness(const Field& F, unsigned m);

struct StabilizedImage {
  unsigned n0 = 0;                    // first n with R_{n+1} = R_n
  std::vector<std::uint8_t> image;    // lambda_1(R_{n0}), mask over F_q
};

StabilizedImage stabilized_image(const Field& F,
                                 ExecPolicy pol = ExecPolicy::parallel);

struct OrbitReport {
  std::uint64_t q = 0;
  std::map<std::uint64_t, std::uint64_t> cycle_lengths;  // length -> #cycles
  std::uint64_t max_preperiod = 0;
  std::uint64_t periodic_points = 0;
};

/// Full functional-graph decomposition of mu on F_q^2.
OrbitReport orbit_analysis(const Field& F,
                           ExecPolicy pol = ExecPolicy::parallel);

/// A mu-orbit of exact (prime) length n, if one exists: the cycle points in
/// iteration order, deterministic first hit scanning t then s in enc order.
std::optional<std::vector<PlanePoint>> find_prime_orbit(unsigned n,
                                                        const Field& F);

/// 2^{2n+3} (n-1)^2, the almost-surjectivity threshold for e_{n+1}; n > 2.
std::uint64_t bound_q0(unsigned n);

struct FieldClassRecord {
  bool has_sqrt2 = false;
  bool has_sqrt_minus1 = false;
  bool char2 = false;
};

FieldClassRecord field_class(const Field& F);

/// (n, a) pairs violating "a or -a attained by rho_n over the full plane",
/// for 1 <= n <= nmax. Empty means the scan supports the conjecture.
std::vector<std::pair<unsigned, Elt>> scan_conjecture(
    const Field& F, unsigned nmax, ExecPolicy pol = ExecPolicy::parallel);

}  // namespace engel
