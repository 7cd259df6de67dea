#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <string>
#include <utility>

#include "engel/ff.hpp"
#include "engel/words.hpp"

namespace engel {

using BigInt = boost::multiprecision::cpp_int;

/// Exponents of s, u, t.
struct Monomial {
  unsigned s = 0, u = 0, t = 0;
  unsigned degree() const { return s + u + t; }
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Canonical monomial order: degree-lexicographic, s > u > t, largest first.
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.degree() != b.degree()) return a.degree() > b.degree();
    if (a.s != b.s) return a.s > b.s;
    if (a.u != b.u) return a.u > b.u;
    return a.t > b.t;
  }
};

/// Integer polynomial in the characters s = tr x, u = tr xy, t = tr y.
class TracePoly {
 public:
  TracePoly() = default;
  static TracePoly constant(BigInt c);
  static TracePoly var_s();
  static TracePoly var_u();
  static TracePoly var_t();

  const std::map<Monomial, BigInt, MonomialOrder>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  TracePoly& operator+=(const TracePoly& rhs);
  TracePoly& operator-=(const TracePoly& rhs);
  friend TracePoly operator+(TracePoly a, const TracePoly& b) { return a += b; }
  friend TracePoly operator-(TracePoly a, const TracePoly& b) { return a -= b; }
  friend TracePoly operator*(const TracePoly& a, const TracePoly& b);
  friend bool operator==(const TracePoly&, const TracePoly&) = default;

  /// Specialization mod p; a ring homomorphism image.
  Elt eval(const Field& F, Elt s, Elt u, Elt t) const;

  /// Canonical text form in degree-lexicographic order (the CLI contract),
  /// e.g. "-s*u*t + s^2 + u^2 + t^2 - 2".
  std::string str() const;

 private:
  void add_term(const Monomial& m, const BigInt& c);
  std::map<Monomial, BigInt, MonomialOrder> terms_;
};

/// P(s,u,t) with P(tr x, tr xy, tr y) = tr(w(x,y)) over SL(2) of any
/// commutative field; computed by the character rules tr(1) = 2,
/// tr(A^-1) = tr(A), tr(AB) = tr(A)tr(B) - tr(AB^-1), memoized on
/// rotation/inversion-canonical word keys.
TracePoly trace_polynomial(const Word& w);

struct PlanePoint {
  Elt s, t;
  friend bool operator==(const PlanePoint&, const PlanePoint&) = default;
};

/// s^2 + t^2 + u^2 - sut - 2 = tr[x,y] at (s,u,t) = pi(x,y).
Elt p_comm(const Field& F, Elt s, Elt u, Elt t);

/// psi(s,u,t) = (p(s,u,t), t, t); image lies in the plane {u = t}.
TraceTriple psi(const Field& F, Elt s, Elt u, Elt t);

/// mu(s,t) = (s^2 - s t^2 + 2 t^2 - 2, t).
PlanePoint mu(const Field& F, PlanePoint pt);

/// First coordinate of the n-th iterate of mu; rho_0 = s.
Elt rho_n(const Field& F, PlanePoint pt, unsigned n);

/// Conjugated system m(z,k) = (z(z-k), k) under z = s-2, k = t^2-4.
std::pair<Elt, Elt> m_conj(const Field& F, Elt z, Elt k);

/// Characteristic-2 specialization mu(s,t) = (s^2 - s t^2, t).
/// Rejects odd characteristic.
PlanePoint mu_char2(const Field& F, PlanePoint pt);

// Closed-form orbit laws, kept independent of the iterator so they can
// cross-check it.
Elt rho_closed_t2_is_4(const Field& F, Elt s, unsigned n);  // (s-2)^(2^n) + 2
Elt rho_closed_t2_is_2(const Field& F, Elt s, unsigned n);  // (s-1)^(2^n) + 1

}  // namespace engel
