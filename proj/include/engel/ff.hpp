#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace engel {

/// Canonical encoding of a field element: enc(x) = sum coeffs[i] * p^i, in [0, q).
using Elt = std::uint32_t;

/// Largest supported field size. The surveys need q <= 1240 only; the limit
/// leaves plenty of headroom for table-based extension fields.
inline constexpr std::uint64_t kMaxFieldSize = 1u << 20;

bool is_prime(std::uint64_t n);

/// Writes p, e with q = p^e (e >= 1, p prime) and returns true, or returns
/// false if q is not a prime power (or q < 2).
bool is_prime_power(std::uint64_t q, std::uint32_t* p_out = nullptr,
                    std::uint32_t* e_out = nullptr);

/// The monic irreducible polynomial of degree e over F_p that is smallest in
/// lexicographic order on (c_{e-1}, ..., c_1, c_0). Returned little-endian
/// with e+1 coefficients (top coefficient 1). For e = 1 returns {0, 1}.
std::vector<std::uint32_t> find_irreducible(std::uint32_t p, std::uint32_t e);

struct FieldSpec {
  std::uint32_t p = 0;
  std::uint32_t e = 1;
  std::vector<std::uint32_t> modulus;  // little-endian, e+1 coefficients, monic
};

/// F_q, q = p^e. Elements are their canonical encodings; all operations are
/// pure, so a const Field is safe to share across threads.
///
/// Prime fields compute modular arithmetic directly. Extension fields build
/// exp/log tables over a fixed generator at construction time, which keeps
/// mul/inv/is_square O(1) in the survey loops.
class Field {
 public:
  explicit Field(std::uint64_t q);
  Field(std::uint32_t p, std::uint32_t e);
  explicit Field(FieldSpec spec);

  std::uint64_t q() const { return q_; }
  std::uint32_t p() const { return p_; }
  std::uint32_t e() const { return e_; }
  const FieldSpec& spec() const { return spec_; }
  bool char2() const { return p_ == 2; }

  Elt zero() const { return 0; }
  Elt one() const { return 1; }

  Elt add(Elt x, Elt y) const {
    if (e_ == 1) {
      std::uint64_t s = std::uint64_t(x) + y;
      return s >= q_ ? Elt(s - q_) : Elt(s);
    }
    if (p_ == 2) return x ^ y;
    if (!add_tbl_.empty()) return add_tbl_[std::size_t(x) * q_ + y];
    return add_slow(x, y);
  }

  Elt neg(Elt x) const {
    if (e_ == 1) return x == 0 ? 0 : Elt(q_ - x);
    if (p_ == 2) return x;
    return neg_tbl_[x];
  }

  Elt sub(Elt x, Elt y) const { return add(x, neg(y)); }

  Elt mul(Elt x, Elt y) const {
    if (e_ == 1) return Elt((std::uint64_t(x) * y) % q_);
    if (x == 0 || y == 0) return 0;
    std::uint32_t l = log_tbl_[x] + log_tbl_[y];
    if (l >= q_ - 1) l -= std::uint32_t(q_ - 1);
    return exp_tbl_[l];
  }

  Elt inv(Elt x) const;
  Elt pow(Elt x, std::uint64_t k) const;
  /// x^(2^n) by n repeated squarings; safe for n beyond 63.
  Elt pow2n(Elt x, unsigned n) const;

  /// Reduction of an integer constant, e.g. from_int(-2).
  Elt from_int(std::int64_t n) const;

  /// Convention: 0 is a square; in characteristic 2 everything is.
  bool is_square(Elt x) const;
  /// The root y with smaller enc among {y, -y}. Throws on non-squares.
  Elt sqrt(Elt x) const;

  /// Little-endian coefficient vector of length e.
  std::vector<std::uint32_t> digits(Elt x) const;
  Elt from_digits(const std::vector<std::uint32_t>& d) const;

  std::string to_string(Elt x) const;  // polynomial form, e.g. "x+1"

 private:
  void init();
  Elt add_slow(Elt x, Elt y) const;
  Elt mul_slow(Elt x, Elt y) const;  // polynomial arithmetic, used during init

  FieldSpec spec_;
  std::uint64_t q_ = 0;
  std::uint32_t p_ = 0;
  std::uint32_t e_ = 1;
  std::vector<Elt> exp_tbl_, log_tbl_, neg_tbl_, add_tbl_;
};

/// F_{q^2} together with the injective ring map F_q -> F_{q^2}.
struct QuadraticExtension {
  Field ext;
  std::vector<Elt> embed_tbl;  // indexed by base-field enc

  Elt embed(Elt x) const { return embed_tbl[x]; }
};

QuadraticExtension quadratic_extension(const Field& base);

}  // namespace engel
