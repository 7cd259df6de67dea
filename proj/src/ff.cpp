#include "engel/ff.hpp"

#include <algorithm>
#include <cassert>

namespace engel {

namespace {

using Poly = std::vector<std::uint32_t>;  // little-endian over F_p

void poly_trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// remainder of a mod b (b monic-normalized on the fly), coefficients mod p
Poly poly_rem(Poly a, const Poly& b, std::uint32_t p) {
  poly_trim(a);
  std::size_t db = b.size() - 1;
  // b must have a nonzero leading coefficient
  std::uint64_t lead = b[db];
  // inverse of lead mod p
  std::uint64_t li = 1;
  {
    std::uint64_t base = lead % p, k = p - 2;
    for (; k; k >>= 1, base = base * base % p)
      if (k & 1) li = li * base % p;
  }
  while (a.size() > db) {
    std::uint64_t c = std::uint64_t(a.back()) * li % p;
    if (c != 0) {
      std::size_t off = a.size() - 1 - db;
      for (std::size_t i = 0; i <= db; ++i) {
        std::uint64_t v = a[off + i] + std::uint64_t(p) - c * b[i] % p;
        a[off + i] = std::uint32_t(v % p);
      }
    }
    a.pop_back();
    poly_trim(a);
    if (a.size() <= db) break;
  }
  return a;
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] = std::uint32_t((r[i + j] + std::uint64_t(a[i]) * b[j]) % p);
  }
  return r;
}

bool poly_divides(const Poly& g, const Poly& f, std::uint32_t p) {
  Poly r = poly_rem(f, g, p);
  return r.empty();
}

// trial division by all monic polynomials of degree 1..deg(f)/2
bool poly_irreducible(const Poly& f, std::uint32_t p) {
  std::size_t e = f.size() - 1;
  if (e == 1) return true;
  for (std::size_t d = 1; d <= e / 2; ++d) {
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t n = 0; n < count; ++n) {
      Poly g(d + 1, 0);
      std::uint64_t m = n;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = std::uint32_t(m % p);
        m /= p;
      }
      g[d] = 1;
      if (poly_divides(g, f, p)) return false;
    }
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> fs;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      fs.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) fs.push_back(n);
  return fs;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool is_prime_power(std::uint64_t q, std::uint32_t* p_out, std::uint32_t* e_out) {
  if (q < 2) return false;
  std::uint64_t p = q;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  std::uint32_t e = 0;
  std::uint64_t m = q;
  while (m % p == 0) {
    m /= p;
    ++e;
  }
  if (m != 1) return false;
  if (p_out) *p_out = std::uint32_t(p);
  if (e_out) *e_out = e;
  return true;
}

std::vector<std::uint32_t> find_irreducible(std::uint32_t p, std::uint32_t e) {
  if (!is_prime(p)) throw std::invalid_argument("find_irreducible: p not prime");
  if (e < 1) throw std::invalid_argument("find_irreducible: e < 1");
  if (e == 1) return {0, 1};
  std::uint64_t count = 1;
  for (std::uint32_t i = 0; i < e; ++i) count *= p;
  // N ascending == lexicographic order on (c_{e-1}, ..., c_0)
  for (std::uint64_t n = 0; n < count; ++n) {
    Poly f(e + 1, 0);
    std::uint64_t m = n;
    for (std::uint32_t i = 0; i < e; ++i) {
      f[i] = std::uint32_t(m % p);
      m /= p;
    }
    f[e] = 1;
    if (poly_irreducible(f, p)) return f;
  }
  throw std::logic_error("find_irreducible: none found");  // unreachable
}

Field::Field(std::uint64_t q) {
  std::uint32_t p, e;
  if (!is_prime_power(q, &p, &e))
    throw std::invalid_argument("Field: q = " + std::to_string(q) +
                                " is not a prime power");
  spec_ = FieldSpec{p, e, find_irreducible(p, e)};
  init();
}

Field::Field(std::uint32_t p, std::uint32_t e) {
  spec_ = FieldSpec{p, e, find_irreducible(p, e)};
  init();
}

Field::Field(FieldSpec spec) : spec_(std::move(spec)) {
  if (!is_prime(spec_.p)) throw std::invalid_argument("Field: p not prime");
  if (spec_.e < 1) throw std::invalid_argument("Field: e < 1");
  if (spec_.e == 1) {
    spec_.modulus = {0, 1};
  } else {
    if (spec_.modulus.size() != spec_.e + 1 || spec_.modulus.back() != 1)
      throw std::invalid_argument("Field: modulus must be monic of degree e");
    for (auto c : spec_.modulus)
      if (c >= spec_.p) throw std::invalid_argument("Field: modulus coeff >= p");
    if (!poly_irreducible(spec_.modulus, spec_.p))
      throw std::invalid_argument("Field: modulus reducible");
  }
  init();
}

void Field::init() {
  p_ = spec_.p;
  e_ = spec_.e;
  q_ = 1;
  for (std::uint32_t i = 0; i < e_; ++i) {
    q_ *= p_;
    if (q_ > kMaxFieldSize) throw std::invalid_argument("Field: q too large");
  }
  if (e_ == 1) return;

  if (p_ != 2) {
    neg_tbl_.resize(q_);
    for (std::uint64_t x = 0; x < q_; ++x) {
      std::uint64_t v = 0, pw = 1, m = x;
      for (std::uint32_t i = 0; i < e_; ++i) {
        std::uint32_t d = std::uint32_t(m % p_);
        m /= p_;
        v += std::uint64_t((p_ - d) % p_) * pw;
        pw *= p_;
      }
      neg_tbl_[x] = Elt(v);
    }
    if (q_ <= 4096) {
      add_tbl_.resize(q_ * q_);
      for (std::uint64_t x = 0; x < q_; ++x)
        for (std::uint64_t y = 0; y < q_; ++y)
          add_tbl_[x * q_ + y] = add_slow(Elt(x), Elt(y));
    }
  }

  // exp/log tables over a generator of the multiplicative group
  auto factors = prime_factors(q_ - 1);
  auto pow_slow = [&](Elt b, std::uint64_t k) {
    Elt r = 1;
    while (k) {
      if (k & 1) r = mul_slow(r, b);
      b = mul_slow(b, b);
      k >>= 1;
    }
    return r;
  };
  Elt g = 0;
  for (Elt cand = 2; cand < q_; ++cand) {
    bool ok = true;
    for (auto r : factors)
      if (pow_slow(cand, (q_ - 1) / r) == 1) {
        ok = false;
        break;
      }
    if (ok) {
      g = cand;
      break;
    }
  }
  exp_tbl_.resize(q_ - 1);
  log_tbl_.assign(q_, 0);
  Elt cur = 1;
  for (std::uint64_t i = 0; i < q_ - 1; ++i) {
    exp_tbl_[i] = cur;
    log_tbl_[cur] = Elt(i);
    cur = mul_slow(cur, g);
  }
}

Elt Field::add_slow(Elt x, Elt y) const {
  std::uint64_t v = 0, pw = 1;
  std::uint64_t mx = x, my = y;
  for (std::uint32_t i = 0; i < e_; ++i) {
    std::uint32_t dx = std::uint32_t(mx % p_), dy = std::uint32_t(my % p_);
    mx /= p_;
    my /= p_;
    v += std::uint64_t((dx + dy) % p_) * pw;
    pw *= p_;
  }
  return Elt(v);
}

Elt Field::mul_slow(Elt x, Elt y) const {
  Poly a = digits(x), b = digits(y);
  poly_trim(a);
  poly_trim(b);
  Poly r = poly_rem(poly_mul(a, b, p_), spec_.modulus, p_);
  r.resize(e_, 0);
  return from_digits(r);
}

Elt Field::inv(Elt x) const {
  if (x == 0) throw std::domain_error("Field::inv: zero has no inverse");
  if (e_ == 1) return pow(x, q_ - 2);
  return exp_tbl_[(q_ - 1 - log_tbl_[x]) % (q_ - 1)];
}

Elt Field::pow(Elt x, std::uint64_t k) const {
  Elt r = 1;
  while (k) {
    if (k & 1) r = mul(r, x);
    x = mul(x, x);
    k >>= 1;
  }
  return r;
}

Elt Field::pow2n(Elt x, unsigned n) const {
  for (unsigned i = 0; i < n; ++i) x = mul(x, x);
  return x;
}

Elt Field::from_int(std::int64_t n) const {
  std::int64_t r = n % std::int64_t(p_);
  if (r < 0) r += p_;
  return Elt(r);
}

bool Field::is_square(Elt x) const {
  if (x == 0 || p_ == 2) return true;
  if (e_ == 1) return pow(x, (q_ - 1) / 2) == 1;
  return log_tbl_[x] % 2 == 0;
}

Elt Field::sqrt(Elt x) const {
  if (x == 0) return 0;
  if (p_ == 2) return pow2n(x, e_ == 1 ? 0 : e_ - 1);  // Frobenius inverse
  if (e_ == 1) {
    // brute scan in enc order returns the smaller root first
    for (Elt y = 1; y <= Elt(q_ / 2); ++y)
      if (mul(y, y) == x) return y;
    throw std::domain_error("Field::sqrt: not a square");
  }
  std::uint32_t l = log_tbl_[x];
  if (l % 2 != 0) throw std::domain_error("Field::sqrt: not a square");
  Elt y = exp_tbl_[l / 2];
  Elt z = neg(y);
  return std::min(y, z);
}

std::vector<std::uint32_t> Field::digits(Elt x) const {
  std::vector<std::uint32_t> d(e_);
  std::uint64_t m = x;
  for (std::uint32_t i = 0; i < e_; ++i) {
    d[i] = std::uint32_t(m % p_);
    m /= p_;
  }
  return d;
}

Elt Field::from_digits(const std::vector<std::uint32_t>& d) const {
  std::uint64_t v = 0, pw = 1;
  for (std::uint32_t i = 0; i < e_; ++i) {
    v += std::uint64_t(d[i] % p_) * pw;
    pw *= p_;
  }
  return Elt(v);
}

std::string Field::to_string(Elt x) const {
  if (e_ == 1) return std::to_string(x);
  auto d = digits(x);
  std::string s;
  for (std::uint32_t i = e_; i-- > 0;) {
    if (d[i] == 0) continue;
    if (!s.empty()) s += "+";
    if (i == 0 || d[i] != 1) s += std::to_string(d[i]);
    if (i >= 1) {
      if (d[i] != 1) s += "*";
      s += "x";
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s.empty() ? "0" : s;
}

QuadraticExtension quadratic_extension(const Field& base) {
  Field ext(base.p(), 2 * base.e());
  // image of the base field's generator: the smallest-enc root of the base
  // modulus inside F_{q^2}; for e = 1 the prime subfield embeds digit-wise.
  std::vector<Elt> tbl(base.q());
  if (base.e() == 1) {
    for (std::uint64_t x = 0; x < base.q(); ++x) tbl[x] = Elt(x);
  } else {
    const auto& mod = base.spec().modulus;
    Elt root = 0;
    bool found = false;
    for (std::uint64_t c = 0; c < ext.q(); ++c) {
      Elt acc = 0, pw = 1;
      for (std::size_t i = 0; i < mod.size(); ++i) {
        acc = ext.add(acc, ext.mul(ext.from_int(mod[i]), pw));
        pw = ext.mul(pw, Elt(c));
      }
      if (acc == 0) {
        root = Elt(c);
        found = true;
        break;
      }
    }
    if (!found) throw std::logic_error("quadratic_extension: no root of modulus");
    for (std::uint64_t x = 0; x < base.q(); ++x) {
      auto d = base.digits(Elt(x));
      Elt acc = 0, pw = 1;
      for (std::uint32_t i = 0; i < base.e(); ++i) {
        acc = ext.add(acc, ext.mul(ext.from_int(d[i]), pw));
        pw = ext.mul(pw, root);
      }
      tbl[x] = acc;
    }
  }
  return QuadraticExtension{std::move(ext), std::move(tbl)};
}

}  // namespace engel
