#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "engel/ff.hpp"

namespace engel {

/// Row-major 2x2 unimodular matrix; entries are field encodings.
struct Mat {
  Elt a, b, c, d;
  friend bool operator==(const Mat&, const Mat&) = default;
};

/// Packs a matrix into a hashable key. Requires q < 2^16, which covers every
/// field this artifact enumerates.
inline std::uint64_t pack(const Mat& m) {
  return (std::uint64_t(m.a) << 48) | (std::uint64_t(m.b) << 32) |
         (std::uint64_t(m.c) << 16) | std::uint64_t(m.d);
}

struct TraceTriple {
  Elt s, u, t;
  friend bool operator==(const TraceTriple&, const TraceTriple&) = default;
};

/// Canonical representative of a +/- pair in PSL(2,q).
struct PslClass {
  Mat rep;
  friend bool operator==(const PslClass&, const PslClass&) = default;
};

/// Index of every group element in enumeration order plus a dense reverse
/// lookup (q^4 slots), used by the brute-force oracle.
struct GroupIndex {
  std::vector<Mat> elems;
  std::vector<std::uint32_t> dense;  // value = index + 1, 0 = not in group
  std::uint64_t q = 0;

  std::uint32_t index(const Mat& m) const {
    std::uint64_t k = ((std::uint64_t(m.a) * q + m.b) * q + m.c) * q + m.d;
    return dense[k] - 1;
  }
};

/// Conjugation orbit partition of SL(2,q), computed by BFS over transvection
/// generators. Serves as its own oracle: no character theory involved.
struct ClassDecomposition {
  GroupIndex gi;
  std::vector<std::uint32_t> class_of;    // by element index
  std::vector<std::uint32_t> rep_index;   // by class id
  std::vector<std::uint64_t> class_size;  // by class id

  std::size_t num_classes() const { return rep_index.size(); }
  const Mat& rep(std::size_t c) const { return gi.elems[rep_index[c]]; }
};

/// Exact arithmetic in SL(2,q). Immutable wrapper around a Field.
class Sl2 {
 public:
  explicit Sl2(const Field& f) : F_(&f) {}

  const Field& field() const { return *F_; }

  Mat identity() const { return {1, 0, 0, 1}; }
  Mat minus_identity() const {
    Elt m = F_->from_int(-1);
    return {m, 0, 0, m};
  }

  /// Constructs with a determinant check.
  Mat make(Elt a, Elt b, Elt c, Elt d) const;
  bool unimodular(const Mat& m) const;

  Mat mul(const Mat& x, const Mat& y) const {
    const Field& F = *F_;
    return {F.add(F.mul(x.a, y.a), F.mul(x.b, y.c)),
            F.add(F.mul(x.a, y.b), F.mul(x.b, y.d)),
            F.add(F.mul(x.c, y.a), F.mul(x.d, y.c)),
            F.add(F.mul(x.c, y.b), F.mul(x.d, y.d))};
  }

  Mat inv(const Mat& x) const {
    return {x.d, F_->neg(x.b), F_->neg(x.c), x.a};
  }

  Mat neg(const Mat& x) const {
    return {F_->neg(x.a), F_->neg(x.b), F_->neg(x.c), F_->neg(x.d)};
  }

  Elt trace(const Mat& x) const { return F_->add(x.a, x.d); }

  Mat conjugate(const Mat& x, const Mat& g) const {
    return mul(mul(g, x), inv(g));
  }

  Mat commutator(const Mat& x, const Mat& y) const {
    return mul(mul(x, y), mul(inv(x), inv(y)));
  }

  Mat pow(Mat x, std::int64_t k) const;

  TraceTriple pi(const Mat& x, const Mat& y) const {
    return {trace(x), trace(mul(x, y)), trace(y)};
  }

  /// All q^3 - q elements in a fixed documented order: a != 0 first (a, b, c
  /// ascending in enc order, d solved), then a = 0 (b ascending, c forced,
  /// d ascending).
  std::vector<Mat> enumerate() const;
  void for_each(const std::function<void(const Mat&)>& fn) const;

  /// Elements with tr = a, in enumeration order.
  std::vector<Mat> elements_with_trace(Elt a) const;

  /// Canonical representative of {M, -M}: for odd q the member whose first
  /// nonzero entry (scan a,b,c,d) has the smaller enc; identity map for even q.
  PslClass psl_project(const Mat& m) const;

  GroupIndex build_index() const;
  ClassDecomposition conjugacy_classes() const;

 private:
  const Field* F_;
};

}  // namespace engel
