#include "engel/sl2.hpp"

#include <deque>
#include <stdexcept>

namespace engel {

Mat Sl2::make(Elt a, Elt b, Elt c, Elt d) const {
  Mat m{a, b, c, d};
  if (!unimodular(m)) throw std::invalid_argument("Sl2::make: det != 1");
  return m;
}

bool Sl2::unimodular(const Mat& m) const {
  const Field& F = *F_;
  return F.sub(F.mul(m.a, m.d), F.mul(m.b, m.c)) == 1;
}

Mat Sl2::pow(Mat x, std::int64_t k) const {
  if (k < 0) {
    x = inv(x);
    k = -k;
  }
  Mat r = identity();
  while (k) {
    if (k & 1) r = mul(r, x);
    x = mul(x, x);
    k >>= 1;
  }
  return r;
}

void Sl2::for_each(const std::function<void(const Mat&)>& fn) const {
  const Field& F = *F_;
  const std::uint64_t q = F.q();
  for (Elt a = 1; a < q; ++a) {
    Elt ai = F.inv(a);
    for (Elt b = 0; b < q; ++b)
      for (Elt c = 0; c < q; ++c) {
        Elt d = F.mul(F.add(1, F.mul(b, c)), ai);
        fn(Mat{a, b, c, d});
      }
  }
  for (Elt b = 1; b < q; ++b) {
    Elt c = F.neg(F.inv(b));  // a = 0 forces bc = -1
    for (Elt d = 0; d < q; ++d) fn(Mat{0, b, c, d});
  }
}

std::vector<Mat> Sl2::enumerate() const {
  std::vector<Mat> out;
  out.reserve(F_->q() * F_->q() * F_->q() - F_->q());
  for_each([&](const Mat& m) { out.push_back(m); });
  return out;
}

std::vector<Mat> Sl2::elements_with_trace(Elt a) const {
  std::vector<Mat> out;
  for_each([&](const Mat& m) {
    if (trace(m) == a) out.push_back(m);
  });
  return out;
}

PslClass Sl2::psl_project(const Mat& m) const {
  if (F_->char2()) return {m};
  const Elt entries[4] = {m.a, m.b, m.c, m.d};
  for (Elt x : entries) {
    if (x == 0) continue;
    return x < F_->neg(x) ? PslClass{m} : PslClass{neg(m)};
  }
  return {m};  // unreachable: the zero matrix is not unimodular
}

GroupIndex Sl2::build_index() const {
  const std::uint64_t q = F_->q();
  GroupIndex gi;
  gi.q = q;
  gi.elems = enumerate();
  gi.dense.assign(q * q * q * q, 0);
  for (std::uint32_t i = 0; i < gi.elems.size(); ++i) {
    const Mat& m = gi.elems[i];
    std::uint64_t k = ((std::uint64_t(m.a) * q + m.b) * q + m.c) * q + m.d;
    gi.dense[k] = i + 1;
  }
  return gi;
}

ClassDecomposition Sl2::conjugacy_classes() const {
  const Field& F = *F_;
  ClassDecomposition cd;
  cd.gi = build_index();
  const std::size_t n = cd.gi.elems.size();
  cd.class_of.assign(n, UINT32_MAX);

  // transvections over a basis of F_q generate SL(2,q); conjugating by them
  // (and their inverses) walks full conjugation orbits
  std::vector<std::pair<Mat, Mat>> gens;  // (g, g^-1)
  Elt basis = 1;
  for (std::uint32_t i = 0; i < F.e(); ++i) {
    Mat up{1, basis, 0, 1}, lo{1, 0, basis, 1};
    gens.emplace_back(up, inv(up));
    gens.emplace_back(lo, inv(lo));
    gens.emplace_back(inv(up), up);
    gens.emplace_back(inv(lo), lo);
    basis = Elt(basis * F.p());  // enc of x^i
  }

  std::deque<std::uint32_t> queue;
  for (std::uint32_t start = 0; start < n; ++start) {
    if (cd.class_of[start] != UINT32_MAX) continue;
    std::uint32_t cls = std::uint32_t(cd.rep_index.size());
    cd.rep_index.push_back(start);
    cd.class_size.push_back(0);
    cd.class_of[start] = cls;
    queue.push_back(start);
    while (!queue.empty()) {
      std::uint32_t idx = queue.front();
      queue.pop_front();
      ++cd.class_size[cls];
      const Mat m = cd.gi.elems[idx];
      for (const auto& [g, gi_] : gens) {
        Mat v = mul(mul(g, m), gi_);
        std::uint32_t j = cd.gi.index(v);
        if (cd.class_of[j] == UINT32_MAX) {
          cd.class_of[j] = cls;
          queue.push_back(j);
        }
      }
    }
  }
  return cd;
}

}  // namespace engel
