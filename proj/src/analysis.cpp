#include "engel/analysis.hpp"

#include <algorithm>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "engel/words.hpp"

namespace engel {
namespace {

// One mu step along a fixed row t: s -> s(s - t^2) + 2t^2 - 2.
struct RowMap {
  const Field* F;
  Elt t2, c;

  RowMap(const Field& f, Elt t) : F(&f) {
    t2 = f.mul(t, t);
    c = f.sub(f.add(t2, t2), f.from_int(2));
  }
  Elt operator()(Elt s) const { return F->add(F->mul(s, F->sub(s, t2)), c); }
};

// True when (s, t) is excluded from Psi_q, i.e. t^2 = 4 and s - 2 is not a
// square (odd q only).
bool excluded_from_psi(const Field& F, Elt s, Elt t) {
  if (F.char2()) return false;
  if (F.mul(t, t) != F.from_int(4)) return false;
  return !F.is_square(F.sub(s, F.from_int(2)));
}

void merge_or(std::vector<std::uint8_t>& dst,
              const std::vector<std::uint8_t>& src) {
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] |= src[i];
}

}  // namespace

bool PsiImage::contains(const Field& F, Elt s, Elt t) const {
  if (even) return true;
  return !excluded_from_psi(F, s, t);
}

PsiImage psi_image(const Field& F) {
  PsiImage out;
  out.even = F.char2();
  if (out.even) return out;
  for (Elt t : {F.from_int(2), F.from_int(-2)})
    for (Elt s = 0; s < Elt(F.q()); ++s)
      if (excluded_from_psi(F, s, t)) out.z_set.push_back({s, t});
  return out;
}

std::vector<Elt> ImageReport::Tn() const {
  std::vector<Elt> out;
  for (Elt a = 0; a < Elt(in_Tn.size()); ++a)
    if (in_Tn[a]) out.push_back(a);
  return out;
}

std::vector<Elt> ImageReport::missing() const {
  std::vector<Elt> out;
  for (Elt a = 0; a < Elt(in_full.size()); ++a)
    if (!in_full[a]) out.push_back(a);
  return out;
}

std::vector<std::pair<Elt, Elt>> ImageReport::missing_pairs(
    const Field& F) const {
  std::vector<std::pair<Elt, Elt>> out;
  for (Elt a = 0; a < Elt(F.q()); ++a) {
    Elt b = F.neg(a);
    if (a > b) continue;
    if (!in_Tn[a] && !in_Tn[b]) out.emplace_back(a, b);
  }
  return out;
}

ImageReport compute_Tn(const Field& F, unsigned n, ExecPolicy pol) {
  const Elt q = Elt(F.q());
  ImageReport rep;
  rep.q = q;
  rep.n = n;
  rep.in_Tn.assign(q, 0);
  rep.in_Tn_prime.assign(q, 0);
  rep.in_full.assign(q, 0);

  auto do_row = [&](Elt t, std::vector<std::uint8_t>& Tn,
                    std::vector<std::uint8_t>& Tp,
                    std::vector<std::uint8_t>& full) {
    RowMap f(F, t);
    bool t_sq_4 = !F.char2() && f.t2 == F.from_int(4);
    for (Elt s = 0; s < q; ++s) {
      Elt v = s;
      for (unsigned k = 0; k < n; ++k) v = f(v);
      full[v] = 1;
      if (t_sq_4 && !F.is_square(F.sub(s, F.from_int(2)))) continue;
      Tn[v] = 1;
      if (t != 0) Tp[v] = 1;
    }
  };

  if (pol == ExecPolicy::serial) {
    for (Elt t = 0; t < q; ++t)
      do_row(t, rep.in_Tn, rep.in_Tn_prime, rep.in_full);
    return rep;
  }

#ifdef _OPENMP
#pragma omp parallel
  {
    std::vector<std::uint8_t> Tn(q, 0), Tp(q, 0), full(q, 0);
#pragma omp for schedule(dynamic)
    for (std::int64_t t = 0; t < std::int64_t(q); ++t)
      do_row(Elt(t), Tn, Tp, full);
#pragma omp critical
    {
      merge_or(rep.in_Tn, Tn);
      merge_or(rep.in_Tn_prime, Tp);
      merge_or(rep.in_full, full);
    }
  }
#else
  for (Elt t = 0; t < q; ++t)
    do_row(t, rep.in_Tn, rep.in_Tn_prime, rep.in_full);
#endif
  return rep;
}

std::vector<std::vector<Elt>> rho_full_missing_by_n(const Field& F,
                                                    unsigned nmax,
                                                    ExecPolicy pol) {
  const Elt q = Elt(F.q());
  std::vector<std::vector<std::uint8_t>> cover(nmax + 1,
                                               std::vector<std::uint8_t>(q, 0));

  // Forward image sets of one row are decreasing, so each row stabilizes and
  // the stable mask can be OR-ed into every remaining level.
  auto do_row = [&](Elt t, std::vector<std::vector<std::uint8_t>>& cov) {
    RowMap f(F, t);
    std::vector<Elt> cur(q);
    for (Elt s = 0; s < q; ++s) cur[s] = s;
    std::vector<std::uint8_t> mask(q, 1);
    for (unsigned n = 1; n <= nmax; ++n) {
      std::vector<std::uint8_t> next_mask(q, 0);
      std::vector<Elt> next;
      next.reserve(cur.size());
      for (Elt s : cur) {
        Elt v = f(s);
        if (!next_mask[v]) {
          next_mask[v] = 1;
          next.push_back(v);
        }
      }
      merge_or(cov[n], next_mask);
      bool stable = next.size() == cur.size() && next_mask == mask;
      cur.swap(next);
      mask.swap(next_mask);
      if (stable) {
        for (unsigned m = n + 1; m <= nmax; ++m) merge_or(cov[m], mask);
        break;
      }
    }
  };

  bool parallel = pol == ExecPolicy::parallel;
#ifdef _OPENMP
  if (parallel) {
#pragma omp parallel
    {
      std::vector<std::vector<std::uint8_t>> cov(
          nmax + 1, std::vector<std::uint8_t>(q, 0));
#pragma omp for schedule(dynamic)
      for (std::int64_t t = 0; t < std::int64_t(q); ++t) do_row(Elt(t), cov);
#pragma omp critical
      for (unsigned n = 1; n <= nmax; ++n) merge_or(cover[n], cov[n]);
    }
    parallel = true;
  } else
#endif
  {
    for (Elt t = 0; t < q; ++t) do_row(t, cover);
  }

  std::vector<std::vector<Elt>> missing(nmax);
  for (unsigned n = 1; n <= nmax; ++n)
    for (Elt a = 0; a < q; ++a)
      if (!cover[n][a]) missing[n - 1].push_back(a);
  return missing;
}

PslVerdict decide_psl(const Field& F, unsigned m, ExecPolicy pol) {
  if (F.q() <= 3) throw std::invalid_argument("decide_psl: need q > 3");
  if (m == 0) throw std::invalid_argument("decide_psl: need m >= 1");
  PslVerdict v;
  v.m = m;
  ImageReport rep = compute_Tn(F, m - 1, pol);
  if (F.char2()) {
    for (Elt a = 0; a < Elt(F.q()); ++a)
      if (!rep.in_Tn[a]) v.uncovered.emplace_back(a, a);
  } else {
    v.uncovered = rep.missing_pairs(F);
  }
  v.surjective = v.uncovered.empty();
  return v;
}

SlVerdict decide_sl_almost(const Field& F, unsigned m, ExecPolicy pol) {
  if (F.q() <= 3) throw std::invalid_argument("decide_sl_almost: need q > 3");
  if (m < 2) throw std::invalid_argument("decide_sl_almost: need m >= 2");
  SlVerdict v;
  v.m = m;
  ImageReport rep = compute_Tn(F, m - 1, pol);

  if (F.char2()) {
    // -id = id, so almost-surjective means surjective, i.e. T_{m-1} = F_q.
    for (Elt a = 0; a < Elt(F.q()); ++a)
      if (!rep.in_Tn[a]) v.uncovered.push_back(a);
    v.verdict = v.uncovered.empty() ? SlAlmost::yes : SlAlmost::no;
    return v;
  }

  Elt two = F.from_int(2), neg2 = F.neg(two);
  for (Elt a = 0; a < Elt(F.q()); ++a) {
    if (a == two || a == neg2) continue;
    if (!rep.in_Tn[a]) v.uncovered.push_back(a);
  }
  if (!rep.in_Tn[neg2]) v.uncovered.push_back(neg2);
  if (!v.uncovered.empty()) {
    v.verdict = SlAlmost::no;
    return v;
  }
  v.verdict = rep.in_Tn_prime[neg2] ? SlAlmost::yes
                                    : SlAlmost::undetermined_at_minus2;
  return v;
}

bool minus_id_solvable(const Field& F, unsigned m) {
  if (F.char2() || F.q() < 7)
    throw std::invalid_argument("minus_id_solvable: need odd q >= 7");
  if (m < 2) throw std::invalid_argument("minus_id_solvable: need m >= 2");
  // Necessary by the t=0 trace argument; sufficient by the Prop 4.7 curve
  // construction (q >= 7). Equivalent to 2^m | q-1 or 2^m | q+1: writing
  // b = c + 1/c puts c in F_q or on the norm-1 circle, and rho(b,0) = -2
  // forces ord(c) = 2^m. The naive "2^m | q^2-1" form overcounts (q=7, m=4).
  Elt neg2 = F.from_int(-2), two = F.from_int(2);
  for (Elt b = 0; b < Elt(F.q()); ++b) {
    Elt s = b;
    for (unsigned k = 0; k + 1 < m; ++k) s = F.sub(F.mul(s, s), two);
    if (s == neg2) return true;
  }
  return false;
}

std::pair<Mat, Mat> minus_id_witness(const Field& F, unsigned m) {
  if (!minus_id_solvable(F, m))
    throw std::runtime_error("minus_id_witness: no solution exists");
  const Elt q = Elt(F.q());
  Elt two = F.from_int(2), neg2 = F.neg(two);

  // b in F_q with rho_{m-1}(b, 0) = -2; exists by the 2-adic criterion.
  Elt b = q;
  for (Elt cand = 0; cand < q; ++cand) {
    Elt s = cand;
    for (unsigned k = 0; k + 1 < m; ++k) s = F.sub(F.mul(s, s), two);
    if (s == neg2) {
      b = cand;
      break;
    }
  }
  if (b == q) throw std::logic_error("minus_id_witness: no b with rho=-2");

  // Point on s^2 + u^2 = b + 2 with s != +-2.
  Elt s = 0, u = 0;
  bool found = false;
  Elt rhs0 = F.add(b, two);
  for (Elt cand = 0; cand < q && !found; ++cand) {
    if (cand == two || cand == neg2) continue;
    Elt r = F.sub(rhs0, F.mul(cand, cand));
    if (F.is_square(r)) {
      s = cand;
      u = F.sqrt(r);
      found = true;
    }
  }
  if (!found) throw std::logic_error("minus_id_witness: curve point search");

  // Lift (s, u, 0) through pi: with y0 = (0,1;-1,0), tr(x0 y0) is the
  // difference of the off-diagonal entries of x0.
  Sl2 G(F);
  Mat y0 = G.make(0, 1, F.from_int(-1), 0);
  Mat x0{};
  found = false;
  for (Elt a = 0; a < q && !found; ++a) {
    Elt d = F.sub(s, a);
    for (Elt bb = 0; bb < q; ++bb) {
      Elt cc = F.add(u, bb);
      if (F.sub(F.mul(a, d), F.mul(bb, cc)) == F.one()) {
        x0 = {a, bb, cc, d};
        found = true;
        break;
      }
    }
  }
  if (!found) throw std::logic_error("minus_id_witness: trace lift");

  if (evaluate_engel(m, G, x0, y0) != G.minus_identity())
    throw std::logic_error("minus_id_witness: verification failed");
  return {x0, y0};
}

StabilizedImage stabilized_image(const Field& F, ExecPolicy pol) {
  const Elt q = Elt(F.q());
  StabilizedImage out;
  out.image.assign(q, 0);
  unsigned n0 = 0;

  auto do_row = [&](Elt t, std::vector<std::uint8_t>& img, unsigned& row_n0) {
    RowMap f(F, t);
    std::vector<std::uint8_t> mask(q, 1);
    std::vector<Elt> cur(q);
    for (Elt s = 0; s < q; ++s) cur[s] = s;
    unsigned n = 0;
    for (;;) {
      std::vector<std::uint8_t> next_mask(q, 0);
      std::vector<Elt> next;
      next.reserve(cur.size());
      for (Elt s : cur) {
        Elt v = f(s);
        if (!next_mask[v]) {
          next_mask[v] = 1;
          next.push_back(v);
        }
      }
      if (next.size() == cur.size()) break;
      ++n;
      cur.swap(next);
      mask.swap(next_mask);
    }
    row_n0 = std::max(row_n0, n);
    merge_or(img, mask);
  };

#ifdef _OPENMP
  if (pol == ExecPolicy::parallel) {
#pragma omp parallel
    {
      std::vector<std::uint8_t> img(q, 0);
      unsigned local_n0 = 0;
#pragma omp for schedule(dynamic)
      for (std::int64_t t = 0; t < std::int64_t(q); ++t)
        do_row(Elt(t), img, local_n0);
#pragma omp critical
      {
        merge_or(out.image, img);
        n0 = std::max(n0, local_n0);
      }
    }
    out.n0 = n0;
    return out;
  }
#endif
  for (Elt t = 0; t < q; ++t) do_row(t, out.image, n0);
  out.n0 = n0;
  return out;
}

OrbitReport orbit_analysis(const Field& F, ExecPolicy pol) {
  const Elt q = Elt(F.q());
  OrbitReport out;
  out.q = F.q();

  struct RowStats {
    std::map<std::uint64_t, std::uint64_t> cycles;
    std::uint64_t max_pre = 0, periodic = 0;
  };

  auto do_row = [&](Elt t, RowStats& st) {
    RowMap f(F, t);
    // preperiod[s] is exact once state[s] == 2.
    std::vector<std::uint8_t> state(q, 0);
    std::vector<std::uint32_t> pre(q, 0);
    std::vector<Elt> path;
    for (Elt s0 = 0; s0 < q; ++s0) {
      if (state[s0]) continue;
      path.clear();
      Elt s = s0;
      while (state[s] == 0) {
        state[s] = 1;
        path.push_back(s);
        s = f(s);
      }
      std::size_t tail;
      if (state[s] == 1) {
        // New cycle: s is on the current path.
        std::size_t start = 0;
        while (path[start] != s) ++start;
        std::uint64_t len = path.size() - start;
        ++st.cycles[len];
        st.periodic += len;
        for (std::size_t i = start; i < path.size(); ++i) {
          state[path[i]] = 2;
          pre[path[i]] = 0;
        }
        tail = start;
      } else {
        tail = path.size();
      }
      // Nodes before the merge point get increasing preperiods.
      std::uint32_t base = (tail == path.size()) ? pre[s] : 0;
      for (std::size_t i = tail; i-- > 0;) {
        pre[path[i]] = base + std::uint32_t(tail - i);
        state[path[i]] = 2;
        st.max_pre = std::max<std::uint64_t>(st.max_pre, pre[path[i]]);
      }
    }
  };

  auto merge = [&](const RowStats& st) {
    for (auto& [len, cnt] : st.cycles) out.cycle_lengths[len] += cnt;
    out.max_preperiod = std::max(out.max_preperiod, st.max_pre);
    out.periodic_points += st.periodic;
  };

#ifdef _OPENMP
  if (pol == ExecPolicy::parallel) {
#pragma omp parallel
    {
      RowStats st;
#pragma omp for schedule(dynamic)
      for (std::int64_t t = 0; t < std::int64_t(q); ++t) do_row(Elt(t), st);
#pragma omp critical
      merge(st);
    }
    return out;
  }
#endif
  RowStats st;
  for (Elt t = 0; t < q; ++t) do_row(t, st);
  merge(st);
  return out;
}

std::optional<std::vector<PlanePoint>> find_prime_orbit(unsigned n,
                                                        const Field& F) {
  const Elt q = Elt(F.q());
  for (Elt t = 0; t < q; ++t) {
    RowMap f(F, t);
    std::vector<std::uint8_t> done(q, 0);
    std::vector<std::uint32_t> pos(q, 0);
    std::vector<std::uint8_t> on_path(q, 0);
    std::vector<Elt> path;
    for (Elt s0 = 0; s0 < q; ++s0) {
      if (done[s0]) continue;
      path.clear();
      Elt s = s0;
      while (!on_path[s] && !done[s]) {
        on_path[s] = 1;
        pos[s] = std::uint32_t(path.size());
        path.push_back(s);
        s = f(s);
      }
      if (on_path[s] && !done[s]) {
        std::size_t start = pos[s];
        if (path.size() - start == n) {
          std::vector<PlanePoint> cyc;
          for (std::size_t i = start; i < path.size(); ++i)
            cyc.push_back({path[i], t});
          return cyc;
        }
      }
      for (Elt v : path) {
        done[v] = 1;
        on_path[v] = 0;
      }
    }
  }
  return std::nullopt;
}

std::uint64_t bound_q0(unsigned n) {
  if (n <= 2) throw std::invalid_argument("bound_q0: need n > 2");
  std::uint64_t d = n - 1;
  return (std::uint64_t(1) << (2 * n + 3)) * d * d;
}

FieldClassRecord field_class(const Field& F) {
  FieldClassRecord r;
  r.char2 = F.char2();
  r.has_sqrt2 = F.is_square(F.from_int(2));
  r.has_sqrt_minus1 = F.is_square(F.from_int(-1));
  return r;
}

std::vector<std::pair<unsigned, Elt>> scan_conjecture(const Field& F,
                                                      unsigned nmax,
                                                      ExecPolicy pol) {
  auto missing = rho_full_missing_by_n(F, nmax, pol);
  const Elt q = Elt(F.q());
  std::vector<std::pair<unsigned, Elt>> bad;
  for (unsigned n = 1; n <= nmax; ++n) {
    std::vector<std::uint8_t> miss(q, 0);
    for (Elt a : missing[n - 1]) miss[a] = 1;
    for (Elt a = 0; a < q; ++a) {
      Elt b = F.neg(a);
      if (a > b) continue;
      if (miss[a] && miss[b]) bad.emplace_back(n, a);
    }
  }
  return bad;
}

}  // namespace engel
