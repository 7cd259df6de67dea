#include "engel/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "engel/words.hpp"

namespace engel {
namespace {

void check_cap(const Field& F, std::uint64_t cap, const char* what) {
  if (F.q() > cap)
    throw ResourceCapError(std::string(what) + ": q exceeds configured cap");
}

}  // namespace

std::uint64_t OracleImage::element_count() const {
  std::uint64_t n = 0;
  for (std::size_t c = 0; c < cd.num_classes(); ++c)
    if (class_hit[c]) n += cd.class_size[c];
  return n;
}

bool OracleImage::full() const {
  return std::all_of(class_hit.begin(), class_hit.end(),
                     [](std::uint8_t h) { return h != 0; });
}

std::vector<std::uint8_t> OracleImage::trace_set(const Field& F) const {
  std::vector<std::uint8_t> out(F.q(), 0);
  Sl2 G(F);
  for (std::size_t c = 0; c < cd.num_classes(); ++c)
    if (class_hit[c]) out[G.trace(cd.rep(c))] = 1;
  return out;
}

std::uint64_t OracleImage::psl_class_count(const Sl2& G) const {
  std::unordered_set<std::uint64_t> seen;
  for (std::size_t i = 0; i < cd.gi.elems.size(); ++i)
    if (class_hit[cd.class_of[i]])
      seen.insert(pack(G.psl_project(cd.gi.elems[i]).rep));
  return seen.size();
}

OracleImage engel_image(const Field& F, unsigned m, const OracleCaps& caps,
                        ExecPolicy pol) {
  check_cap(F, caps.max_q_class, "engel_image");
  Sl2 G(F);
  OracleImage out;
  out.q = F.q();
  out.m = m;
  out.cd = G.conjugacy_classes();
  const auto& cd = out.cd;
  const std::size_t nc = cd.num_classes();
  out.class_hit.assign(nc, 0);

  auto do_rep = [&](std::size_t c, std::vector<std::uint8_t>& hit) {
    const Mat x0 = cd.rep(c);
    for (const Mat& y : cd.gi.elems) {
      Mat v = evaluate_engel(m, G, x0, y);
      hit[cd.class_of[cd.gi.index(v)]] = 1;
    }
  };

#ifdef _OPENMP
  if (pol == ExecPolicy::parallel) {
#pragma omp parallel
    {
      std::vector<std::uint8_t> hit(nc, 0);
#pragma omp for schedule(dynamic)
      for (std::int64_t c = 0; c < std::int64_t(nc); ++c) do_rep(c, hit);
#pragma omp critical
      for (std::size_t c = 0; c < nc; ++c) out.class_hit[c] |= hit[c];
    }
    return out;
  }
#endif
  for (std::size_t c = 0; c < nc; ++c) do_rep(c, out.class_hit);
  return out;
}

std::vector<std::uint8_t> engel_image_naive(const Field& F, unsigned m,
                                            const OracleCaps& caps) {
  check_cap(F, caps.max_q_pairs, "engel_image_naive");
  Sl2 G(F);
  GroupIndex gi = G.build_index();
  std::vector<std::uint8_t> hit(gi.elems.size(), 0);
  for (const Mat& x : gi.elems)
    for (const Mat& y : gi.elems)
      hit[gi.index(evaluate_engel(m, G, x, y))] = 1;
  return hit;
}

FiberReport fiber_sizes(const Field& F, unsigned m, const OracleCaps& caps,
                        ExecPolicy pol) {
  check_cap(F, caps.max_q_class, "fiber_sizes");
  Sl2 G(F);
  ClassDecomposition cd = G.conjugacy_classes();
  const std::size_t nc = cd.num_classes();
  std::vector<std::uint64_t> tally(nc, 0);

  auto do_rep = [&](std::size_t c, std::vector<std::uint64_t>& t) {
    const Mat x0 = cd.rep(c);
    const std::uint64_t k = cd.class_size[c];
    for (const Mat& y : cd.gi.elems)
      t[cd.class_of[cd.gi.index(evaluate_engel(m, G, x0, y))]] += k;
  };

#ifdef _OPENMP
  if (pol == ExecPolicy::parallel) {
#pragma omp parallel
    {
      std::vector<std::uint64_t> t(nc, 0);
#pragma omp for schedule(dynamic)
      for (std::int64_t c = 0; c < std::int64_t(nc); ++c) do_rep(c, t);
#pragma omp critical
      for (std::size_t c = 0; c < nc; ++c) tally[c] += t[c];
    }
  } else
#endif
  {
    for (std::size_t c = 0; c < nc; ++c) do_rep(c, tally);
  }

  FiberReport rep;
  rep.q = F.q();
  rep.m = m;
  rep.order = F.q() * F.q() * F.q() - F.q();
  rep.per_class.resize(nc);
  rep.class_trace.resize(nc);
  std::uint64_t total = 0;
  for (std::size_t c = 0; c < nc; ++c) {
    total += tally[c];
    if (tally[c] % cd.class_size[c] != 0)
      throw std::logic_error("fiber_sizes: tally not constant on class");
    rep.per_class[c] = tally[c] / cd.class_size[c];
    rep.class_trace[c] = G.trace(cd.rep(c));
  }
  if (total != rep.order * rep.order)
    throw std::logic_error("fiber_sizes: pair count not conserved");

  Elt two = F.from_int(2), neg2 = F.from_int(-2);
  bool first = true;
  for (std::size_t c = 0; c < nc; ++c) {
    if (rep.class_trace[c] == two || rep.class_trace[c] == neg2) continue;
    rep.s_size += cd.class_size[c];
    double dev =
        std::abs(double(rep.per_class[c]) / double(rep.order) - 1.0);
    rep.max_dev = first ? dev : std::max(rep.max_dev, dev);
    rep.min_dev = first ? dev : std::min(rep.min_dev, dev);
    first = false;
  }
  return rep;
}

std::vector<std::uint64_t> fiber_sizes_naive(const Field& F, unsigned m,
                                             const OracleCaps& caps) {
  check_cap(F, caps.max_q_pairs, "fiber_sizes_naive");
  Sl2 G(F);
  GroupIndex gi = G.build_index();
  std::vector<std::uint64_t> fiber(gi.elems.size(), 0);
  for (const Mat& x : gi.elems)
    for (const Mat& y : gi.elems)
      ++fiber[gi.index(evaluate_engel(m, G, x, y))];
  return fiber;
}

std::vector<std::uint64_t> pi_triple_counts(const Field& F,
                                            const OracleCaps& caps,
                                            ExecPolicy pol) {
  check_cap(F, caps.max_q_pairs, "pi_triple_counts");
  Sl2 G(F);
  GroupIndex gi = G.build_index();
  const std::uint64_t q = F.q();
  std::vector<std::uint64_t> cnt(q * q * q, 0);

  auto do_x = [&](const Mat& x, std::vector<std::uint64_t>& c) {
    Elt s = G.trace(x);
    for (const Mat& y : gi.elems) {
      TraceTriple tr{s, G.trace(G.mul(x, y)), G.trace(y)};
      ++c[(std::uint64_t(tr.s) * q + tr.u) * q + tr.t];
    }
  };

#ifdef _OPENMP
  if (pol == ExecPolicy::parallel) {
#pragma omp parallel
    {
      std::vector<std::uint64_t> c(q * q * q, 0);
#pragma omp for schedule(dynamic, 64)
      for (std::int64_t i = 0; i < std::int64_t(gi.elems.size()); ++i)
        do_x(gi.elems[i], c);
#pragma omp critical
      for (std::size_t i = 0; i < cnt.size(); ++i) cnt[i] += c[i];
    }
    return cnt;
  }
#endif
  for (const Mat& x : gi.elems) do_x(x, cnt);
  return cnt;
}

bool pi_fiber_check(const Field& F, const OracleCaps& caps, ExecPolicy pol) {
  auto cnt = pi_triple_counts(F, caps, pol);
  return std::all_of(cnt.begin(), cnt.end(),
                     [](std::uint64_t c) { return c > 0; });
}

std::uint64_t tau_fiber_count(const Field& F, Elt a) {
  Sl2 G(F);
  std::uint64_t n = 0;
  G.for_each([&](const Mat& m) {
    if (G.trace(m) == a) ++n;
  });
  return n;
}

std::uint64_t p_tilde_fiber_count(const Field& F, Elt s, Elt t,
                                  const OracleCaps& caps, ExecPolicy pol) {
  check_cap(F, caps.max_q_pairs, "p_tilde_fiber_count");
  Sl2 G(F);
  GroupIndex gi = G.build_index();
  std::uint64_t n = 0;

  auto do_x = [&](const Mat& x, std::uint64_t& acc) {
    for (const Mat& y : gi.elems)
      if (G.trace(y) == t && G.trace(G.commutator(x, y)) == s) ++acc;
  };

#ifdef _OPENMP
  if (pol == ExecPolicy::parallel) {
#pragma omp parallel
    {
      std::uint64_t acc = 0;
#pragma omp for schedule(dynamic, 64)
      for (std::int64_t i = 0; i < std::int64_t(gi.elems.size()); ++i)
        do_x(gi.elems[i], acc);
#pragma omp atomic
      n += acc;
    }
    return n;
  }
#endif
  for (const Mat& x : gi.elems) do_x(x, n);
  return n;
}

std::vector<PslClass> psl_image(const Field& F, unsigned m,
                                const OracleCaps& caps, ExecPolicy pol) {
  OracleImage img = engel_image(F, m, caps, pol);
  Sl2 G(F);
  std::unordered_set<std::uint64_t> seen;
  std::vector<PslClass> out;
  for (std::size_t i = 0; i < img.cd.gi.elems.size(); ++i) {
    if (!img.class_hit[img.cd.class_of[i]]) continue;
    PslClass p = G.psl_project(img.cd.gi.elems[i]);
    if (seen.insert(pack(p.rep)).second) out.push_back(p);
  }
  return out;
}

}  // namespace engel
