#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "engel/analysis.hpp"
#include "engel/oracle.hpp"

using namespace engel;

TEST_CASE("conjugacy-reduced image equals the naive double loop") {
  for (std::uint64_t q : {3ull, 5ull, 7ull}) {
    Field F(q);
    Sl2 G(F);
    GroupIndex gi = G.build_index();
    for (unsigned m = 1; m <= 3; ++m) {
      auto img = engel_image(F, m);
      auto naive = engel_image_naive(F, m);
      for (std::size_t i = 0; i < gi.elems.size(); ++i)
        CHECK(bool(naive[i]) == img.contains(gi.elems[i]));
    }
  }
}

TEST_CASE("engel image is conjugation-closed and sign-structured") {
  Field F(7);
  Sl2 G(F);
  auto img = engel_image(F, 2);
  for (const Mat& z : img.cd.gi.elems) {
    bool in = img.contains(z);
    CHECK(img.contains(G.conjugate(z, G.make(1, 1, 0, 1))) == in);
  }
}

TEST_CASE("ore case: e_1 surjective on SL(2,q)") {
  for (std::uint64_t q : {5ull, 7ull, 9ull, 11ull, 13ull}) {
    Field F(q);
    auto img = engel_image(F, 1);
    CHECK(img.full());
    CHECK(img.element_count() == q * q * q - q);
  }
}

TEST_CASE("q=11, m=3: exactly the trace-9 elements are missed") {
  Field F(11);
  Sl2 G(F);
  auto img = engel_image(F, 3);
  std::uint64_t missing = 0;
  for (std::size_t c = 0; c < img.cd.num_classes(); ++c) {
    if (img.class_hit[c]) continue;
    CHECK(G.trace(img.cd.rep(c)) == 9);
    missing += img.cd.class_size[c];
  }
  CHECK(missing == 11 * 11);  // |tau^{-1}(9)| = q^2 here (9 = -2)
  CHECK(img.element_count() == 1320 - 121);
}

TEST_CASE("fiber sizes: weighted tally equals naive recount (q=5, m=2)") {
  Field F(5);
  Sl2 G(F);
  auto fr = fiber_sizes(F, 2);
  auto naive = fiber_sizes_naive(F, 2);
  auto cd = G.conjugacy_classes();
  for (std::size_t i = 0; i < cd.gi.elems.size(); ++i)
    CHECK(naive[i] == fr.per_class[cd.class_of[i]]);
  // |E_m(id)| >= order: all pairs (x, id)
  std::size_t idc = cd.class_of[cd.gi.index(G.identity())];
  CHECK(fr.per_class[idc] >= fr.order);
}

TEST_CASE("fiber deviations shrink with q (m=2)") {
  double prev = 2.0;
  for (std::uint64_t q : {13ull, 17ull, 25ull}) {
    auto fr = fiber_sizes(Field(q), 2);
    CHECK(fr.max_dev < 1.0);
    CHECK(fr.max_dev < prev);
    prev = fr.max_dev;
    CHECK(fr.s_size >= (q * q * q - q) * (q - 3) / q);
  }
}

TEST_CASE("tau fiber counts and envelope") {
  Field F5(5);
  CHECK(tau_fiber_count(F5, 0) == 30);
  CHECK(tau_fiber_count(F5, 2) == 25);
  for (std::uint64_t q : {5ull, 7ull, 9ull, 11ull, 13ull}) {
    Field F(q);
    std::uint64_t total = 0;
    for (Elt a = 0; a < Elt(q); ++a) {
      std::uint64_t c = tau_fiber_count(F, a);
      CHECK(c >= q * q - q);
      CHECK(c <= q * q + q);
      total += c;
    }
    CHECK(total == q * q * q - q);
  }
}

TEST_CASE("p-tilde fiber counts within Lemma 7.2 envelopes") {
  for (std::uint64_t q : {5ull, 7ull}) {
    Field F(q);
    double qd = double(q), q4 = qd * qd * qd * qd;
    for (Elt t = 0; t < Elt(q); ++t) {
      Elt t2 = F.mul(t, t);
      for (Elt s = 0; s < Elt(q); ++s) {
        std::uint64_t c = p_tilde_fiber_count(F, s, t);
        CAPTURE(q);
        CAPTURE(s);
        CAPTURE(t);
        if (t2 == F.from_int(4)) {
          CHECK(double(c) <= 10.0 * q4);
        } else if (s != F.from_int(2) && s != F.sub(t2, 2)) {
          CHECK(std::abs(double(c) - q4) <= 4.0 / qd * q4);
        }
      }
    }
  }
}

TEST_CASE("pi fiber check (Theorem 2.2)") {
  for (std::uint64_t q : {2ull, 3ull, 4ull, 5ull, 7ull, 9ull})
    CHECK(pi_fiber_check(Field(q)));
}

TEST_CASE("psl_image coverage") {
  for (unsigned m = 1; m <= 4; ++m)
    CHECK(psl_image(Field(5), m).size() == 60);
  Field F4(4);
  CHECK(psl_image(F4, 3).size() == 4 * 4 * 4 - 4);
}

TEST_CASE("resource caps refuse instead of truncating") {
  Field F(67);
  CHECK_THROWS_AS(engel_image(F, 2), ResourceCapError);
  CHECK_THROWS_AS(engel_image_naive(Field(19), 2), ResourceCapError);
  CHECK_THROWS_AS(fiber_sizes(F, 2), ResourceCapError);
  CHECK_THROWS_AS(p_tilde_fiber_count(Field(19), 0, 0), ResourceCapError);
  // the caps are configuration, not constants
  OracleCaps tight;
  tight.max_q_class = 5;
  CHECK_THROWS_AS(engel_image(Field(7), 1, tight), ResourceCapError);
  CHECK_NOTHROW(engel_image(Field(5), 1, tight));
}

TEST_CASE("oracle trace sets match compute_Tn away from -2") {
  for (std::uint64_t q : {5ull, 7ull, 9ull, 11ull, 13ull}) {
    Field F(q);
    Elt neg2 = F.from_int(-2);
    for (unsigned m = 1; m <= 4; ++m) {
      auto ts = engel_image(F, m).trace_set(F);
      auto rep = compute_Tn(F, m - 1);
      for (Elt a = 0; a < Elt(q); ++a) {
        if (!F.char2() && a == neg2) continue;
        CAPTURE(q);
        CAPTURE(m);
        CAPTURE(a);
        CHECK(bool(ts[a]) == bool(rep.in_Tn[a]));
      }
    }
  }
}
