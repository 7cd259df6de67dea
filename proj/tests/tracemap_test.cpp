#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "engel/tracemap.hpp"

using namespace engel;

namespace {

Mat random_element(const Sl2& G, std::mt19937& rng) {
  const Field& F = G.field();
  std::uniform_int_distribution<Elt> d(0, Elt(F.q() - 1));
  for (;;) {
    Elt a = d(rng), b = d(rng), c = d(rng);
    if (a != 0) return {a, b, c, F.mul(F.add(1, F.mul(b, c)), F.inv(a))};
    if (b != 0) return {0, b, F.neg(F.inv(b)), d(rng)};
  }
}

Word random_word(std::mt19937& rng) {
  std::uniform_int_distribution<int> len(1, 8), exp(-3, 3);
  Word w;
  int n = len(rng);
  for (int i = 0; i < n; ++i) {
    int e = exp(rng);
    if (e == 0) e = 1;
    w = w * Word::generator(i % 2 ? 'y' : 'x', e);
  }
  return w;
}

std::vector<std::uint64_t> prime_powers(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = lo; q <= hi; ++q)
    if (is_prime_power(q)) out.push_back(q);
  return out;
}

}  // namespace

TEST_CASE("trace polynomial golden forms") {
  CHECK(trace_polynomial(Word::parse("x")).str() == "s");
  CHECK(trace_polynomial(Word::parse("y")).str() == "t");
  CHECK(trace_polynomial(Word::parse("x y")).str() == "u");
  CHECK(trace_polynomial(Word::parse("y x")).str() == "u");
  CHECK(trace_polynomial(Word()).str() == "2");
  CHECK(trace_polynomial(Word::parse("x^-1")).str() == "s");
  CHECK(trace_polynomial(Word::parse("x^2")).str() == "s^2 - 2");
  CHECK(trace_polynomial(Word::parse("[x,y]")).str() ==
        "-s*u*t + s^2 + u^2 + t^2 - 2");
}

TEST_CASE("trace polynomial agrees with matrix evaluation") {
  for (std::uint64_t q : {5ull, 7ull, 9ull, 11ull}) {
    Field F(q);
    Sl2 G(F);
    std::mt19937 rng{unsigned(q) * 17};
    for (int trial = 0; trial < 250; ++trial) {
      Word w = random_word(rng);
      TracePoly P = trace_polynomial(w);
      Mat x = random_element(G, rng), y = random_element(G, rng);
      TraceTriple tt = G.pi(x, y);
      CHECK(P.eval(F, tt.s, tt.u, tt.t) == G.trace(evaluate(w, G, x, y)));
    }
    // Engel words too
    std::mt19937 rng2{unsigned(q)};
    for (unsigned n = 1; n <= 4; ++n) {
      TracePoly P = trace_polynomial(Word::engel(n));
      for (int trial = 0; trial < 30; ++trial) {
        Mat x = random_element(G, rng2), y = random_element(G, rng2);
        TraceTriple tt = G.pi(x, y);
        CHECK(P.eval(F, tt.s, tt.u, tt.t) ==
              G.trace(evaluate_engel(n, G, x, y)));
      }
    }
  }
}

TEST_CASE("p_comm and psi") {
  Field F(11);
  Sl2 G(F);
  CHECK(p_comm(F, 2, 2, 2) == 2);
  CHECK(p_comm(F, 0, 0, 0) == F.from_int(-2));
  std::mt19937 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    Mat x = random_element(G, rng), y = random_element(G, rng);
    TraceTriple tt = G.pi(x, y);
    CHECK(p_comm(F, tt.s, tt.u, tt.t) == G.trace(G.commutator(x, y)));
    // diagram (d4): psi(pi(x,y)) = pi([x,y], y)
    CHECK(psi(F, tt.s, tt.u, tt.t) == G.pi(G.commutator(x, y), y));
    CHECK(psi(F, tt.s, tt.u, tt.t).u == psi(F, tt.s, tt.u, tt.t).t);
  }
}

TEST_CASE("property 4.4 items 1-4 and the fixed point locus") {
  for (std::uint64_t q : prime_powers(2, 49)) {
    Field F(q);
    CAPTURE(q);
    for (Elt t = 0; t < q; ++t) {
      Elt t2 = F.mul(t, t);
      CHECK(mu(F, {1, t}) == PlanePoint{F.sub(t2, 1), t});         // (1)
      CHECK(mu(F, {F.sub(t2, 1), t}) == PlanePoint{F.sub(t2, 1), t});  // (2)
      Elt two = F.from_int(2);
      CHECK(mu(F, {two, t}).s == two);            // (3)
      CHECK(mu(F, {F.sub(t2, two), t}).s == two); // (4)
      for (Elt s = 0; s < q; ++s) {
        bool fixed = mu(F, {s, t}) == PlanePoint{s, t};
        bool on_locus = F.mul(F.sub(s, F.from_int(2)),
                              F.add(F.sub(s, t2), 1)) == 0;
        CHECK(fixed == on_locus);
      }
    }
  }
}

TEST_CASE("property 4.4 item 5: t = 0 orbits through F_{q^2}") {
  for (std::uint64_t q : prime_powers(3, 49)) {
    Field F(q);
    auto ext = quadratic_extension(F);
    const Field& E = ext.ext;
    CAPTURE(q);
    for (Elt b = 0; b < q; ++b) {
      // root of z^2 - bz + 1 in F_{q^2}
      Elt xr = 0;
      bool found = false;
      Elt be = ext.embed(b);
      for (Elt z = 1; z < Elt(E.q()) && !found; ++z)
        if (E.add(E.mul(z, z), E.sub(1, E.mul(be, z))) == 0) {
          xr = z;
          found = true;
        }
      REQUIRE(found);
      for (unsigned n = 0; n <= 6; ++n) {
        Elt xn = E.pow2n(xr, n);
        CHECK(ext.embed(rho_n(F, {b, 0}, n)) == E.add(xn, E.inv(xn)));
      }
    }
  }
}

TEST_CASE("property 4.4 items 6-7: closed forms cross-check the iterator") {
  for (std::uint64_t q : prime_powers(2, 49)) {
    Field F(q);
    for (Elt t = 0; t < q; ++t) {
      Elt t2 = F.mul(t, t);
      for (Elt s = 0; s < q; ++s)
        for (unsigned n = 0; n <= 5; ++n) {
          if (t2 == F.from_int(4))
            CHECK(rho_n(F, {s, t}, n) == rho_closed_t2_is_4(F, s, n));
          if (t2 == F.from_int(2))
            CHECK(rho_n(F, {s, t}, n) == rho_closed_t2_is_2(F, s, n));
        }
    }
  }
}

TEST_CASE("conjugated system m(z,k)") {
  Field F(13);
  for (Elt s = 0; s < 13; ++s)
    for (Elt t = 0; t < 13; ++t) {
      Elt z = F.sub(s, 2), k = F.sub(F.mul(t, t), 4);
      auto [z2, k2] = m_conj(F, z, k);
      CHECK(k2 == k);
      CHECK(F.add(z2, 2) == mu(F, {s, t}).s);
    }
  CHECK(m_conj(F, 0, 5) == std::pair<Elt, Elt>{0, 5});
  CHECK(m_conj(F, 6, 5) == std::pair<Elt, Elt>{6, 5});  // z = k+1
}

TEST_CASE("char-2 specialization") {
  for (std::uint64_t q : {2ull, 4ull, 8ull, 16ull}) {
    Field F(q);
    std::vector<std::uint8_t> seen(q, 0);
    for (Elt s = 0; s < q; ++s) {
      seen[mu_char2(F, {s, 0}).s] = 1;
      for (Elt t = 0; t < q; ++t)
        CHECK(mu_char2(F, {s, t}) == mu(F, {s, t}));
    }
    for (auto h : seen) CHECK(h == 1);  // s -> s^2 bijective on t = 0
    CHECK(mu_char2(F, {0, 3 % Elt(q)}).s == 0);
  }
  Field F7(7);
  CHECK_THROWS(mu_char2(F7, {1, 1}));
}

TEST_CASE("fundamental identity (Eq. t4)") {
  for (std::uint64_t q : {5ull, 7ull, 9ull, 11ull, 13ull, 16ull}) {
    Field F(q);
    Sl2 G(F);
    std::mt19937 rng{unsigned(q) * 31};
    for (int trial = 0; trial < 40; ++trial) {
      Mat x = random_element(G, rng), y = random_element(G, rng);
      TraceTriple tt = G.pi(x, y);
      Elt s1 = p_comm(F, tt.s, tt.u, tt.t);
      for (unsigned n = 0; n <= 6; ++n)
        CHECK(G.trace(evaluate_engel(n + 1, G, x, y)) ==
              rho_n(F, {s1, tt.t}, n));
    }
  }
}

TEST_CASE("engel trace recursion (Eq. t3)") {
  Field F(9);
  for (Elt s = 0; s < 9; ++s)
    for (Elt t = 0; t < 9; ++t)
      for (unsigned n = 0; n <= 5; ++n)
        CHECK(rho_n(F, {s, t}, n + 1) == mu(F, {rho_n(F, {s, t}, n), t}).s);
}
