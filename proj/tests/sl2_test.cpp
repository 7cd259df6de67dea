#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>
#include <unordered_set>

#include "engel/sl2.hpp"

using namespace engel;

namespace {

Mat random_element(const Sl2& G, std::mt19937& rng) {
  const Field& F = G.field();
  std::uniform_int_distribution<Elt> d(0, Elt(F.q() - 1));
  for (;;) {
    Elt a = d(rng), b = d(rng), c = d(rng);
    if (a != 0) {
      Elt dd = F.mul(F.add(1, F.mul(b, c)), F.inv(a));
      return {a, b, c, dd};
    }
    if (b != 0) return {0, b, F.neg(F.inv(b)), d(rng)};
  }
}

}  // namespace

TEST_CASE("enumerate yields q^3 - q distinct unimodular elements") {
  for (std::uint64_t q : {2ull, 3ull, 4ull, 5ull, 7ull, 9ull}) {
    Field F(q);
    Sl2 G(F);
    auto all = G.enumerate();
    CHECK(all.size() == q * q * q - q);
    std::unordered_set<std::uint64_t> seen;
    for (const Mat& m : all) {
      CHECK(G.unimodular(m));
      seen.insert(pack(m));
    }
    CHECK(seen.size() == all.size());
  }
}

TEST_CASE("group operations preserve det = 1") {
  Field F(9);
  Sl2 G(F);
  std::mt19937 rng(42);
  for (int i = 0; i < 200; ++i) {
    Mat x = random_element(G, rng), y = random_element(G, rng);
    CHECK(G.unimodular(G.mul(x, y)));
    CHECK(G.unimodular(G.inv(x)));
    CHECK(G.unimodular(G.commutator(x, y)));
    CHECK(G.mul(x, G.inv(x)) == G.identity());
    CHECK(G.trace(G.conjugate(x, y)) == G.trace(x));
  }
}

TEST_CASE("pi is invariant under simultaneous conjugation") {
  Field F(7);
  Sl2 G(F);
  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    Mat x = random_element(G, rng), y = random_element(G, rng),
        g = random_element(G, rng);
    CHECK(G.pi(G.conjugate(x, g), G.conjugate(y, g)) == G.pi(x, y));
    // u really is tr(xy)
    CHECK(G.pi(x, y).u == G.trace(G.mul(x, y)));
  }
}

TEST_CASE("pi basics") {
  Field F(7);
  Sl2 G(F);
  CHECK(G.pi(G.identity(), G.identity()) == TraceTriple{2, 2, 2});
  Mat x = G.make(3, 1, 2, 1);
  CHECK(G.pi(x, G.identity()) == TraceTriple{4, 4, 2});
}

TEST_CASE("elements_with_trace partitions the group within the tau envelope") {
  for (std::uint64_t q : {5ull, 7ull, 9ull}) {
    Field F(q);
    Sl2 G(F);
    std::uint64_t total = 0;
    for (Elt a = 0; a < q; ++a) {
      auto v = G.elements_with_trace(a);
      for (const Mat& m : v) CHECK(G.trace(m) == a);
      std::int64_t dev = std::int64_t(v.size()) - std::int64_t(q * q);
      CHECK(std::abs(dev) <= std::int64_t(q));
      total += v.size();
    }
    CHECK(total == q * q * q - q);
  }
}

TEST_CASE("commutator identities") {
  Field F(5);
  Sl2 G(F);
  std::mt19937 rng(5);
  Mat x = random_element(G, rng);
  CHECK(G.commutator(x, x) == G.identity());
  CHECK(G.commutator(G.identity(), x) == G.identity());
  // Remark 4.9 instance: [((0,1),(-1,0)), ((2,0),(0,-2))] = -id over F_5
  Mat a = G.make(0, 1, F.neg(1), 0);
  Mat b = G.make(2, 0, 0, F.neg(2));
  CHECK(G.commutator(a, b) == G.minus_identity());
}

TEST_CASE("conjugacy classes partition the group with verified orbits") {
  for (std::uint64_t q : {3ull, 4ull, 5ull, 7ull}) {
    Field F(q);
    Sl2 G(F);
    auto cd = G.conjugacy_classes();
    std::uint64_t order = q * q * q - q;
    std::uint64_t total = 0;
    for (std::size_t c = 0; c < cd.num_classes(); ++c) total += cd.class_size[c];
    CHECK(total == order);

    // identity and -id are singletons
    CHECK(cd.class_size[cd.class_of[cd.gi.index(G.identity())]] == 1);
    if (!F.char2())
      CHECK(cd.class_size[cd.class_of[cd.gi.index(G.minus_identity())]] == 1);

    // class_of is conjugation-invariant, and each class is one full orbit
    for (std::size_t c = 0; c < cd.num_classes(); ++c) {
      std::unordered_set<std::uint64_t> orbit;
      for (const Mat& g : cd.gi.elems)
        orbit.insert(pack(G.conjugate(cd.rep(c), g)));
      CHECK(orbit.size() == cd.class_size[c]);
      for (const Mat& g : cd.gi.elems)
        CHECK(cd.class_of[cd.gi.index(G.conjugate(cd.rep(c), g))] ==
              cd.class_of[cd.rep_index[c]]);
      if (q > 4) break;  // full orbit verification only for tiny q
    }
  }
}

TEST_CASE("psl projection folds +/- pairs") {
  Field F(5);
  Sl2 G(F);
  std::set<std::uint64_t> classes;
  for (const Mat& m : G.enumerate()) {
    CHECK(G.psl_project(m) == G.psl_project(G.neg(m)));
    classes.insert(pack(G.psl_project(m).rep));
  }
  CHECK(classes.size() == (5 * 5 * 5 - 5) / 2);

  Field F4(4);
  Sl2 G4(F4);
  for (const Mat& m : G4.enumerate()) CHECK(G4.psl_project(m).rep == m);
}

TEST_CASE("theorem 2.2: pi hits every trace triple at small q") {
  for (std::uint64_t q : {2ull, 3ull, 4ull, 5ull}) {
    Field F(q);
    Sl2 G(F);
    auto all = G.enumerate();
    std::vector<std::uint8_t> hit(q * q * q, 0);
    for (const Mat& x : all)
      for (const Mat& y : all) {
        TraceTriple t = G.pi(x, y);
        hit[(std::uint64_t(t.s) * q + t.u) * q + t.t] = 1;
      }
    for (auto h : hit) CHECK(h == 1);
  }
}
