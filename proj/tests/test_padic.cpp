#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "specforge/padic.hpp"

using namespace specforge;

namespace {

Poly make(std::vector<long long> coeffs, char var = 'Y') {
  std::vector<Rat> c;
  for (auto x : coeffs) c.emplace_back(x);
  return Poly(std::move(c), var);
}

std::mt19937_64 rng(99);

Poly random_monic(int deg, long long bound) {
  std::uniform_int_distribution<long long> cd(-bound, bound);
  std::vector<Rat> c(deg + 1);
  for (int i = 0; i < deg; ++i) c[i] = Rat(cd(rng));
  c[deg] = 1;
  return Poly(std::move(c), 'Y');
}

SplittingType st_of(std::vector<std::pair<int, int>> pairs) {
  SplittingType st;
  for (auto [e, f] : pairs) st.add(e, f);
  st.canonicalize();
  return st;
}

}  // namespace

TEST_CASE("newton_polygon examples", "[padic]") {
  // hull of (0,1),(1,1),(2,0),(3,0)
  NewtonPolygon np = newton_polygon(make({-11, 11, -6, 1}, 'Z'), 11);
  REQUIRE(np.segments.size() == 2);
  CHECK(np.segments[0] == NewtonSegment{make_rat(-1, 2), 2});
  CHECK(np.segments[1] == NewtonSegment{Rat(0), 1});

  NewtonPolygon eis = newton_polygon(make({-11, 0, 0, 1}), 11);
  REQUIRE(eis.segments.size() == 1);
  CHECK(eis.segments[0] == NewtonSegment{make_rat(-1, 3), 3});

  NewtonPolygon flat = newton_polygon(make({-2, -1, 0, 1}), 7);
  REQUIRE(flat.segments.size() == 1);
  CHECK(flat.segments[0] == NewtonSegment{Rat(0), 3});

  CHECK_THROWS_AS(newton_polygon(Poly::zero(), 7), Error);
}

TEST_CASE("newton_polygon lengths account for every nonzero root", "[padic]") {
  std::uniform_int_distribution<int> degd(1, 6);
  for (Int p : {Int(3), Int(5), Int(11)}) {
    for (int i = 0; i < 80; ++i) {
      Poly f = random_monic(degd(rng), 200);
      if (f.is_zero()) continue;
      int ord = 0;
      while (f[ord] == 0) ++ord;
      int sum = 0;
      for (const auto& s : newton_polygon(f, p).segments) sum += s.length;
      CHECK(sum == f.degree() - ord);
    }
  }
}

TEST_CASE("local_splitting examples", "[padic]") {
  CHECK(local_splitting(make({-5, -1, 0, 1}), 11) == st_of({{1, 1}, {2, 1}}));
  CHECK(local_splitting(make({-115, -1, 0, 1}), 11) == st_of({{1, 1}, {1, 2}}));
  CHECK(local_splitting(make({-121, -121, 0, 1}, 'W'), 11) == st_of({{3, 1}}));
}

TEST_CASE("one segment can carry several places", "[padic]") {
  // (Y^2 - 33)(Y^2 - 55): all four roots have valuation 1/2 at 11, one
  // slope -1/2 segment of length 4 whose residual (x-3)(x-5) splits.
  Poly f({Rat(1815), Rat(0), Rat(-88), Rat(0), Rat(1)}, 'Y');
  SplittingType st = local_splitting(f, 11);
  CHECK(st == st_of({{2, 1}, {2, 1}}));
  CHECK(tame_disc_check(f, 11, st));
}

TEST_CASE("local_splitting rejections", "[padic]") {
  CHECK_THROWS_AS(local_splitting(make({-1, 0, 1}), 2), Error);  // p = 2
  // Eisenstein at 3 with e = 3: wild
  CHECK_THROWS_MATCHES(local_splitting(make({-3, 0, 0, 1}), 3), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.kind() == ErrorKind::WildCase;
                       }));
  // both roots have valuation 1 and collide at second order: the residual
  // x^2 + x + 2 mod 7 is inseparable (disc = -7)
  CHECK_THROWS_MATCHES(local_splitting(make({98, 7, 1}), 7), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.kind() == ErrorKind::IrregularCase;
                       }));
  // repeated non-linear factor mod 7: (Y^2+1)^2 + 7
  Poly f = make({8, 0, 2, 0, 1});
  REQUIRE(discriminant(f) != 0);
  CHECK_THROWS_MATCHES(local_splitting(f, 7), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.kind() == ErrorKind::IrregularCase;
                       }));
  CHECK_THROWS_AS(local_splitting(make({1, 2, 1}), 5), Error);  // disc = 0
}

TEST_CASE("frobenius_cycle_type examples", "[padic]") {
  CHECK(frobenius_cycle_type(make({-2, -1, 0, 1}), 7) == CycleType({3}));
  CHECK(frobenius_cycle_type(make({0, -1, 0, 1}), 7) == CycleType({1, 1, 1}));
  CHECK(frobenius_cycle_type(make({-3, -1, 0, 1}), 13) == CycleType({1, 2}));
  CHECK_THROWS_MATCHES(frobenius_cycle_type(make({-5, -1, 0, 1}), 11), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) {
                         return e.kind() == ErrorKind::RamifiedPrime;
                       }));
}

TEST_CASE("tame_disc_check examples", "[padic]") {
  CHECK(tame_disc_check(make({-5, -1, 0, 1}), 11, st_of({{1, 1}, {2, 1}})));
  CHECK(tame_disc_check(make({-115, -1, 0, 1}), 11, st_of({{1, 1}, {1, 2}})));
  CHECK(tame_disc_check(make({-2, -1, 0, 1}), 7, st_of({{1, 3}})));
}

TEST_CASE("splitting invariants on random samples", "[padic]") {
  std::vector<Int> primes;
  for (Int p = 5; p <= 97; p = next_prime(p)) primes.push_back(p);
  std::uniform_int_distribution<size_t> pick(0, primes.size() - 1);
  std::uniform_int_distribution<int> degd(2, 4);
  std::uniform_int_distribution<long long> shift(-15, 15);
  int decided = 0, tried = 0;
  while (tried < 500) {
    Poly f = random_monic(degd(rng), 120);
    if (discriminant(f) == 0) continue;
    Int p = primes[pick(rng)];
    ++tried;
    try {
      SplittingType st = local_splitting(f, p);
      ++decided;
      CHECK(st.total() == f.degree());
      CHECK(tame_disc_check(f, p, st));
      if (valuation(discriminant(f), p).v == 0) {
        CHECK(st.unramified());
        SplittingType from_frobenius;
        CycleType frob_type = frobenius_cycle_type(f, p);
        for (int d : frob_type.parts()) from_frobenius.add(1, d);
        from_frobenius.canonicalize();
        CHECK(st == from_frobenius);
      }
      // translation invariance
      Poly g = taylor_shift(f, Rat(shift(rng)));
      CHECK(local_splitting(g, p) == st);
    } catch (const Error& e) {
      bool excluded = e.kind() == ErrorKind::IrregularCase ||
                      e.kind() == ErrorKind::WildCase;
      CHECK(excluded);
    }
  }
  CHECK(decided >= 475);  // random tame data is almost always regular
}

TEST_CASE("splitting type expansion", "[padic]") {
  SplittingType st = st_of({{2, 1}, {1, 2}, {3, 1}});
  CHECK(st.expand() == CycleType({2, 1, 1, 3}));
  CHECK(st.ramification_set() == std::vector<int>{1, 2, 3});
  CHECK(st.total() == 7);
  CHECK(!st.unramified());
}
