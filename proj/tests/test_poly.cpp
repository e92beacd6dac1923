#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "specforge/bipoly.hpp"
#include "specforge/factor.hpp"
#include "specforge/parse.hpp"

using namespace specforge;

namespace {

Poly make(std::vector<long long> coeffs, char var = 'Y') {
  std::vector<Rat> c;
  for (auto x : coeffs) c.emplace_back(x);
  return Poly(std::move(c), var);
}

// independent oracle: f(c + X) by expanding (c + X)^i term by term
Poly shift_oracle(const Poly& f, const Rat& c) {
  Poly acc = Poly::zero(f.var());
  Poly base({c, Rat(1)}, f.var());
  for (int i = 0; i <= f.degree(); ++i) {
    Poly pow = Poly::one(f.var());
    for (int k = 0; k < i; ++k) pow = pow * base;
    acc = acc + pow * f[i];
  }
  return acc;
}

// independent oracle: resultant as the Sylvester determinant over Q
Rat sylvester_resultant(const Poly& f, const Poly& g) {
  int m = f.degree(), n = g.degree();
  REQUIRE(m >= 1);
  REQUIRE(n >= 1);
  int size = m + n;
  std::vector<std::vector<Rat>> a(size, std::vector<Rat>(size, Rat(0)));
  for (int row = 0; row < n; ++row)
    for (int k = 0; k <= m; ++k) a[row][row + k] = f[m - k];
  for (int row = 0; row < m; ++row)
    for (int k = 0; k <= n; ++k) a[n + row][row + k] = g[n - k];
  // Gaussian elimination with exact rationals
  Rat det(1);
  for (int col = 0; col < size; ++col) {
    int pivot = -1;
    for (int r = col; r < size; ++r)
      if (a[r][col] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return Rat(0);
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      det = -det;
    }
    det *= a[col][col];
    Rat inv = Rat(1) / a[col][col];
    for (int r = col + 1; r < size; ++r) {
      if (a[r][col] == 0) continue;
      Rat k = a[r][col] * inv;
      for (int cc = col; cc < size; ++cc) a[r][cc] -= k * a[col][cc];
    }
  }
  return det;
}

std::mt19937_64 rng(2024);

Poly random_poly(int maxdeg, long long coeff_bound, bool monic) {
  std::uniform_int_distribution<int> degd(monic ? 1 : 0, maxdeg);
  std::uniform_int_distribution<long long> cd(-coeff_bound, coeff_bound);
  int d = degd(rng);
  std::vector<Rat> c(d + 1);
  for (int i = 0; i < d; ++i) c[i] = Rat(cd(rng));
  c[d] = monic ? Rat(1) : Rat(cd(rng) * 2 + 1);
  return Poly(std::move(c), 'Y');
}

}  // namespace

TEST_CASE("taylor_shift examples", "[poly]") {
  Poly f = make({-5, -1, 0, 1});
  Poly expect = make({-11, 11, -6, 1});
  CHECK(taylor_shift(f, Rat(-2)) == expect);
  CHECK(shift_oracle(f, Rat(-2)) == expect);
  CHECK(taylor_shift(f, Rat(0)) == f);
  Poly g = make({-115, -1, 0, 1});
  Poly gexpect = make({-121, 11, -6, 1});
  CHECK(taylor_shift(g, Rat(-2)) == gexpect);
  CHECK(shift_oracle(g, Rat(-2)) == gexpect);
}

TEST_CASE("taylor_shift round trip", "[poly]") {
  std::uniform_int_distribution<long long> cd(-20, 20);
  for (int i = 0; i < 200; ++i) {
    Poly f = random_poly(5, 30, false);
    Rat c = make_rat(cd(rng), 1 + (i % 3));
    CHECK(taylor_shift(taylor_shift(f, c), -c) == f);
    CHECK(taylor_shift(f, c) == shift_oracle(f, c));
  }
}

TEST_CASE("reciprocal_minpoly examples", "[poly]") {
  // roots t with t^2 = 4/27 give (1/t)^2 = 27/4
  Poly m({make_rat(-4, 27), Rat(0), Rat(1)}, 'T');
  Poly expect({make_rat(-27, 4), Rat(0), Rat(1)}, 'T');
  CHECK(reciprocal_minpoly(m) == expect);
  CHECK(reciprocal_minpoly(Poly::one('T')) == Poly::variable('T'));  // 1/inf = 0
  CHECK(reciprocal_minpoly(Poly::variable('T')) == Poly::one('T'));  // 1/0 = inf
  Poly lin({Rat(-2), Rat(1)}, 'T');
  Poly linr({make_rat(-1, 2), Rat(1)}, 'T');
  CHECK(reciprocal_minpoly(lin) == linr);
  CHECK_THROWS_AS(reciprocal_minpoly(make({1, 1, 2})), Error);  // non-monic
  CHECK_THROWS_AS(reciprocal_minpoly(make({-1, 0, 1})), Error);  // reducible
}

TEST_CASE("reciprocal_minpoly is an involution on monic irreducibles", "[poly]") {
  int done = 0;
  while (done < 60) {
    Poly f = random_poly(3, 15, true);
    if (f.degree() < 1 || f[0] == 0) continue;
    if (factor_over_q(f).size() != 1) continue;
    CHECK(reciprocal_minpoly(reciprocal_minpoly(f)) == f);
    ++done;
  }
}

TEST_CASE("height examples", "[poly]") {
  CHECK(height(Poly({Rat(4), Rat(0), Rat(-27)}, 'T')) == 27);
  CHECK(height(Poly::variable('T')) == 1);
  CHECK(height(Poly::zero()) == 0);
  CHECK_THROWS_AS(height(Poly({make_rat(1, 2)}, 'T')), Error);
}

TEST_CASE("resultant agrees with the Sylvester determinant", "[poly]") {
  for (int i = 0; i < 120; ++i) {
    Poly f = random_poly(4, 10, false);
    Poly g = random_poly(4, 10, false);
    if (f.degree() < 1 || g.degree() < 1) continue;
    CHECK(resultant(f, g) == sylvester_resultant(f, g));
  }
}

TEST_CASE("discriminant matches the depressed-cubic formula", "[poly]") {
  std::uniform_int_distribution<long long> cd(-30, 30);
  for (int i = 0; i < 100; ++i) {
    Rat p(cd(rng)), q(cd(rng));
    Poly f({q, p, Rat(0), Rat(1)}, 'Y');
    CHECK(discriminant(f) == Rat(-4) * p * p * p - Rat(27) * q * q);
  }
  CHECK(discriminant(make({-5, -1, 0, 1})) == -671);
  CHECK(discriminant(make({-115, -1, 0, 1})) == -357071);
}

TEST_CASE("disc_y on the fixture covers", "[poly]") {
  BiPoly P = parse_poly("Y^3 - Y - T");
  CHECK(disc_y(P) == Poly({Rat(4), Rat(0), Rat(-27)}, 'T'));
  CHECK(disc_y(parse_poly("Y^2 - T")) == Poly({Rat(0), Rat(4)}, 'T'));
  CHECK(disc_y(parse_poly("Y - T")) == Poly::one('T'));
  // trinomial member: disc(Y^3 - T Y + T^2) = 4T^3 - 27T^4
  CHECK(disc_y(parse_poly("Y^3 - T*Y + T^2")) ==
        Poly({Rat(0), Rat(0), Rat(0), Rat(4), Rat(-27)}, 'T'));
}

TEST_CASE("disc_y specializes to the univariate discriminant", "[poly]") {
  std::uniform_int_distribution<long long> cd(-6, 6);
  std::uniform_int_distribution<int> degt(0, 2), degy(1, 4);
  std::uniform_int_distribution<long long> t0d(-12, 12);
  for (int i = 0; i < 100; ++i) {
    int n = degy(rng);
    BiPoly P;
    P.add_term(0, n, 1);
    for (int j = 0; j < n; ++j)
      for (int t = 0; t <= degt(rng); ++t) P.add_term(t, j, Int(cd(rng)));
    if (disc_y(P).is_zero()) continue;
    Rat t0(t0d(rng));
    Poly fiber = P.eval_t(t0);
    Rat expected = fiber.degree() >= 1 ? discriminant(fiber) : Rat(1);
    CHECK(disc_y(P).eval(t0) == expected);
  }
}

TEST_CASE("polynomial division and gcd invariants", "[poly]") {
  for (int i = 0; i < 100; ++i) {
    Poly a = random_poly(5, 12, false);
    Poly b = random_poly(3, 12, false);
    if (b.is_zero()) continue;
    auto [q, r] = divmod(a, b);
    CHECK(q * b + r == a);
    CHECK((r.is_zero() || r.degree() < b.degree()));
    Poly g = poly_gcd(a, b);
    if (!g.is_zero()) {
      CHECK(divmod(a, g).second.is_zero());
      CHECK(divmod(b, g).second.is_zero());
    }
  }
}

TEST_CASE("squarefree part strips repeated factors", "[poly]") {
  Poly f = make({1, 1});          // Y + 1
  Poly g = make({-2, 1});         // Y - 2
  Poly h = f * f * g;
  CHECK(squarefree_part(h) == (f * g).monic());
}
