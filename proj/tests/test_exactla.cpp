#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "okit/eigen.hpp"
#include "okit/idempotent.hpp"
#include "okit/matrix.hpp"
#include "okit/poly.hpp"

using namespace okit;

namespace {

RatMatrix dense(std::vector<std::vector<long>> rows) {
  std::vector<RatVec> r;
  for (auto& row : rows) {
    RatVec v;
    for (long x : row) v.push_back(Rat(x));
    r.push_back(std::move(v));
  }
  return RatMatrix::from_dense(r);
}

RatMatrix diag(std::vector<long> d) {
  RatMatrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (size_t i = 0; i < d.size(); ++i) m.set(static_cast<int>(i), static_cast<int>(i), Rat(d[i]));
  return m;
}

}  // namespace

TEST_CASE("sparse matrix arithmetic") {
  RatMatrix a = dense({{1, 2}, {3, 4}});
  RatMatrix b = dense({{0, 1}, {1, 0}});
  CHECK(a * b == dense({{2, 1}, {4, 3}}));
  CHECK(a + b == dense({{1, 3}, {4, 4}}));
  CHECK(a - a == RatMatrix(2, 2));
  CHECK(a.transpose() == dense({{1, 3}, {2, 4}}));
  CHECK(a * Rat(2) == dense({{2, 4}, {6, 8}}));
  RatVec x = {Rat(1), Rat(-1)};
  RatVec y = a.apply(x);
  CHECK(y[0] == Rat(-1));
  CHECK(y[1] == Rat(-1));
  CHECK(a.hcat(b).cols() == 4);
  CHECK(a.nnz() == 4);
}

TEST_CASE("kernel and rank") {
  // zero 3x3 has full kernel
  CHECK(kernel(RatMatrix(3, 3)).cols() == 3);
  // identity has trivial kernel
  CHECK(kernel(RatMatrix::identity(4)).cols() == 0);
  // rank-1 2x2: kernel spanned by (1, -1)
  RatMatrix m = dense({{1, 1}, {2, 2}});
  RatMatrix k = kernel(m);
  REQUIRE(k.cols() == 1);
  CHECK((m * k).is_zero_matrix());
  Rat ratio = k.get(0, 0) / k.get(1, 0);
  CHECK(ratio == Rat(-1));
  CHECK(rank(m) == 1);
  CHECK(rank(RatMatrix::identity(5)) == 5);
}

TEST_CASE("rank-nullity over random-ish integer matrices") {
  unsigned long seed = 12345;
  for (int t = 0; t < 20; ++t) {
    int r = 2 + static_cast<int>(seed % 4);
    seed = seed * 6364136223846793005ul + 1442695040888963407ul;
    int c = 2 + static_cast<int>((seed >> 20) % 4);
    RatMatrix m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) {
        seed = seed * 6364136223846793005ul + 1442695040888963407ul;
        m.set(i, j, Rat(static_cast<long>((seed >> 33) % 5) - 2));
      }
    RatMatrix k = kernel(m);
    CHECK(rank(m) + k.cols() == c);
    CHECK((m * k).is_zero_matrix());
    CHECK(rank(m) == rank(m.transpose()));
  }
}

TEST_CASE("solve") {
  RatMatrix m = dense({{2}});
  auto s = solve(m, {Rat(3)});
  REQUIRE(s.has_value());
  CHECK((*s)[0] == Rat(3) / Rat(2));

  // inconsistent: x = 1 and x = 2
  RatMatrix m2 = dense({{1}, {1}});
  CHECK(!solve(m2, {Rat(1), Rat(2)}).has_value());

  // underdetermined systems still produce some solution
  RatMatrix m3 = dense({{1, 1, 0}, {0, 1, 1}});
  RatVec b = {Rat(3), Rat(5)};
  auto s3 = solve(m3, b);
  REQUIRE(s3.has_value());
  CHECK(m3.apply(*s3) == b);

  auto sm = solve_matrix(dense({{2, 0}, {0, 4}}), RatMatrix::identity(2));
  REQUIRE(sm.has_value());
  CHECK(sm->get(0, 0) == Rat(1) / Rat(2));
  CHECK(sm->get(1, 1) == Rat(1) / Rat(4));
}

TEST_CASE("incremental basis tracks dependencies") {
  IncrementalBasis ib(3);
  CHECK(!ib.add({Rat(1), Rat(0), Rat(0)}).has_value());
  CHECK(!ib.add({Rat(1), Rat(1), Rat(0)}).has_value());
  auto dep = ib.add({Rat(3), Rat(2), Rat(0)});
  REQUIRE(dep.has_value());
  // (3,2,0) = 1*(1,0,0) + 2*(1,1,0)
  CHECK((*dep)[0] == Rat(1));
  CHECK((*dep)[1] == Rat(2));
  CHECK(ib.dim() == 2);
  CHECK(ib.contains({Rat(5), Rat(-7), Rat(0)}));
  CHECK(!ib.contains({Rat(0), Rat(0), Rat(1)}));
}

TEST_CASE("polynomial arithmetic and minimal polynomials") {
  Poly p = {Rat(-1), Rat(0), Rat(1)};  // x^2 - 1
  Poly q = {Rat(-1), Rat(1)};          // x - 1
  auto [quo, rem] = poly_divmod(p, q);
  CHECK(degree(rem) < 0);
  CHECK(quo == Poly{Rat(1), Rat(1)});
  CHECK(poly_gcd(p, q) == Poly{Rat(-1), Rat(1)});
  CHECK(poly_eval(p, Rat(3)) == Rat(8));

  // min poly of diag(1,1,2) is (x-1)(x-2)
  Poly m = min_poly(diag({1, 1, 2}));
  CHECK(degree(m) == 2);
  CHECK(is_zero(poly_eval(m, Rat(1))));
  CHECK(is_zero(poly_eval(m, Rat(2))));

  // nilpotent Jordan block: min poly x^3
  RatMatrix n = dense({{0, 1, 0}, {0, 0, 1}, {0, 0, 0}});
  CHECK(min_poly(n) == Poly{Rat(0), Rat(0), Rat(0), Rat(1)});
}

TEST_CASE("rational root extraction") {
  // (x - 1/2)(x + 3)^2
  Poly p = poly_mul({Rat(-1) / Rat(2), Rat(1)},
                    poly_mul({Rat(3), Rat(1)}, {Rat(3), Rat(1)}));
  auto fac = rational_roots(p);
  REQUIRE(fac.roots.size() == 2);
  CHECK(degree(fac.leftover) == 0);
  int found = 0;
  for (const auto& [r, mult] : fac.roots) {
    if (r == Rat(1) / Rat(2)) {
      CHECK(mult == 1);
      ++found;
    }
    if (r == Rat(-3)) {
      CHECK(mult == 2);
      ++found;
    }
  }
  CHECK(found == 2);

  // x^2 - 2 has no rational roots
  auto fac2 = rational_roots({Rat(-2), Rat(0), Rat(1)});
  CHECK(fac2.roots.empty());
  CHECK(degree(fac2.leftover) == 2);

  // mixed: (x^2 - 2)(x - 5)
  auto fac3 = rational_roots(poly_mul({Rat(-2), Rat(0), Rat(1)}, {Rat(-5), Rat(1)}));
  REQUIRE(fac3.roots.size() == 1);
  CHECK(fac3.roots[0].first == Rat(5));
  CHECK(degree(fac3.leftover) == 2);

  CHECK(simplest_in_interval(Rat(1) / Rat(3), Rat(1) / Rat(2)) == Rat(1) / Rat(2));
  CHECK(simplest_in_interval(Rat(-1), Rat(1)) == Rat(0));
  CHECK(simplest_in_interval(Rat(7) / Rat(5), Rat(3) / Rat(2)) == Rat(3) / Rat(2));
}

TEST_CASE("generalized eigenspaces of a single matrix") {
  // diag(2,2,5): eigenvalue 2 with dim 2, eigenvalue 5 with dim 1
  auto es = generalized_eigenspaces({diag({2, 2, 5})});
  REQUIRE(es.size() == 2);
  int total = 0;
  for (const auto& e : es) {
    total += e.space.dim();
    if (e.eigenvalues[0] == Rat(2)) CHECK(e.space.dim() == 2);
    if (e.eigenvalues[0] == Rat(5)) CHECK(e.space.dim() == 1);
  }
  CHECK(total == 3);

  // Jordan block at 3: one generalized eigenspace of full dimension
  RatMatrix j = dense({{3, 1}, {0, 3}});
  auto es2 = generalized_eigenspaces({j});
  REQUIRE(es2.size() == 1);
  CHECK(es2[0].eigenvalues[0] == Rat(3));
  CHECK(es2[0].space.dim() == 2);
}

TEST_CASE("simultaneous eigenspaces of a commuting family") {
  RatMatrix a = diag({1, 1, 2});
  RatMatrix b = diag({4, 7, 7});
  auto es = generalized_eigenspaces({a, b});
  REQUIRE(es.size() == 3);
  for (const auto& e : es) {
    CHECK(e.space.dim() == 1);
    // membership: a and b act with the recorded eigenvalues
    RatVec v = e.space.basis.column_vec(0);
    RatVec av = a.apply(v);
    for (int i = 0; i < 3; ++i) CHECK(av[i] == e.eigenvalues[0] * v[i]);
  }
}

TEST_CASE("irrational eigenvalue reported with its polynomial") {
  RatMatrix m = dense({{0, 2}, {1, 0}});  // eigenvalues +-sqrt(2)
  CHECK_THROWS_AS(generalized_eigenspaces({m}), IrrationalEigenvalueError);
  try {
    generalized_eigenspaces({m});
  } catch (const IrrationalEigenvalueError& e) {
    CHECK(degree(e.offending) == 2);
  }
}

TEST_CASE("idempotent search") {
  // span{id} in M_2: local, no nontrivial idempotent
  CHECK(!idempotent_search({RatMatrix::identity(2)}).has_value());

  // span{id, diag(1,0)}: diag(1,0) splits it
  auto e = idempotent_search({RatMatrix::identity(2), diag({1, 0})});
  REQUIRE(e.has_value());
  CHECK(*e * *e == *e);
  CHECK(!e->is_zero_matrix());
  CHECK(!(*e == RatMatrix::identity(2)));

  // span{id, nilpotent}: local ring, no idempotent
  RatMatrix n = dense({{0, 1}, {0, 0}});
  CHECK(!idempotent_search({RatMatrix::identity(2), n}).has_value());

  // full 2x2 matrix algebra: plenty of idempotents
  std::vector<RatMatrix> full = {
      dense({{1, 0}, {0, 0}}), dense({{0, 1}, {0, 0}}),
      dense({{0, 0}, {1, 0}}), dense({{0, 0}, {0, 1}})};
  auto e2 = idempotent_search(full);
  REQUIRE(e2.has_value());
  CHECK(*e2 * *e2 == *e2);

  // an algebra with a radical on top of a split semisimple part
  RatMatrix u = dense({{1, 0, 0}, {0, 1, 1}, {0, 0, 1}});
  RatMatrix p1 = dense({{1, 0, 0}, {0, 0, 0}, {0, 0, 0}});
  RatMatrix nil = dense({{0, 0, 0}, {0, 0, 1}, {0, 0, 0}});
  auto e3 = idempotent_search({RatMatrix::identity(3), p1, nil, p1 * nil});
  REQUIRE(e3.has_value());
  CHECK(*e3 * *e3 == *e3);
  (void)u;

  // not closed under multiplication: rejected
  CHECK_THROWS_AS(
      MatrixAlgebra({RatMatrix::identity(2), dense({{0, 1}, {1, 0}}),
                     dense({{1, 1}, {0, 1}})}),
      std::invalid_argument);
}
