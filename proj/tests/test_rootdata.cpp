#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "okit/rootdata.hpp"

using namespace okit;

namespace {

Weight wt(std::vector<long> c) {
  RatVec v;
  for (long x : c) v.push_back(Rat(x));
  return Weight(std::move(v));
}

/// Exhaustive enumeration of positive-root multisets, independent of the
/// recursive counter, usable up to moderate height.
long kostant_by_enumeration(const RootDatum& rd, const Weight& nu) {
  RatVec rc = rd.root_coords(nu);
  for (const auto& c : rc)
    if (!is_integer(c) || sgn(c) < 0) return 0;
  std::vector<long> target;
  for (const auto& c : rc) target.push_back(c.get_num().get_si());
  const auto& roots = rd.positive_roots();
  long count = 0;
  // odometer over per-root multiplicities bounded by the target height
  long hbound = 0;
  for (long t : target) hbound += t;
  std::vector<long> mult(roots.size(), 0);
  for (;;) {
    std::vector<long> sum(target.size(), 0);
    for (size_t i = 0; i < roots.size(); ++i)
      for (size_t j = 0; j < target.size(); ++j)
        sum[j] += mult[i] * roots[i].simple_coeffs[j];
    if (sum == target) ++count;
    size_t k = 0;
    while (k < mult.size()) {
      if (++mult[k] <= hbound) break;
      mult[k++] = 0;
    }
    if (k == mult.size()) break;
  }
  return count;
}

}  // namespace

TEST_CASE("cartan data") {
  const auto& a1 = root_datum(AlgebraType::A1);
  const auto& a2 = root_datum(AlgebraType::A2);
  CHECK(a1.rank() == 1);
  CHECK(a2.rank() == 2);
  CHECK(a1.simple_roots()[0] == wt({2}));
  CHECK(a2.simple_roots()[0] == wt({2, -1}));
  CHECK(a2.simple_roots()[1] == wt({-1, 2}));
  CHECK(a2.positive_roots().size() == 3);
  CHECK(a2.positive_roots()[2].weight == wt({1, 1}));
  CHECK(a2.rho() == wt({1, 1}));
  CHECK(a2.height(wt({1, 1})) == Rat(2));
  CHECK(a2.height(a2.simple_roots()[0]) == Rat(1));
}

TEST_CASE("weight order") {
  const auto& a2 = root_datum(AlgebraType::A2);
  CHECK(a2.leq(wt({0, 0}), wt({2, -1})));   // difference is alpha
  CHECK(a2.leq(wt({-1, -1}), wt({1, 1})));  // difference alpha + beta
  CHECK(!a2.leq(wt({1, 1}), wt({-1, -1})));
  CHECK(!a2.leq(wt({1, 0}), wt({0, 1})));   // incomparable
  CHECK(a2.leq(wt({1, 1}), wt({1, 1})));
  // non-integral difference over the root lattice
  CHECK(!a2.leq(wt({0, 0}), wt({1, 0})));
}

TEST_CASE("weyl group enumeration") {
  const auto& a1 = root_datum(AlgebraType::A1);
  const auto& a2 = root_datum(AlgebraType::A2);
  CHECK(a1.weyl_group().size() == 2);
  CHECK(a2.weyl_group().size() == 6);
  CHECK(a2.longest_element().length() == 3);
  // longest element acts by -w0: lambda -> -reverse(lambda) in type A2
  Weight l = wt({3, 1});
  CHECK(a2.longest_element().apply(l) == wt({-1, -3}));
  // simple reflection on fundamental coords
  CHECK(a2.simple_reflection(0).apply(wt({1, 0})) == wt({-1, 1}));
  // every action matrix is an involution composition consistent with words
  for (const auto& w : a2.weyl_group()) {
    RatMatrix m = RatMatrix::identity(2);
    for (int i : w.word) m = m * a2.simple_reflection(i).action;
    CHECK(m == w.action);
  }
}

TEST_CASE("dot action and linkage") {
  const auto& a1 = root_datum(AlgebraType::A1);
  const auto& a2 = root_datum(AlgebraType::A2);
  // sl2: s . lambda = -lambda - 2
  CHECK(a1.dot_action(a1.simple_reflection(0), wt({3})) == wt({-5}));
  // orbit of 0 in A2, all six values
  auto orb = a2.linkage_class(wt({0, 0}));
  std::set<Weight> expect = {wt({0, 0}),  wt({-2, 1}), wt({1, -2}),
                             wt({-3, 0}), wt({0, -3}), wt({-2, -2})};
  CHECK(std::set<Weight>(orb.begin(), orb.end()) == expect);
  CHECK(a2.dominant_representative(wt({-2, -2})) == wt({0, 0}));
  CHECK(a2.dominant_representative(wt({0, -3})) == wt({0, 0}));
  // singular orbit: lambda + rho fixed by a reflection, smaller orbit
  auto orb2 = a2.linkage_class(wt({-1, 0}));
  CHECK(orb2.size() == 3);
  // regular dominant weight is its own representative
  CHECK(a2.dominant_representative(wt({1, 1})) == wt({1, 1}));
}

TEST_CASE("kostant partition function") {
  const auto& a1 = root_datum(AlgebraType::A1);
  const auto& a2 = root_datum(AlgebraType::A2);
  CHECK(a1.kostant_partition(wt({0})) == 1);
  CHECK(a1.kostant_partition(wt({2})) == 1);    // alpha
  CHECK(a1.kostant_partition(wt({6})) == 1);    // 3 alpha
  CHECK(a1.kostant_partition(wt({1})) == 0);    // not in root lattice
  CHECK(a1.kostant_partition(wt({-2})) == 0);
  CHECK(a2.kostant_partition(wt({0, 0})) == 1);
  // alpha + beta = alpha+beta or {alpha, beta}: two ways
  CHECK(a2.kostant_partition(wt({1, 1})) == 2);
  // 2 alpha + beta: {a,a,b} or {a, a+b}
  CHECK(a2.kostant_partition(wt({3, 0})) == 2);
  // 2 alpha + 2 beta: {a,a,b,b}, {a,b,ab}, {ab,ab}
  CHECK(a2.kostant_partition(wt({2, 2})) == 3);
  // cross-check against plain enumeration through height 8
  for (long p = 0; p <= 4; ++p)
    for (long q = 0; q <= 4; ++q) {
      Weight nu = a2.from_root_coords({Rat(p), Rat(q)});
      CHECK(a2.kostant_partition(nu) == kostant_by_enumeration(a2, nu));
    }
}

TEST_CASE("root coordinate round trips") {
  const auto& a2 = root_datum(AlgebraType::A2);
  Weight w = wt({4, -7});
  CHECK(a2.from_root_coords(a2.root_coords(w)) == w);
  RatVec rc = a2.root_coords(a2.simple_roots()[1]);
  CHECK(rc[0] == Rat(0));
  CHECK(rc[1] == Rat(1));
}
