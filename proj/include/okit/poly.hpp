#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "okit/matrix.hpp"
#include "okit/rational.hpp"

namespace okit {

/// Dense univariate polynomial over the rationals, coefficients ascending.
using Poly = RatVec;

inline int degree(const Poly& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
    if (!is_zero(p[i])) return i;
  return -1;  // zero polynomial
}

inline Poly poly_trim(Poly p) {
  p.resize(static_cast<size_t>(degree(p) + 1));
  return p;
}

inline Poly poly_monic(const Poly& p) {
  int d = degree(p);
  if (d < 0) return {};
  Poly q(p.begin(), p.begin() + d + 1);
  Rat inv = Rat(1) / q[d];
  for (auto& c : q) c *= inv;
  return q;
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
  int da = degree(a), db = degree(b);
  if (da < 0 || db < 0) return {};
  Poly c(da + db + 1, Rat(0));
  for (int i = 0; i <= da; ++i)
    for (int j = 0; j <= db; ++j) c[i + j] += a[i] * b[j];
  return c;
}

/// Returns (quotient, remainder).
inline std::pair<Poly, Poly> poly_divmod(const Poly& a, const Poly& b) {
  int db = degree(b);
  assert(db >= 0);
  Poly r = poly_trim(a);
  int dr = degree(r);
  if (dr < db) return {{}, r};
  Poly q(dr - db + 1, Rat(0));
  while ((dr = degree(r)) >= db) {
    Rat f = r[dr] / b[db];
    q[dr - db] = f;
    for (int i = 0; i <= db; ++i) r[dr - db + i] -= f * b[i];
  }
  return {q, poly_trim(r)};
}

inline Poly poly_gcd(Poly a, Poly b) {
  a = poly_trim(a);
  b = poly_trim(b);
  while (degree(b) >= 0) {
    auto [q, r] = poly_divmod(a, b);
    a = b;
    b = r;
  }
  return degree(a) < 0 ? a : poly_monic(a);
}

inline Poly poly_lcm(const Poly& a, const Poly& b) {
  if (degree(a) < 0 || degree(b) < 0) return {};
  Poly g = poly_gcd(a, b);
  return poly_monic(poly_divmod(poly_mul(a, b), g).first);
}

inline Poly poly_derivative(const Poly& p) {
  if (p.size() <= 1) return {};
  Poly d(p.size() - 1);
  for (size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * Rat(static_cast<long>(i));
  return d;
}

inline Rat poly_eval(const Poly& p, const Rat& x) {
  Rat r(0);
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) r = r * x + p[i];
  return r;
}

/// Minimal polynomial of a square matrix, monic, via Krylov chains.
inline Poly min_poly(const RatMatrix& a) {
  assert(a.rows() == a.cols());
  int n = a.rows();
  if (n == 0) return {Rat(1)};
  Poly m = {Rat(1)};
  for (int i = 0; i < n; ++i) {
    RatVec v(n, Rat(0));
    v[i] = 1;
    // Check whether the current m already annihilates e_i.
    RatVec w(n, Rat(0));
    {
      RatVec pw = v;
      for (size_t k = 0; k < m.size(); ++k) {
        if (!is_zero(m[k]))
          for (int j = 0; j < n; ++j) w[j] += m[k] * pw[j];
        if (k + 1 < m.size()) pw = a.apply(pw);
      }
    }
    bool zero = true;
    for (const auto& x : w)
      if (!is_zero(x)) {
        zero = false;
        break;
      }
    if (zero) continue;
    IncrementalBasis ib(n);
    RatVec cur = v;
    std::optional<RatVec> dep;
    while (!(dep = ib.add(cur))) cur = a.apply(cur);
    Poly local(dep->size() + 1, Rat(0));
    for (size_t k = 0; k < dep->size(); ++k) local[k] = -(*dep)[k];
    local.back() = 1;
    m = poly_lcm(m, local);
  }
  return m;
}

// --- exact real-root isolation (Sturm) and rational-root extraction ---

inline int sign_changes(const std::vector<Poly>& sturm, const Rat& x) {
  int changes = 0, last = 0;
  for (const auto& p : sturm) {
    int s = sgn(poly_eval(p, x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

inline std::vector<Poly> sturm_chain(const Poly& p) {
  std::vector<Poly> chain;
  chain.push_back(poly_trim(p));
  Poly d = poly_derivative(p);
  if (degree(d) >= 0) chain.push_back(d);
  while (chain.size() >= 2 && degree(chain.back()) > 0) {
    auto [q, r] = poly_divmod(chain[chain.size() - 2], chain.back());
    if (degree(r) < 0) break;
    for (auto& c : r) c = -c;
    chain.push_back(r);
  }
  return chain;
}

/// Simplest rational (smallest denominator, then numerator) in [lo, hi].
inline Rat simplest_in_interval(const Rat& lo, const Rat& hi) {
  assert(lo <= hi);
  if (sgn(lo) <= 0 && sgn(hi) >= 0) return Rat(0);
  if (sgn(lo) < 0) return -simplest_in_interval(-hi, -lo);
  // 0 < lo <= hi
  mpz_class fl = lo.get_num() / lo.get_den();  // floor since lo > 0
  Rat ceil_lo = is_integer(lo) ? lo : Rat(fl + 1);
  if (ceil_lo <= hi) return ceil_lo;
  Rat inner = simplest_in_interval(Rat(1) / (hi - Rat(fl)), Rat(1) / (lo - Rat(fl)));
  return Rat(fl) + Rat(1) / inner;
}

/// All rational roots of p with multiplicities, plus the monic leftover
/// factor carrying any remaining (irrational or complex) roots.
struct RootFactorization {
  std::vector<std::pair<Rat, int>> roots;
  Poly leftover;  // monic; degree 0 iff fully split over Q
};

/// One rational root of a squarefree polynomial, or nullopt.
inline std::optional<Rat> find_one_rational_root(const Poly& sq) {
  int d = degree(sq);
  if (d <= 0) return std::nullopt;
  if (is_zero(sq[0])) return Rat(0);
  if (d == 1) return -sq[0] / sq[1];
  auto chain = sturm_chain(sq);
  Rat bound(1);
  for (int i = 0; i < d; ++i) {
    Rat a = abs(sq[i] / sq[d]);
    if (a + 1 > bound) bound = a + 1;
  }
  if (is_zero(poly_eval(sq, bound))) return bound;
  if (is_zero(poly_eval(sq, -bound))) return -bound;
  std::vector<std::pair<Rat, Rat>> stack = {{-bound, bound}};
  while (!stack.empty()) {
    auto [lo, hi] = stack.back();
    stack.pop_back();
    int k = sign_changes(chain, lo) - sign_changes(chain, hi);
    if (k == 0) continue;
    if (k == 1) {
      // Shrink, testing the simplest rational in the interval each round.
      Rat a = lo, b = hi;
      for (int iter = 0; iter < 320; ++iter) {
        Rat cand = simplest_in_interval(a, b);
        if (is_zero(poly_eval(sq, cand))) return cand;
        Rat mid = (a + b) / 2;
        Rat fm = poly_eval(sq, mid);
        if (is_zero(fm)) return mid;
        if (sgn(fm) == sgn(poly_eval(sq, a)))
          a = mid;
        else
          b = mid;
      }
      continue;  // root in this interval is not rational (or absurdly deep)
    }
    Rat mid = (lo + hi) / 2;
    if (is_zero(poly_eval(sq, mid))) return mid;
    stack.push_back({lo, mid});
    stack.push_back({mid, hi});
  }
  return std::nullopt;
}

inline RootFactorization rational_roots(const Poly& p_in) {
  RootFactorization out;
  Poly rest = poly_monic(p_in);
  assert(degree(rest) >= 0);
  Poly sq = poly_monic(
      poly_divmod(rest, poly_gcd(rest, poly_derivative(rest))).first);
  while (degree(sq) > 0) {
    auto r = find_one_rational_root(sq);
    if (!r) break;
    Poly lin = {-*r, Rat(1)};
    sq = poly_divmod(sq, lin).first;
    int mult = 0;
    for (;;) {
      auto [q, rem] = poly_divmod(rest, lin);
      if (degree(rem) >= 0) break;
      rest = q;
      ++mult;
    }
    assert(mult > 0);
    out.roots.push_back({*r, mult});
  }
  out.leftover = poly_monic(rest);
  return out;
}

}  // namespace okit
