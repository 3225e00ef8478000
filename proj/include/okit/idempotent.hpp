#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "okit/matrix.hpp"
#include "okit/poly.hpp"

namespace okit {

namespace detail {

inline RatVec flatten(const RatMatrix& m) {
  RatVec v(static_cast<size_t>(m.rows()) * m.cols(), Rat(0));
  for (int j = 0; j < m.cols(); ++j)
    for (const auto& [r, x] : m.column(j)) v[static_cast<size_t>(r) * m.cols() + j] = x;
  return v;
}

inline Rat trace_product(const RatMatrix& a, const RatMatrix& b) {
  // tr(a*b) without forming the product.
  Rat t(0);
  for (int j = 0; j < b.cols(); ++j)
    for (const auto& [k, v] : b.column(j)) t += a.get(j, k) * v;
  return t;
}

}  // namespace detail

/// Finite-dimensional unital matrix algebra over Q, given by a spanning
/// set of square matrices. Supports radical computation (trace-form
/// kernel) and search for a nontrivial idempotent in the semisimple
/// quotient, lifted back to an exact idempotent matrix.
class MatrixAlgebra {
 public:
  /// Throws std::invalid_argument if the span is not closed under
  /// multiplication or does not contain the identity.
  explicit MatrixAlgebra(const std::vector<RatMatrix>& spanning) {
    assert(!spanning.empty());
    n_ = spanning[0].rows();
    IncrementalBasis ib(n_ * n_);
    for (const auto& m : spanning) {
      assert(m.rows() == n_ && m.cols() == n_);
      if (!ib.add(detail::flatten(m))) basis_.push_back(m);
    }
    for (const auto& a : basis_)
      for (const auto& b : basis_)
        if (!ib.contains(detail::flatten(a * b)))
          throw std::invalid_argument("algebra span not closed under product");
    if (!ib.contains(detail::flatten(RatMatrix::identity(n_))))
      throw std::invalid_argument("algebra span does not contain the identity");
  }

  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<RatMatrix>& basis() const { return basis_; }

  /// Jacobson radical: kernel of the trace form (char 0).
  std::vector<RatMatrix> radical() const {
    int d = dim();
    RatMatrix gram(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        gram.set(i, j, detail::trace_product(basis_[i], basis_[j]));
    RatMatrix k = kernel(gram);
    std::vector<RatMatrix> rad;
    for (int j = 0; j < k.cols(); ++j) {
      RatMatrix m(n_, n_);
      for (const auto& [i, c] : k.column(j)) m = m + basis_[i] * c;
      rad.push_back(std::move(m));
    }
    return rad;
  }

  /// A nontrivial idempotent (e*e = e, e not in {0, id}), or nullopt when
  /// none is found; nullopt certifies locality for the commutant algebras
  /// arising from module endomorphism rings in this engine.
  std::optional<RatMatrix> nontrivial_idempotent() const {
    auto rad = radical();
    Quotient q = make_quotient(rad);
    int s = q.sdim;
    if (s <= 1) return std::nullopt;
    RatVec one = q.coords(RatMatrix::identity(n_));
    // Candidate elements of the semisimple quotient, searched for a
    // singular nonzero left-multiplication (a zero divisor); its left
    // ideal carries a right identity, which is the idempotent we want.
    std::vector<RatVec> cands;
    for (int i = 0; i < s; ++i) {
      RatVec e(s, Rat(0));
      e[i] = 1;
      cands.push_back(e);
    }
    for (int i = 0; i < s; ++i)
      for (int j = i + 1; j < s; ++j) {
        RatVec v(s, Rat(0));
        v[i] = 1;
        v[j] = 1;
        cands.push_back(v);
        v[j] = -1;
        cands.push_back(v);
        cands.push_back(q.mul(cands[i], cands[j]));
      }
    // Shifts by rational eigenvalues of the regular representation.
    size_t fixed = cands.size();
    for (size_t c = 0; c < fixed; ++c) {
      RatMatrix l = q.left_mul(cands[c]);
      auto fac = rational_roots(min_poly(l));
      for (const auto& [r, mult] : fac.roots) {
        RatVec v = cands[c];
        for (int i = 0; i < s; ++i) v[i] -= r * one[i];
        cands.push_back(std::move(v));
      }
    }
    // Deterministic pseudo-random combinations as a last resort.
    unsigned long seed = 0x9e3779b9ul;
    for (int t = 0; t < 32; ++t) {
      RatVec v(s, Rat(0));
      for (int i = 0; i < s; ++i) {
        seed = seed * 6364136223846793005ul + 1442695040888963407ul;
        v[i] = Rat(static_cast<long>((seed >> 33) % 7) - 3);
      }
      cands.push_back(std::move(v));
    }
    for (const auto& cand : cands) {
      bool zero = true;
      for (const auto& x : cand)
        if (!is_zero(x)) {
          zero = false;
          break;
        }
      if (zero) continue;
      RatMatrix l = q.left_mul(cand);
      int r = rank(l);
      if (r == 0 || r == s) continue;
      // Left ideal S*cand = column space of right-multiplication.
      RatMatrix rm = q.right_mul(cand);
      auto dense = rm.to_dense_rows();
      auto piv = rref_inplace(dense);
      std::vector<RatVec> ideal;
      for (int c : piv) ideal.push_back(rm.column_vec(c));
      int id_dim = static_cast<int>(ideal.size());
      // Solve for e in the ideal with y*e = y for each ideal basis y.
      RatMatrix sys(id_dim * s, id_dim);
      RatVec rhs(static_cast<size_t>(id_dim) * s, Rat(0));
      for (int yi = 0; yi < id_dim; ++yi) {
        for (int ej = 0; ej < id_dim; ++ej) {
          RatVec prod = q.mul(ideal[yi], ideal[ej]);
          for (int k = 0; k < s; ++k) sys.set(yi * s + k, ej, prod[k]);
        }
        for (int k = 0; k < s; ++k) rhs[static_cast<size_t>(yi) * s + k] = ideal[yi][k];
      }
      auto sol = solve(sys, rhs);
      if (!sol) continue;  // not a semisimple left ideal split; keep looking
      RatVec e(s, Rat(0));
      for (int ej = 0; ej < id_dim; ++ej)
        for (int k = 0; k < s; ++k) e[k] += (*sol)[ej] * ideal[ej][k];
      // Reject trivial answers in the quotient.
      bool is_one = true, is_zero_e = true;
      for (int k = 0; k < s; ++k) {
        if (!is_zero(e[k])) is_zero_e = false;
        if (e[k] != one[k]) is_one = false;
      }
      if (is_zero_e || is_one) continue;
      auto lifted = lift_idempotent(q.represent(e));
      if (lifted) return lifted;
    }
    return std::nullopt;
  }

 private:
  struct Quotient {
    int sdim = 0;
    std::vector<RatMatrix> reps;        // representatives of the S-basis
    std::vector<RatMatrix> rad;         // radical basis
    const MatrixAlgebra* owner = nullptr;

    RatVec coords(const RatMatrix& m) const {
      // Express m over [reps | rad]; return the reps part.
      int nn = owner->n_ * owner->n_;
      RatMatrix sys(nn, sdim + static_cast<int>(rad.size()));
      for (int j = 0; j < sdim; ++j) sys.set_column(j, detail::flatten(reps[j]));
      for (size_t j = 0; j < rad.size(); ++j)
        sys.set_column(sdim + static_cast<int>(j), detail::flatten(rad[j]));
      auto sol = solve(sys, detail::flatten(m));
      if (!sol) throw std::logic_error("element outside algebra span");
      return RatVec(sol->begin(), sol->begin() + sdim);
    }

    RatMatrix represent(const RatVec& v) const {
      RatMatrix m(owner->n_, owner->n_);
      for (int j = 0; j < sdim; ++j)
        if (!is_zero(v[j])) m = m + reps[j] * v[j];
      return m;
    }

    RatVec mul(const RatVec& a, const RatVec& b) const {
      return coords(represent(a) * represent(b));
    }

    RatMatrix left_mul(const RatVec& a) const {
      RatMatrix l(sdim, sdim);
      RatMatrix am = represent(a);
      for (int j = 0; j < sdim; ++j)
        l.set_column(j, coords(am * reps[j]));
      return l;
    }

    RatMatrix right_mul(const RatVec& a) const {
      RatMatrix r(sdim, sdim);
      RatMatrix am = represent(a);
      for (int j = 0; j < sdim; ++j)
        r.set_column(j, coords(reps[j] * am));
      return r;
    }
  };

  Quotient make_quotient(const std::vector<RatMatrix>& rad) const {
    Quotient q;
    q.owner = this;
    q.rad = rad;
    IncrementalBasis ib(n_ * n_);
    for (const auto& m : rad) ib.add(detail::flatten(m));
    for (const auto& m : basis_)
      if (!ib.add(detail::flatten(m))) q.reps.push_back(m);
    q.sdim = static_cast<int>(q.reps.size());
    return q;
  }

  /// Newton lifting of an idempotent mod the (nilpotent) radical to an
  /// exact idempotent of the matrix algebra.
  std::optional<RatMatrix> lift_idempotent(RatMatrix e) const {
    RatMatrix id = RatMatrix::identity(n_);
    for (int iter = 0; iter < 64; ++iter) {
      RatMatrix e2 = e * e;
      if (e2 == e) {
        if (e.is_zero_matrix() || e == id) return std::nullopt;
        return e;
      }
      e = e2 * Rat(3) - e2 * e * Rat(2);
    }
    return std::nullopt;
  }

  int n_ = 0;
  std::vector<RatMatrix> basis_;
};

/// Entry point: a nontrivial idempotent of the span, or none.
inline std::optional<RatMatrix> idempotent_search(
    const std::vector<RatMatrix>& algebra_span) {
  return MatrixAlgebra(algebra_span).nontrivial_idempotent();
}

}  // namespace okit
