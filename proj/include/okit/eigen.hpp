#pragma once

#include <stdexcept>
#include <vector>

#include "okit/matrix.hpp"
#include "okit/poly.hpp"

namespace okit {

/// Raised when a characteristic/minimal polynomial fails to split over Q.
struct IrrationalEigenvalueError : std::runtime_error {
  Poly offending;
  explicit IrrationalEigenvalueError(Poly p)
      : std::runtime_error("matrix has a non-rational eigenvalue"),
        offending(std::move(p)) {}
};

struct Eigenspace {
  RatVec eigenvalues;  // one entry per matrix in the family
  SubspaceBasis space;
};

namespace detail {

inline RatMatrix matrix_power(const RatMatrix& a, int k) {
  RatMatrix r = RatMatrix::identity(a.rows());
  for (int i = 0; i < k; ++i) r = r * a;
  return r;
}

}  // namespace detail

/// Simultaneous generalized eigenspace decomposition of a pairwise
/// commuting family of square matrices. The returned spaces are a direct
/// sum of the ambient space.
inline std::vector<Eigenspace> generalized_eigenspaces(
    const std::vector<RatMatrix>& family) {
  assert(!family.empty());
  int n = family[0].rows();
  for (const auto& a : family) assert(a.rows() == n && a.cols() == n);
  std::vector<Eigenspace> spaces;
  spaces.push_back({{}, SubspaceBasis(n, RatMatrix::identity(n))});
  for (const auto& a : family) {
    std::vector<Eigenspace> next;
    for (auto& es : spaces) {
      // Restrict a to the invariant subspace: a * B = B * a_r.
      auto a_r = solve_matrix(es.space.basis, a * es.space.basis);
      if (!a_r) throw std::logic_error("family does not preserve subspace");
      Poly m = min_poly(*a_r);
      auto fac = rational_roots(m);
      if (degree(fac.leftover) > 0) throw IrrationalEigenvalueError(m);
      int total = 0;
      for (const auto& [val, mult] : fac.roots) {
        RatMatrix shifted = *a_r - RatMatrix::identity(a_r->rows()) * val;
        RatMatrix k = kernel(detail::matrix_power(shifted, mult));
        if (k.cols() == 0) continue;
        Eigenspace sub;
        sub.eigenvalues = es.eigenvalues;
        sub.eigenvalues.push_back(val);
        sub.space = SubspaceBasis(n, es.space.basis * k);
        total += k.cols();
        next.push_back(std::move(sub));
      }
      if (total != es.space.dim())
        throw std::logic_error("generalized eigenspaces do not fill the space");
    }
    spaces = std::move(next);
  }
  return spaces;
}

}  // namespace okit
