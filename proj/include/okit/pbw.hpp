#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "okit/matrix.hpp"
#include "okit/rootdata.hpp"

namespace okit {

/// Chevalley basis of sl2 or sl3 realized inside the defining matrix
/// representation. Structure constants come from actual matrix brackets,
/// so the Jacobi identity holds by construction.
class LieAlgebra {
 public:
  struct Gen {
    std::string name;
    RatMatrix mat;   // defining representation
    Weight weight;   // adjoint weight (zero for Cartan elements)
    int kind;        // -1 lowering, 0 Cartan, +1 raising
    int index;       // positive-root index, or simple index for Cartan
  };

  explicit LieAlgebra(AlgebraType type) : rd_(&root_datum(type)) {
    int n = rd_->rank() + 1;  // defining dimension for type A
    auto E = [&](int i, int j) {
      RatMatrix m(n, n);
      m.set(i, j, Rat(1));
      return m;
    };
    const auto& pos = rd_->positive_roots();
    // Simple-root raising/lowering operators and coroots.
    std::vector<RatMatrix> xs, ys;
    for (int i = 0; i < rd_->rank(); ++i) {
      xs.push_back(E(i, i + 1));
      ys.push_back(E(i + 1, i));
    }
    // Non-simple positive roots as iterated brackets of simple ones.
    for (const auto& r : pos) {
      if (r.height == 1) continue;
      // height 2 in A2: alpha + beta
      xs.push_back(xs[0] * xs[1] - xs[1] * xs[0]);
      ys.push_back(ys[0] * ys[1] - ys[1] * ys[0]);
    }
    for (size_t k = 0; k < pos.size(); ++k)
      gens_.push_back({"y" + root_name(k), ys[k], -pos[k].weight, -1,
                       static_cast<int>(k)});
    for (int i = 0; i < rd_->rank(); ++i)
      gens_.push_back({"h" + std::to_string(i + 1),
                       E(i, i) - E(i + 1, i + 1), rd_->zero_weight(), 0, i});
    for (size_t k = 0; k < pos.size(); ++k)
      gens_.push_back({"x" + root_name(k), xs[k], pos[k].weight, +1,
                       static_cast<int>(k)});
    build_brackets();
  }

  const RootDatum& root_data() const { return *rd_; }
  int dim() const { return static_cast<int>(gens_.size()); }
  const Gen& gen(int a) const { return gens_[a]; }
  int num_pos_roots() const {
    return static_cast<int>(rd_->positive_roots().size());
  }

  int y_index(int root) const { return root; }
  int h_index(int simple) const { return num_pos_roots() + simple; }
  int x_index(int root) const { return num_pos_roots() + rd_->rank() + root; }

  /// [a, b] as a sparse combination of basis generators.
  const std::vector<std::pair<int, Rat>>& bracket(int a, int b) const {
    return brackets_[a][b];
  }

  /// Trace form of the defining representation.
  Rat killing_pairing(int a, int b) const {
    Rat t(0);
    const RatMatrix& ma = gens_[a].mat;
    const RatMatrix& mb = gens_[b].mat;
    for (int j = 0; j < mb.cols(); ++j)
      for (const auto& [k, v] : mb.column(j)) t += ma.get(j, k) * v;
    return t;
  }

 private:
  std::string root_name(size_t k) const {
    const auto& sc = rd_->positive_roots()[k].simple_coeffs;
    std::string s;
    for (size_t i = 0; i < sc.size(); ++i)
      for (int t = 0; t < sc[i]; ++t) s += static_cast<char>('a' + i);
    return s;
  }

  void build_brackets() {
    int d = dim();
    int n = gens_[0].mat.rows();
    IncrementalBasis ib(n * n);
    auto flat = [&](const RatMatrix& m) {
      RatVec v(static_cast<size_t>(n) * n, Rat(0));
      for (int j = 0; j < n; ++j)
        for (const auto& [r, x] : m.column(j)) v[static_cast<size_t>(r) * n + j] = x;
      return v;
    };
    for (const auto& g : gens_) ib.add(flat(g.mat));
    brackets_.assign(d, std::vector<std::vector<std::pair<int, Rat>>>(d));
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        RatMatrix c = gens_[a].mat * gens_[b].mat - gens_[b].mat * gens_[a].mat;
        if (c.is_zero_matrix()) continue;
        IncrementalBasis probe = ib;  // reuse the reduced shadow
        auto dep = probe.add(flat(c));
        if (!dep) throw std::logic_error("bracket escapes the Lie algebra");
        for (int k = 0; k < d; ++k)
          if (!is_zero((*dep)[k])) brackets_[a][b].push_back({k, (*dep)[k]});
      }
  }

  const RootDatum* rd_;
  std::vector<Gen> gens_;
  std::vector<std::vector<std::vector<std::pair<int, Rat>>>> brackets_;
};

inline const LieAlgebra& lie_algebra(AlgebraType t) {
  static const LieAlgebra a1(AlgebraType::A1);
  static const LieAlgebra a2(AlgebraType::A2);
  return t == AlgebraType::A1 ? a1 : a2;
}

/// PBW monomial: exponents indexed by position in the engine's chosen
/// total order of Lie algebra generators.
using PbwMonomial = std::vector<int>;

/// Element of the universal enveloping algebra in PBW normal form.
using PbwElement = std::map<PbwMonomial, Rat>;

inline void pbw_add(PbwElement& dst, const PbwMonomial& m, const Rat& c) {
  auto it = dst.find(m);
  if (it == dst.end()) {
    if (!is_zero(c)) dst.emplace(m, c);
    return;
  }
  it->second += c;
  if (is_zero(it->second)) dst.erase(it);
}

inline void pbw_add(PbwElement& dst, const PbwElement& src, const Rat& c) {
  for (const auto& [m, v] : src) pbw_add(dst, m, v * c);
}

/// Straightening engine for U(g) with a configurable PBW order. Left
/// multiplication by generators is memoized; instances are independent,
/// so concurrent use needs one engine per thread.
class PbwEngine {
 public:
  PbwEngine(const LieAlgebra& lie, std::vector<int> order)
      : lie_(&lie), order_(std::move(order)) {
    if (static_cast<int>(order_.size()) != lie_->dim())
      throw std::invalid_argument("PBW order must list every generator once");
    pos_.assign(lie_->dim(), -1);
    for (size_t p = 0; p < order_.size(); ++p) {
      if (pos_[order_[p]] != -1)
        throw std::invalid_argument("PBW order must list every generator once");
      pos_[order_[p]] = static_cast<int>(p);
    }
  }

  /// Standard order: lowerings by root height descending, then Cartan,
  /// then raisings by root height ascending. Suitable for Verma modules
  /// and normal-ordered central elements alike.
  static PbwEngine standard(const LieAlgebra& lie) {
    std::vector<int> order = lowering_first_order(lie, {});
    return PbwEngine(lie, std::move(order));
  }

  /// Order putting the lowerings outside a Levi subset first (by height
  /// descending), then the Levi lowerings, Cartan, and all raisings.
  static std::vector<int> lowering_first_order(const LieAlgebra& lie,
                                               const std::vector<bool>& out_first) {
    const auto& pos = lie.root_data().positive_roots();
    std::vector<int> order;
    auto add_lowerings = [&](bool outside) {
      // height descending keeps products of low-height lowerings already
      // normal when built top down
      for (int h = static_cast<int>(pos.size()); h >= 1; --h)
        for (size_t k = 0; k < pos.size(); ++k)
          if (pos[k].height == h) {
            bool is_out = !out_first.empty() && out_first[k];
            if (is_out == outside) order.push_back(lie.y_index(static_cast<int>(k)));
          }
    };
    if (!out_first.empty()) add_lowerings(true);
    add_lowerings(false);
    for (int i = 0; i < lie.root_data().rank(); ++i) order.push_back(lie.h_index(i));
    for (int h = 1; h <= static_cast<int>(pos.size()); ++h)
      for (size_t k = 0; k < pos.size(); ++k)
        if (pos[k].height == h) order.push_back(lie.x_index(static_cast<int>(k)));
    return order;
  }

  const LieAlgebra& lie() const { return *lie_; }
  const std::vector<int>& order() const { return order_; }
  int position_of(int gen) const { return pos_[gen]; }
  int generator_at(int position) const { return order_[position]; }

  PbwMonomial empty_monomial() const { return PbwMonomial(lie_->dim(), 0); }

  PbwElement one() const { return {{empty_monomial(), Rat(1)}}; }

  PbwElement monomial(const PbwMonomial& m) const { return {{m, Rat(1)}}; }

  /// g_a * m, normal ordered.
  const PbwElement& left_mul_gen(int a, const PbwMonomial& m) {
    auto key = std::make_pair(a, m);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    PbwElement out;
    int p = first_position(m);
    int pa = pos_[a];
    if (p < 0 || pa <= p) {
      PbwMonomial r = m;
      ++r[pa];
      out.emplace(std::move(r), Rat(1));
    } else {
      int b = order_[p];
      PbwMonomial rest = m;
      --rest[p];
      // g_a (g_b rest) = g_b (g_a rest) + [g_a, g_b] rest
      const PbwElement& inner = left_mul_gen(a, rest);
      PbwElement tmp = inner;  // copy: recursion may invalidate references
      for (const auto& [mm, c] : tmp) pbw_add(out, left_mul_gen(b, mm), c);
      for (const auto& [d, cd] : lie_->bracket(a, b))
        pbw_add(out, left_mul_gen(d, rest), cd);
    }
    return memo_.emplace(std::move(key), std::move(out)).first->second;
  }

  PbwElement left_mul_gen(int a, const PbwElement& e) {
    PbwElement out;
    for (const auto& [m, c] : e) pbw_add(out, left_mul_gen(a, m), c);
    return out;
  }

  /// Normal-ordered product of two normal-ordered elements.
  PbwElement multiply(const PbwElement& lhs, const PbwElement& rhs) {
    PbwElement out;
    for (const auto& [m, c] : lhs) {
      PbwElement cur = rhs;
      // peel the generators of m from the right end of the order
      for (int p = static_cast<int>(order_.size()) - 1; p >= 0; --p)
        for (int t = 0; t < m[p]; ++t) cur = left_mul_gen(order_[p], cur);
      pbw_add(out, cur, c);
    }
    return out;
  }

  /// Product of generators listed left to right.
  PbwElement word(const std::vector<int>& gens) {
    PbwElement out = one();
    for (int i = static_cast<int>(gens.size()) - 1; i >= 0; --i)
      out = left_mul_gen(gens[i], out);
    return out;
  }

  /// Adjoint weight of a monomial.
  Weight monomial_weight(const PbwMonomial& m) const {
    Weight w = lie_->root_data().zero_weight();
    for (size_t p = 0; p < m.size(); ++p)
      if (m[p]) w = w + lie_->gen(order_[p]).weight * Rat(m[p]);
    return w;
  }

 private:
  int first_position(const PbwMonomial& m) const {
    for (size_t p = 0; p < m.size(); ++p)
      if (m[p] > 0) return static_cast<int>(p);
    return -1;
  }

  const LieAlgebra* lie_;
  std::vector<int> order_;
  std::vector<int> pos_;
  std::map<std::pair<int, PbwMonomial>, PbwElement> memo_;
};

}  // namespace okit
