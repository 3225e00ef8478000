#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "okit/eigen.hpp"
#include "okit/module.hpp"

namespace okit {

/// Convolution of formal characters at a single weight.
inline long tensor_weight_dim(const FormalCharacter& cm, const FormalCharacter& cn,
                              const Weight& lambda) {
  long total = 0;
  for (const auto& [mu, dm] : cm) {
    auto it = cn.find(lambda - mu);
    if (it != cn.end()) total += dm * it->second;
  }
  return total;
}

/// Tensor product over the common acting algebra, truncated to depth.
/// Basis pairs ordered by (left weight, left index, right index).
inline ModPtr tensor(ModPtr ml, ModPtr nr, int depth) {
  const TruncatedModule& M = *ml;
  const TruncatedModule& N = *nr;
  if (M.type != N.type) throw SpecError("tensor factors over different algebras");
  if (depth > M.depth || depth > N.depth)
    throw WindowError("factor windows too small for requested tensor depth");
  const auto& rd = M.rd();
  const auto& lie = M.lie();
  auto t = std::make_shared<TruncatedModule>();
  t->type = M.type;
  t->levi.resize(rd.rank());
  for (int i = 0; i < rd.rank(); ++i) t->levi[i] = M.levi[i] && N.levi[i];
  t->top = M.top + N.top;
  t->depth = depth;
  t->provenance = "tensor(" + M.provenance + ", " + N.provenance + ")";

  // per weight: list of (left weight, left index, right index)
  struct Key {
    Weight lw;
    int li, ri;
  };
  std::map<Weight, std::vector<Key>> basis;
  std::map<Weight, std::map<std::tuple<Weight, int, int>, int>> index;
  for (const auto& [lw, ld] : M.dims)
    for (const auto& [rw, rdim] : N.dims) {
      Weight mu = lw + rw;
      if (!t->in_window(mu)) continue;
      for (int i = 0; i < ld; ++i)
        for (int j = 0; j < rdim; ++j) basis[mu].push_back({lw, i, j});
    }
  for (auto& [mu, keys] : basis) {
    std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
      if (a.lw != b.lw) return a.lw < b.lw;
      if (a.li != b.li) return a.li < b.li;
      return a.ri < b.ri;
    });
    t->dims[mu] = static_cast<int>(keys.size());
    for (size_t i = 0; i < keys.size(); ++i)
      index[mu][{keys[i].lw, keys[i].li, keys[i].ri}] = static_cast<int>(i);
    if (!t->levi_empty() && rd.height(t->top - mu) == depth) t->boundary.insert(mu);
  }

  for (int g : t->acting_generators()) {
    Weight shift = lie.gen(g).weight;
    for (const auto& [mu, keys] : basis) {
      Weight target = mu + shift;
      if (!t->in_window(target) || !t->dims.count(target)) continue;
      RatMatrix mat(t->dim(target), static_cast<int>(keys.size()));
      auto& tindex = index[target];
      for (size_t col = 0; col < keys.size(); ++col) {
        const Key& k = keys[col];
        Weight rw = mu - k.lw;
        // g u (x) v
        Weight lt = k.lw + shift;
        if (M.in_window(lt) && M.dim(lt) > 0) {
          RatMatrix a = M.action(g, k.lw);
          for (const auto& [r, v] : a.column(k.li)) {
            int row = tindex.at({lt, r, k.ri});
            mat.set(row, static_cast<int>(col), mat.get(row, static_cast<int>(col)) + v);
          }
        }
        // u (x) g v
        Weight rt = rw + shift;
        if (N.in_window(rt) && N.dim(rt) > 0) {
          RatMatrix b = N.action(g, rw);
          for (const auto& [r, v] : b.column(k.ri)) {
            int row = tindex.at({k.lw, k.li, r});
            mat.set(row, static_cast<int>(col), mat.get(row, static_cast<int>(col)) + v);
          }
        }
      }
      t->act[g][mu] = std::move(mat);
    }
  }
  return t;
}

// --- center of U(g): Gelfand invariants ---

namespace detail {

/// One PBW-normal-ordered central element, stored as decoded terms:
/// coefficient and generator powers in ascending PBW-position order.
struct CentralElement {
  std::vector<std::pair<std::vector<std::pair<int, int>>, Rat>> terms;
};

struct CenterData {
  std::vector<CentralElement> elements;  // degree 2 [, degree 3]
};

inline const CenterData& center_data(AlgebraType type) {
  static const auto build = [](AlgebraType tt) {
    const auto& lie = lie_algebra(tt);
    int d = lie.dim();
    // dual basis w.r.t. the defining-representation trace form
    RatMatrix gram(d, d);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) gram.set(a, b, lie.killing_pairing(a, b));
    auto inv = solve_matrix(gram, RatMatrix::identity(d));
    if (!inv) throw std::logic_error("degenerate trace form");
    PbwEngine eng = PbwEngine::standard(lie);
    // dual elements as U(g) linear combinations
    std::vector<PbwElement> dual(d);
    for (int a = 0; a < d; ++a) {
      PbwElement e;
      for (int b = 0; b < d; ++b) {
        Rat c = inv->get(b, a);
        if (is_zero(c)) continue;
        PbwMonomial m = eng.empty_monomial();
        ++m[eng.position_of(b)];
        pbw_add(e, m, c);
      }
      dual[a] = std::move(e);
    }
    auto gen_elem = [&](int a) {
      PbwMonomial m = eng.empty_monomial();
      ++m[eng.position_of(a)];
      return PbwElement{{m, Rat(1)}};
    };
    CenterData data;
    int degrees = tt == AlgebraType::A1 ? 1 : 2;
    for (int deg = 2; deg < 2 + degrees; ++deg) {
      PbwElement total;
      std::vector<int> idx(deg, 0);
      for (;;) {
        // trace of the product of defining matrices
        RatMatrix prod = lie.gen(idx[0]).mat;
        for (int k = 1; k < deg; ++k) prod = prod * lie.gen(idx[k]).mat;
        Rat tr(0);
        for (int j = 0; j < prod.cols(); ++j) tr += prod.get(j, j);
        if (!is_zero(tr)) {
          PbwElement term = dual[idx[0]];
          for (int k = 1; k < deg; ++k) term = eng.multiply(term, dual[idx[k]]);
          pbw_add(total, term, tr);
        }
        int k = 0;
        while (k < deg && ++idx[k] == d) idx[k++] = 0;
        if (k == deg) break;
      }
      CentralElement ce;
      for (const auto& [m, c] : total) {
        std::vector<std::pair<int, int>> ops;
        for (int p = 0; p < d; ++p)
          if (m[p]) ops.push_back({eng.generator_at(p), m[p]});
        ce.terms.push_back({std::move(ops), c});
      }
      data.elements.push_back(std::move(ce));
    }
    return data;
  };
  static const CenterData a1 = build(AlgebraType::A1);
  static const CenterData a2 = build(AlgebraType::A2);
  return type == AlgebraType::A1 ? a1 : a2;
}

}  // namespace detail

/// Matrix of the degree-2 or degree-3 Gelfand invariant on M_lambda.
/// Exact at every window weight: the normal-ordered terms raise first and
/// descend back, never leaving the window below lambda.
inline RatMatrix central_element_action(const TruncatedModule& m, int degree,
                                        const Weight& lambda) {
  if (!m.levi_full()) throw SpecError("central action needs a g-module");
  if (degree == 3 && m.type == AlgebraType::A1)
    throw SpecError("degree-3 invariant unsupported: center is generated in degree 2");
  if (degree != 2 && degree != 3) throw SpecError("unsupported center degree");
  const auto& data = detail::center_data(m.type);
  const auto& ce = data.elements[degree - 2];
  const auto& lie = m.lie();
  int d = m.dim(lambda);
  RatMatrix out(d, d);
  for (const auto& [ops, coef] : ce.terms) {
    RatMatrix cur = RatMatrix::identity(d);
    Weight w = lambda;
    Rat scale = coef;
    bool dead = false;
    for (auto it = ops.rbegin(); it != ops.rend() && !dead; ++it) {
      const auto& gen = lie.gen(it->first);
      for (int t = 0; t < it->second; ++t) {
        if (gen.kind == 0) {
          scale *= m.rd().pairing(w, gen.index);
          if (is_zero(scale)) { dead = true; break; }
          continue;
        }
        Weight nw = w + gen.weight;
        if (!m.in_window(nw) || m.dim(nw) == 0) {
          dead = true;
          break;
        }
        cur = m.action(it->first, w) * cur;
        w = nw;
        if (cur.is_zero_matrix()) { dead = true; break; }
      }
    }
    if (dead || is_zero(scale)) continue;
    out = out + cur * scale;
  }
  return out;
}

inline RatMatrix central_element_action(const ModPtr& m, int degree,
                                        const Weight& lambda) {
  return central_element_action(*m, degree, lambda);
}

/// Block label: dominant-most linkage representative plus the eigenvalue
/// tuple of the center generators on the corresponding Verma top.
struct BlockLabel {
  Weight rep;
  RatVec eigen;

  bool operator==(const BlockLabel& o) const { return rep == o.rep; }
  bool operator<(const BlockLabel& o) const { return rep < o.rep; }
};

inline RatVec central_eigen_tuple(AlgebraType type, const Weight& lambda) {
  ModPtr top = verma(type, lambda, 0);
  RatVec eigen;
  eigen.push_back(central_element_action(top, 2, lambda).get(0, 0));
  if (type == AlgebraType::A2)
    eigen.push_back(central_element_action(top, 3, lambda).get(0, 0));
  return eigen;
}

inline BlockLabel central_character(AlgebraType type, const Weight& lambda) {
  if (!lambda.is_integral()) throw SpecError("central character of a non-integral weight");
  return {root_datum(type).dominant_representative(lambda),
          central_eigen_tuple(type, lambda)};
}

/// One block of a module: its label, the submodule, and which mechanism
/// separated it from the others.
struct BlockSummand {
  BlockLabel label;
  Submodule part;
  std::string mechanism;  // "eigentuple" or "linkage-graph"
};

/// Simultaneous generalized eigenspace decomposition under the center,
/// refined by linkage classes of maximal-vector weights when the
/// eigenvalue tuples fail to separate (not expected for sl2/sl3).
inline std::vector<BlockSummand> block_decompose(ModPtr mod) {
  const TruncatedModule& m = *mod;
  if (!m.levi_full()) throw SpecError("block decomposition needs a g-module");
  int ngen = m.type == AlgebraType::A1 ? 1 : 2;
  std::map<RatVec, Submodule> parts;
  for (const auto& [mu, d] : m.dims) {
    std::vector<RatMatrix> family;
    for (int k = 0; k < ngen; ++k)
      family.push_back(central_element_action(m, 2 + k, mu));
    for (const auto& es : generalized_eigenspaces(family)) {
      auto& sub = parts[es.eigenvalues];
      sub.parent = mod;
      sub.basis[mu] = es.space.basis;
    }
  }
  std::vector<BlockSummand> out;
  for (auto& [eigen, sub] : parts) {
    // maximal-vector weights of the block determine the linkage class
    std::set<Weight> reps;
    Weight some_rep = m.top;
    for (const auto& [mu, b] : sub.basis) {
      SubspaceBasis mv = maximal_vectors(m, mu);
      // a maximal vector inside the block: intersect with the block space
      // (cheap sufficient test: weight carries maximal vectors of the
      // whole module and block holds the entire weight space, or solve)
      if (mv.dim() == 0) continue;
      bool in_block = false;
      if (b.cols() == m.dim(mu)) {
        in_block = true;
      } else {
        for (int j = 0; j < mv.dim() && !in_block; ++j)
          if (solve(b, mv.basis.column_vec(j))) in_block = true;
      }
      if (in_block) {
        reps.insert(m.rd().dominant_representative(mu));
        some_rep = m.rd().dominant_representative(mu);
      }
    }
    if (reps.size() <= 1) {
      out.push_back({{some_rep, eigen}, std::move(sub), "eigentuple"});
      continue;
    }
    // refinement: group maximal vectors by linkage class and regenerate
    std::map<Weight, std::vector<ModuleVec>> by_class;
    for (const auto& [mu, b] : sub.basis) {
      SubspaceBasis mv = maximal_vectors(m, mu);
      for (int j = 0; j < mv.dim(); ++j) {
        RatVec v = mv.basis.column_vec(j);
        if (solve(b, v)) by_class[m.rd().dominant_representative(mu)].push_back({mu, v});
      }
    }
    long covered = 0;
    std::vector<BlockSummand> refined;
    for (auto& [rep, gens] : by_class) {
      Submodule s = submodule_generated(mod, gens);
      covered += s.total_dim();
      refined.push_back({{rep, eigen}, std::move(s), "linkage-graph"});
    }
    if (covered != sub.total_dim())
      throw std::logic_error("linkage refinement does not exhaust the block");
    for (auto& r : refined) out.push_back(std::move(r));
  }
  return out;
}

/// The block with the given linkage representative, or an empty submodule.
inline Submodule block_of(ModPtr mod, const Weight& rep) {
  Weight drep = mod->rd().dominant_representative(rep);
  for (auto& b : block_decompose(mod))
    if (b.label.rep == drep) return b.part;
  Submodule empty;
  empty.parent = mod;
  return empty;
}

}  // namespace okit
