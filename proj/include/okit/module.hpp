#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "okit/matrix.hpp"
#include "okit/pbw.hpp"
#include "okit/rootdata.hpp"

namespace okit {

/// Invalid construction parameters.
struct SpecError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Requested computation does not fit the truncation window.
struct WindowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class TruncatedModule;
using ModPtr = std::shared_ptr<const TruncatedModule>;

/// Weight vector inside a module: coordinates in that weight space basis.
struct ModuleVec {
  Weight weight;
  RatVec coords;
};

using FormalCharacter = std::map<Weight, long>;

/// Weight module truncated to the window {mu : ht(top - mu) <= depth}.
/// Always stores actions of every raising generator x_i; lowering y_j is
/// stored only for j in the Levi set. Cartan actions are implicit scalars.
/// Action matrices are stored only when the target weight stays in the
/// window; weights with clipped outgoing lowerings form the boundary.
class TruncatedModule {
 public:
  AlgebraType type = AlgebraType::A1;
  std::vector<bool> levi;  // per simple root: does y_j act?
  Weight top;
  int depth = 0;
  std::map<Weight, int> dims;              // only weights with dim > 0
  std::set<Weight> boundary;
  std::map<int, std::map<Weight, RatMatrix>> act;  // generator -> source weight
  std::map<Weight, std::vector<std::string>> labels;
  std::string provenance;

  const RootDatum& rd() const { return root_datum(type); }
  const LieAlgebra& lie() const { return lie_algebra(type); }

  int dim(const Weight& mu) const {
    auto it = dims.find(mu);
    return it == dims.end() ? 0 : it->second;
  }

  long total_dim() const {
    long t = 0;
    for (const auto& [w, d] : dims) t += d;
    return t;
  }

  bool levi_full() const {
    for (bool b : levi)
      if (!b) return false;
    return true;
  }

  bool levi_empty() const {
    for (bool b : levi)
      if (b) return false;
    return true;
  }

  /// Window test uses the height cone under the reference top weight.
  bool in_window(const Weight& mu) const {
    RatVec rc = rd().root_coords(top - mu);
    Rat h(0);
    for (const auto& c : rc) {
      if (!is_integer(c) || sgn(c) < 0) return false;
      h += c;
    }
    return h <= depth;
  }

  bool interior(const Weight& mu) const {
    return dim(mu) > 0 && !boundary.count(mu);
  }

  bool gen_acts(int g) const {
    const auto& gen = lie().gen(g);
    if (gen.kind >= 0) return true;
    const auto& sc = rd().positive_roots()[gen.index].simple_coeffs;
    for (size_t i = 0; i < sc.size(); ++i)
      if (sc[i] > 0 && !levi[i]) return false;
    return true;
  }

  /// Simple generators whose action matrices are stored.
  std::vector<int> acting_generators() const {
    std::vector<int> out;
    for (int i = 0; i < rd().rank(); ++i)
      if (levi[i]) out.push_back(lie().y_index(i));
    for (int i = 0; i < rd().rank(); ++i) out.push_back(lie().x_index(i));
    return out;
  }

  /// Matrix of any acting generator M_mu -> M_{mu+wt}; composite-root
  /// generators are composed from simple ones via their bracket origin.
  RatMatrix action(int g, const Weight& mu) const {
    const auto& gen = lie().gen(g);
    Weight target = mu + gen.weight;
    if (gen.kind == 0)
      return RatMatrix::identity(dim(mu)) * rd().pairing(mu, gen.index);
    if (!gen_acts(g))
      throw SpecError("generator outside the acting algebra");
    if (dim(mu) == 0 || !in_window(target) || dim(target) == 0)
      return RatMatrix(dim(target), dim(mu));
    const auto& pos = rd().positive_roots();
    if (pos[gen.index].height == 1) {
      auto git = act.find(g);
      if (git != act.end()) {
        auto it = git->second.find(mu);
        if (it != git->second.end()) return it->second;
      }
      return RatMatrix(dim(target), dim(mu));
    }
    // composite root in A2: g = [g_a, g_b] with simple a, b
    int a = gen.kind > 0 ? lie().x_index(0) : lie().y_index(0);
    int b = gen.kind > 0 ? lie().x_index(1) : lie().y_index(1);
    Weight wa = lie().gen(a).weight, wb = lie().gen(b).weight;
    RatMatrix first = action(a, mu + wb) * action(b, mu);
    RatMatrix second = action(b, mu + wa) * action(a, mu);
    return first - second;
  }

  ModuleVec apply(int g, const ModuleVec& v) const {
    RatMatrix m = action(g, v.weight);
    return {v.weight + lie().gen(g).weight, m.apply(v.coords)};
  }
};

struct ModuleMap {
  ModPtr source, target;
  std::map<Weight, RatMatrix> blocks;  // per source weight

  RatMatrix block(const Weight& mu) const {
    auto it = blocks.find(mu);
    if (it != blocks.end()) return it->second;
    return RatMatrix(target->dim(mu), source->dim(mu));
  }
};

/// Graded subspace of a parent module, closed under the acting algebra;
/// per-weight bases as column matrices in parent coordinates.
struct Submodule {
  ModPtr parent;
  std::map<Weight, RatMatrix> basis;

  int dim(const Weight& mu) const {
    auto it = basis.find(mu);
    return it == basis.end() ? 0 : it->second.cols();
  }

  long total_dim() const {
    long t = 0;
    for (const auto& [w, b] : basis) t += b.cols();
    return t;
  }

  FormalCharacter character() const {
    FormalCharacter c;
    for (const auto& [w, b] : basis)
      if (b.cols() > 0) c[w] = b.cols();
    return c;
  }

  bool contains(const ModuleVec& v) const {
    auto it = basis.find(v.weight);
    if (it == basis.end()) {
      for (const auto& c : v.coords)
        if (!is_zero(c)) return false;
      return true;
    }
    return solve(it->second, v.coords).has_value();
  }
};

inline FormalCharacter character(const TruncatedModule& m) {
  FormalCharacter c;
  for (const auto& [w, d] : m.dims)
    if (d > 0) c[w] = d;
  return c;
}

inline FormalCharacter character(const ModPtr& m) { return character(*m); }

namespace detail {

/// All exponent vectors over the positive roots with the given simple-root
/// content, lexicographic order.
inline void monomials_rec(const std::vector<RootDatum::PosRoot>& pos, size_t k,
                          std::vector<long>& left, std::vector<int>& cur,
                          std::vector<std::vector<int>>& out) {
  if (k == pos.size()) {
    for (long t : left)
      if (t != 0) return;
    out.push_back(cur);
    return;
  }
  int e = 0;
  for (;;) {
    cur[k] = e;
    monomials_rec(pos, k + 1, left, cur, out);
    bool ok = true;
    for (size_t i = 0; i < left.size(); ++i) {
      left[i] -= pos[k].simple_coeffs[i];
      if (left[i] < 0) ok = false;
    }
    if (!ok) {
      for (size_t i = 0; i < left.size(); ++i)
        left[i] += pos[k].simple_coeffs[i];
      break;
    }
    ++e;
  }
  for (size_t i = 0; i < left.size(); ++i)
    left[i] += static_cast<long>(e) * pos[k].simple_coeffs[i];
  cur[k] = 0;
}

inline std::vector<std::vector<int>> root_monomials(const RootDatum& rd,
                                                    const RatVec& content) {
  std::vector<long> left;
  for (const auto& c : content) left.push_back(c.get_num().get_si());
  std::vector<int> cur(rd.positive_roots().size(), 0);
  std::vector<std::vector<int>> out;
  monomials_rec(rd.positive_roots(), 0, left, cur, out);
  return out;
}

inline std::string monomial_label(const LieAlgebra& lie,
                                  const std::vector<int>& expo) {
  std::string s;
  for (size_t k = 0; k < expo.size(); ++k) {
    if (!expo[k]) continue;
    s += lie.gen(lie.y_index(static_cast<int>(k))).name;
    if (expo[k] > 1) s += "^" + std::to_string(expo[k]);
    s += " ";
  }
  s += "v+";
  return s;
}

/// Window weights below top, with their positive-root content.
inline std::vector<std::pair<Weight, RatVec>> window_weights(const RootDatum& rd,
                                                             const Weight& top,
                                                             int depth) {
  std::vector<std::pair<Weight, RatVec>> out;
  if (rd.rank() == 1) {
    for (int p = 0; p <= depth; ++p) {
      RatVec rc = {Rat(p)};
      out.push_back({top - rd.from_root_coords(rc), rc});
    }
  } else {
    for (int h = 0; h <= depth; ++h)
      for (int p = 0; p <= h; ++p) {
        RatVec rc = {Rat(p), Rat(h - p)};
        out.push_back({top - rd.from_root_coords(rc), rc});
      }
  }
  return out;
}

}  // namespace detail

/// Truncated Verma module M(lambda) with PBW monomial basis.
inline ModPtr verma(AlgebraType type, const Weight& lambda, int depth,
                    std::optional<std::vector<bool>> act_levi = std::nullopt) {
  const auto& rd = root_datum(type);
  const auto& lie = lie_algebra(type);
  if (!lambda.is_integral()) throw SpecError("verma requires an integral weight");
  if (depth < 0) throw SpecError("negative depth");
  auto m = std::make_shared<TruncatedModule>();
  m->type = type;
  m->levi = act_levi.value_or(std::vector<bool>(rd.rank(), true));
  m->top = lambda;
  m->depth = depth;
  m->provenance = "verma " + lambda.str() + " depth " + std::to_string(depth);

  PbwEngine eng = PbwEngine::standard(lie);
  int npos = lie.num_pos_roots();
  std::map<Weight, std::vector<std::vector<int>>> basis;
  std::map<Weight, std::map<std::vector<int>, int>> index;
  for (const auto& [mu, rc] : detail::window_weights(rd, lambda, depth)) {
    auto mons = detail::root_monomials(rd, rc);
    m->dims[mu] = static_cast<int>(mons.size());
    for (size_t i = 0; i < mons.size(); ++i) {
      index[mu][mons[i]] = static_cast<int>(i);
      m->labels[mu].push_back(detail::monomial_label(lie, mons[i]));
    }
    basis[mu] = std::move(mons);
    Rat h(0);
    for (const auto& c : rc) h += c;
    if (!m->levi_empty() && h == depth) m->boundary.insert(mu);
  }

  auto to_pbw = [&](const std::vector<int>& expo) {
    PbwMonomial pm = eng.empty_monomial();
    for (int k = 0; k < npos; ++k) pm[eng.position_of(lie.y_index(k))] = expo[k];
    return pm;
  };

  std::vector<int> gens;
  for (int i = 0; i < rd.rank(); ++i) {
    if (m->levi[i]) gens.push_back(lie.y_index(i));
    gens.push_back(lie.x_index(i));
  }
  for (int g : gens) {
    Weight shift = lie.gen(g).weight;
    for (const auto& [mu, mons] : basis) {
      Weight target = mu + shift;
      if (!m->in_window(target)) continue;
      RatMatrix mat(m->dim(target), static_cast<int>(mons.size()));
      for (size_t col = 0; col < mons.size(); ++col) {
        const PbwElement& e = eng.left_mul_gen(g, to_pbw(mons[col]));
        for (const auto& [pm, coef] : e) {
          // evaluate on the highest weight: raising kills, Cartan scales
          Rat c = coef;
          std::vector<int> ye(npos, 0);
          bool dead = false;
          for (int p = 0; p < lie.dim(); ++p) {
            if (!pm[p]) continue;
            const auto& gen = lie.gen(eng.generator_at(p));
            if (gen.kind > 0) {
              dead = true;
              break;
            }
            if (gen.kind == 0) {
              Rat s = rd.pairing(lambda, gen.index);
              for (int t = 0; t < pm[p]; ++t) c *= s;
            } else {
              ye[gen.index] = pm[p];
            }
          }
          if (dead || is_zero(c)) continue;
          mat.set(index[target].at(ye), static_cast<int>(col),
                  mat.get(index[target].at(ye), static_cast<int>(col)) + c);
        }
      }
      m->act[g][mu] = std::move(mat);
    }
  }
  return m;
}

/// Joint kernel of all raising generators on M_lambda.
inline SubspaceBasis maximal_vectors(const TruncatedModule& m, const Weight& lambda) {
  int d = m.dim(lambda);
  const auto& lie = m.lie();
  std::vector<RatVec> rows;
  for (int i = 0; i < m.rd().rank(); ++i) {
    RatMatrix x = m.action(lie.x_index(i), lambda);
    auto dr = x.to_dense_rows();
    rows.insert(rows.end(), dr.begin(), dr.end());
  }
  if (rows.empty()) rows.push_back(RatVec(d, Rat(0)));
  RatMatrix stacked = RatMatrix::from_dense(rows);
  return SubspaceBasis(d, kernel(stacked));
}

inline SubspaceBasis maximal_vectors(const ModPtr& m, const Weight& lambda) {
  return maximal_vectors(*m, lambda);
}

/// Weights carrying maximal vectors, with multiplicities.
inline std::map<Weight, int> maximal_vector_weights(const TruncatedModule& m) {
  std::map<Weight, int> out;
  for (const auto& [mu, d] : m.dims) {
    int k = maximal_vectors(m, mu).dim();
    if (k > 0) out[mu] = k;
  }
  return out;
}

/// Gram matrix of the contravariant form on a Verma weight space,
/// computed by applying transposed lowering words through the stored
/// raising actions and reading the top coefficient.
inline RatMatrix shapovalov_gram_on(const TruncatedModule& verma_mod,
                                    const Weight& mu) {
  const auto& lie = verma_mod.lie();
  const auto& rd = verma_mod.rd();
  int d = verma_mod.dim(mu);
  RatVec content = rd.root_coords(verma_mod.top - mu);
  auto mons = detail::root_monomials(rd, content);
  if (static_cast<int>(mons.size()) != d)
    throw std::logic_error("gram expects the PBW Verma basis");
  PbwEngine eng = PbwEngine::standard(lie);
  // order of factors inside a basis monomial = ascending engine position
  std::vector<int> roots_by_pos;
  for (int p = 0; p < lie.dim(); ++p) {
    const auto& g = lie.gen(eng.generator_at(p));
    if (g.kind < 0) roots_by_pos.push_back(g.index);
  }
  RatMatrix gram(d, d);
  for (int row = 0; row < d; ++row) {
    int sign = 1;
    for (int k : roots_by_pos)
      if (rd.positive_roots()[k].height > 1 && mons[row][k] % 2) sign = -sign;
    for (int col = 0; col < d; ++col) {
      RatVec v(d, Rat(0));
      v[col] = 1;
      Weight w = mu;
      for (int k : roots_by_pos) {
        for (int t = 0; t < mons[row][k]; ++t) {
          v = verma_mod.action(lie.x_index(k), w).apply(v);
          w = w + rd.positive_roots()[k].weight;
        }
      }
      // v now lives in the 1-dimensional top space
      gram.set(row, col, v.empty() ? Rat(0) : v[0] * sign);
    }
  }
  return gram;
}

inline RatMatrix shapovalov_gram(AlgebraType type, const Weight& lambda,
                                 const Weight& nu, int depth) {
  const auto& rd = root_datum(type);
  Rat h = rd.height(nu);
  if (!is_integer(h) || h > depth) throw WindowError("nu exceeds depth");
  ModPtr m = verma(type, lambda, depth);
  return shapovalov_gram_on(*m, lambda - nu);
}

/// Saturate the span of the given vectors under the acting algebra.
inline Submodule submodule_generated(ModPtr m, const std::vector<ModuleVec>& gens) {
  std::map<Weight, IncrementalBasis> bases;
  std::vector<ModuleVec> work;
  auto push = [&](const ModuleVec& v) {
    bool nonzero = false;
    for (const auto& c : v.coords)
      if (!is_zero(c)) {
        nonzero = true;
        break;
      }
    if (!nonzero) return;
    auto it = bases.find(v.weight);
    if (it == bases.end())
      it = bases.emplace(v.weight, IncrementalBasis(m->dim(v.weight))).first;
    if (!it->second.add(v.coords)) work.push_back(v);
  };
  for (const auto& v : gens) push(v);
  auto acting = m->acting_generators();
  while (!work.empty()) {
    ModuleVec v = std::move(work.back());
    work.pop_back();
    for (int g : acting) {
      Weight target = v.weight + m->lie().gen(g).weight;
      if (!m->in_window(target) || m->dim(target) == 0) continue;
      push({target, m->action(g, v.weight).apply(v.coords)});
    }
  }
  Submodule s;
  s.parent = std::move(m);
  for (const auto& [w, ib] : bases)
    if (ib.dim() > 0)
      s.basis[w] = RatMatrix::from_columns(ib.ambient(), ib.vectors());
  return s;
}

/// Standalone module carried by a submodule, plus its inclusion map.
/// Throws if the basis is not action-closed.
inline std::pair<ModPtr, ModuleMap> materialize(const Submodule& s) {
  const TruncatedModule& p = *s.parent;
  auto m = std::make_shared<TruncatedModule>();
  m->type = p.type;
  m->levi = p.levi;
  m->top = p.top;
  m->depth = p.depth;
  m->provenance = "submodule of " + p.provenance;
  for (const auto& [w, b] : s.basis)
    if (b.cols() > 0) {
      m->dims[w] = b.cols();
      if (p.boundary.count(w)) m->boundary.insert(w);
      for (int i = 0; i < b.cols(); ++i)
        m->labels[w].push_back("s" + std::to_string(i));
    }
  for (int g : p.acting_generators()) {
    Weight shift = p.lie().gen(g).weight;
    for (const auto& [w, b] : s.basis) {
      Weight target = w + shift;
      if (!p.in_window(target)) continue;
      RatMatrix image = p.action(g, w) * b;
      auto bt = s.basis.find(target);
      RatMatrix tb = bt == s.basis.end() ? RatMatrix(p.dim(target), 0) : bt->second;
      auto sol = solve_matrix(tb, image);
      if (!sol) throw SpecError("submodule basis is not action-closed");
      if (m->dims.count(target) && m->dims.count(w)) m->act[g][w] = *sol;
    }
  }
  ModuleMap inc{m, s.parent, {}};
  for (const auto& [w, b] : s.basis)
    if (b.cols() > 0) inc.blocks[w] = b;
  return {m, inc};
}

/// Per-weight quotient spaces with induced actions; returns the quotient
/// and the projection map.
inline std::pair<ModPtr, ModuleMap> quotient(ModPtr mod, const Submodule& s) {
  const TruncatedModule& p = *mod;
  if (s.parent.get() != &p) throw SpecError("submodule belongs to another module");
  auto q = std::make_shared<TruncatedModule>();
  q->type = p.type;
  q->levi = p.levi;
  q->top = p.top;
  q->depth = p.depth;
  q->provenance = "quotient of " + p.provenance;
  // per weight: complement representatives and projection to them
  std::map<Weight, RatMatrix> proj, sect;
  for (const auto& [w, d] : p.dims) {
    auto it = s.basis.find(w);
    RatMatrix sb = it == s.basis.end() ? RatMatrix(d, 0) : it->second;
    IncrementalBasis ib(d);
    for (int j = 0; j < sb.cols(); ++j) ib.add(sb.column_vec(j));
    if (ib.dim() != sb.cols()) throw SpecError("submodule basis is degenerate");
    std::vector<int> reps;
    for (int i = 0; i < d && ib.dim() < d; ++i) {
      RatVec e(d, Rat(0));
      e[i] = 1;
      if (!ib.add(e)) reps.push_back(i);
    }
    int qd = static_cast<int>(reps.size());
    if (qd == 0) continue;
    RatMatrix full(d, d);
    for (int j = 0; j < sb.cols(); ++j) full.set_column(j, sb.column_vec(j));
    RatMatrix em(d, qd);
    for (int j = 0; j < qd; ++j) {
      full.set(reps[j], sb.cols() + j, Rat(1));
      em.set(reps[j], j, Rat(1));
    }
    auto inv = solve_matrix(full, RatMatrix::identity(d));
    if (!inv) throw std::logic_error("quotient basis not invertible");
    RatMatrix pr(qd, d);
    for (int i = 0; i < qd; ++i)
      for (int j = 0; j < d; ++j) pr.set(i, j, inv->get(sb.cols() + i, j));
    q->dims[w] = qd;
    if (p.boundary.count(w)) q->boundary.insert(w);
    for (int i = 0; i < qd; ++i) q->labels[w].push_back("q" + std::to_string(i));
    proj[w] = std::move(pr);
    sect[w] = std::move(em);
  }
  for (int g : p.acting_generators()) {
    Weight shift = p.lie().gen(g).weight;
    for (const auto& [w, qd] : q->dims) {
      Weight target = w + shift;
      if (!p.in_window(target)) continue;
      RatMatrix base = p.action(g, w);
      // closure of S under the action
      auto it = s.basis.find(w);
      if (it != s.basis.end() && it->second.cols() > 0 && p.dim(target) > 0) {
        auto tt = s.basis.find(target);
        RatMatrix tb =
            tt == s.basis.end() ? RatMatrix(p.dim(target), 0) : tt->second;
        if (!solve_matrix(tb, base * it->second))
          throw SpecError("submodule not closed under actions");
      }
      if (!q->dims.count(target)) continue;
      q->act[g][w] = proj.at(target) * (base * sect.at(w));
    }
  }
  ModuleMap pm{mod, q, {}};
  for (const auto& [w, pr] : proj) pm.blocks[w] = pr;
  return {q, pm};
}

/// M(lambda)/radical of the contravariant form.
inline ModPtr simple(AlgebraType type, const Weight& lambda, int depth) {
  ModPtr m = verma(type, lambda, depth);
  Submodule rad;
  rad.parent = m;
  for (const auto& [mu, d] : m->dims) {
    RatMatrix k = kernel(shapovalov_gram_on(*m, mu));
    if (k.cols() > 0) rad.basis[mu] = k;
  }
  auto [q, pr] = quotient(m, rad);
  auto out = std::const_pointer_cast<TruncatedModule>(q);
  out->provenance = "simple " + lambda.str() + " depth " + std::to_string(depth);
  return q;
}

/// Contravariant dual: per-weight transposes through tau. Only defined
/// over the full algebra, where tau preserves the acting generators.
inline ModPtr dual(ModPtr mod) {
  const TruncatedModule& p = *mod;
  if (!p.levi_full())
    throw SpecError("contravariant dual requires the full acting algebra");
  auto m = std::make_shared<TruncatedModule>();
  m->type = p.type;
  m->levi = p.levi;
  m->top = p.top;
  m->depth = p.depth;
  m->dims = p.dims;
  m->boundary = p.boundary;
  m->provenance = "dual of " + p.provenance;
  for (const auto& [w, ls] : p.labels)
    for (const auto& l : ls) m->labels[w].push_back("(" + l + ")*");
  const auto& lie = p.lie();
  for (int i = 0; i < p.rd().rank(); ++i) {
    Weight alpha = p.rd().simple_roots()[i];
    for (const auto& [w, d] : p.dims) {
      // x_i on the dual at w is the transpose of y_i : M_{w+a} -> M_w
      Weight up = w + alpha;
      if (p.in_window(up) && p.dim(up) > 0)
        m->act[lie.x_index(i)][w] = p.action(lie.y_index(i), up).transpose();
      Weight down = w - alpha;
      if (p.in_window(down) && p.dim(down) > 0)
        m->act[lie.y_index(i)][w] = p.action(lie.x_index(i), down).transpose();
    }
  }
  return m;
}

/// Forget lowering actions outside I.
inline ModPtr restrict_to(ModPtr mod, const std::vector<bool>& I) {
  const TruncatedModule& p = *mod;
  for (size_t i = 0; i < I.size(); ++i)
    if (I[i] && !p.levi[i]) throw SpecError("restriction may only forget actions");
  auto m = std::make_shared<TruncatedModule>(p);
  m->levi = I;
  m->provenance = "restriction of " + p.provenance;
  for (int i = 0; i < p.rd().rank(); ++i)
    if (!I[i]) m->act.erase(p.lie().y_index(i));
  if (m->levi_empty()) m->boundary.clear();
  return m;
}

/// Finite-dimensional simple of the Levi subalgebra of p_I, inflated to a
/// p_I-module (nilradical acting by zero).
inline ModPtr levi_simple(AlgebraType type, const Weight& lambda,
                          const std::vector<bool>& I) {
  const auto& rd = root_datum(type);
  const auto& lie = lie_algebra(type);
  int k = 0;
  for (int i = 0; i < rd.rank(); ++i)
    if (I[i]) {
      Rat c = rd.pairing(lambda, i);
      if (!is_integer(c) || sgn(c) < 0)
        throw SpecError("weight not dominant integral for the Levi");
      ++k;
    }
  if (k == rd.rank()) {
    // full Levi: the finite-dimensional simple itself
    Weight w0l = rd.longest_element().apply(lambda);
    Rat h = rd.height(lambda - w0l);
    return simple(type, lambda, static_cast<int>(h.get_num().get_si()));
  }
  auto m = std::make_shared<TruncatedModule>();
  m->type = type;
  m->levi = I;
  m->top = lambda;
  m->provenance = "levi simple " + lambda.str();
  if (k == 0) {
    m->depth = 0;
    m->dims[lambda] = 1;
    m->labels[lambda].push_back("v");
    return m;
  }
  // single sl2 chain
  int i = 0;
  while (!I[i]) ++i;
  long n = rd.pairing(lambda, i).get_num().get_si();
  m->depth = static_cast<int>(n);
  Weight alpha = rd.simple_roots()[i];
  for (long s = 0; s <= n; ++s) {
    Weight w = lambda - alpha * Rat(s);
    m->dims[w] = 1;
    m->labels[w].push_back("v" + std::to_string(s));
    if (s < n) {
      RatMatrix y(1, 1);
      y.set(0, 0, Rat(1));
      m->act[lie.y_index(i)][w] = std::move(y);
    }
    if (s > 0) {
      RatMatrix x(1, 1);
      x.set(0, 0, Rat(s) * Rat(n - s + 1));
      m->act[lie.x_index(i)][w] = std::move(x);
    }
  }
  return m;
}

/// Parabolic induction Ind_p^g V with PBW basis {out-of-Levi lowering
/// monomials} x {basis of V}; straightening tails evaluate inside V.
inline ModPtr induce(ModPtr vmod, int depth) {
  const TruncatedModule& V = *vmod;
  const auto& rd = V.rd();
  const auto& lie = V.lie();
  int npos = lie.num_pos_roots();
  std::vector<bool> out_root(npos, false);
  std::vector<int> out_roots;
  for (int k = 0; k < npos; ++k) {
    const auto& sc = rd.positive_roots()[k].simple_coeffs;
    for (int i = 0; i < rd.rank(); ++i)
      if (sc[i] > 0 && !V.levi[i]) out_root[k] = true;
    if (out_root[k]) out_roots.push_back(k);
  }
  if (out_roots.empty()) throw SpecError("induction from the full algebra");
  PbwEngine eng(lie, PbwEngine::lowering_first_order(lie, out_root.empty()
                                                              ? std::vector<bool>{}
                                                              : out_root));
  int n_out = static_cast<int>(out_roots.size());

  auto m = std::make_shared<TruncatedModule>();
  m->type = V.type;
  m->levi = std::vector<bool>(rd.rank(), true);
  m->top = V.top;
  m->depth = depth;
  m->provenance = "induced from " + V.provenance;

  // out-monomials by height
  std::vector<std::vector<int>> outmons;  // exponents indexed by out position
  {
    // enumerate all B with sum of heights <= depth, lexicographic
    std::vector<int> cur(n_out, 0);
    std::function<void(int, int)> rec = [&](int pos, int hleft) {
      if (pos == n_out) {
        outmons.push_back(cur);
        return;
      }
      int h = rd.positive_roots()[out_roots[pos]].height;
      for (int e = 0; e * h <= hleft; ++e) {
        cur[pos] = e;
        rec(pos + 1, hleft - e * h);
      }
      cur[pos] = 0;
    };
    rec(0, depth);
  }

  struct Key {
    std::vector<int> B;
    Weight vw;
    int idx;
    bool operator<(const Key& o) const {
      if (B != o.B) return B < o.B;
      if (vw != o.vw) return vw < o.vw;
      return idx < o.idx;
    }
  };
  std::map<Weight, std::vector<Key>> basis;
  std::map<Weight, std::map<Key, int>> index;
  for (const auto& B : outmons) {
    Weight shift = rd.zero_weight();
    for (int p = 0; p < n_out; ++p)
      shift = shift + rd.positive_roots()[out_roots[p]].weight * Rat(B[p]);
    for (const auto& [vw, vd] : V.dims) {
      Weight mu = vw - shift;
      if (!m->in_window(mu)) continue;
      for (int i = 0; i < vd; ++i) basis[mu].push_back({B, vw, i});
    }
  }
  for (auto& [mu, keys] : basis) {
    std::sort(keys.begin(), keys.end());
    m->dims[mu] = static_cast<int>(keys.size());
    for (size_t i = 0; i < keys.size(); ++i) {
      index[mu][keys[i]] = static_cast<int>(i);
      std::string lbl;
      for (int p = 0; p < n_out; ++p) {
        if (!keys[i].B[p]) continue;
        lbl += lie.gen(lie.y_index(out_roots[p])).name;
        if (keys[i].B[p] > 1) lbl += "^" + std::to_string(keys[i].B[p]);
        lbl += " ";
      }
      lbl += "(" + keys[i].vw.str() + ":" + std::to_string(keys[i].idx) + ")";
      m->labels[mu].push_back(lbl);
    }
    Rat h = rd.height(m->top - mu);
    if (h == depth) m->boundary.insert(mu);
  }

  auto to_pbw = [&](const std::vector<int>& B) {
    PbwMonomial pm = eng.empty_monomial();
    for (int p = 0; p < n_out; ++p)
      pm[eng.position_of(lie.y_index(out_roots[p]))] = B[p];
    return pm;
  };
  // positions occupied by out lowerings come first in the order
  std::vector<int> out_pos_of_root(npos, -1);
  for (int p = 0; p < n_out; ++p)
    out_pos_of_root[out_roots[p]] = eng.position_of(lie.y_index(out_roots[p]));

  std::vector<int> gens;
  for (int i = 0; i < rd.rank(); ++i) {
    gens.push_back(lie.y_index(i));
    gens.push_back(lie.x_index(i));
  }
  for (int g : gens) {
    Weight shift = lie.gen(g).weight;
    for (const auto& [mu, keys] : basis) {
      Weight target = mu + shift;
      if (!m->in_window(target)) continue;
      RatMatrix mat(m->dim(target), static_cast<int>(keys.size()));
      for (size_t col = 0; col < keys.size(); ++col) {
        const Key& key = keys[col];
        const PbwElement& e = eng.left_mul_gen(g, to_pbw(key.B));
        for (const auto& [pm, coef] : e) {
          // split into out-lowering head and a tail evaluated inside V
          std::vector<int> B2(n_out, 0);
          for (int p = 0; p < n_out; ++p) B2[p] = pm[eng.position_of(
              lie.y_index(out_roots[p]))];
          // evaluate tail right-to-left on the V basis vector
          Weight vw = key.vw;
          RatVec vec(V.dim(vw), Rat(0));
          vec[key.idx] = 1;
          Rat scale = coef;
          bool dead = false;
          for (int p = lie.dim() - 1; p >= 0 && !dead; --p) {
            int gp = eng.generator_at(p);
            const auto& gen = lie.gen(gp);
            if (gen.kind < 0 && out_root[gen.index]) continue;  // head part
            for (int t = 0; t < pm[p]; ++t) {
              if (gen.kind == 0) {
                scale *= rd.pairing(vw, gen.index);
                if (is_zero(scale)) { dead = true; break; }
                continue;
              }
              Weight nvw = vw + gen.weight;
              if (!V.in_window(nvw) || V.dim(nvw) == 0) {
                dead = true;
                break;
              }
              vec = V.action(gp, vw).apply(vec);
              vw = nvw;
              bool allzero = true;
              for (const auto& c : vec)
                if (!is_zero(c)) { allzero = false; break; }
              if (allzero) { dead = true; break; }
            }
          }
          if (dead || is_zero(scale)) continue;
          for (int i = 0; i < static_cast<int>(vec.size()); ++i) {
            if (is_zero(vec[i])) continue;
            auto it = index[target].find({B2, vw, i});
            if (it == index[target].end())
              throw std::logic_error("induced basis index out of window");
            mat.set(it->second, static_cast<int>(col),
                    mat.get(it->second, static_cast<int>(col)) + scale * vec[i]);
          }
        }
      }
      m->act[g][mu] = std::move(mat);
    }
  }
  return m;
}

/// M_p(lambda) = Ind_p^g L_I(lambda).
inline ModPtr generalized_verma(AlgebraType type, const Weight& lambda,
                                const std::vector<bool>& I, int depth) {
  bool full = true;
  for (bool b : I) full = full && b;
  if (full) return simple(type, lambda, depth);
  ModPtr L = levi_simple(type, lambda, I);
  auto m = induce(L, depth);
  auto out = std::const_pointer_cast<TruncatedModule>(m);
  out->provenance = "generalized verma " + lambda.str();
  return m;
}

/// Defining-relation checks on interior weights; returns false on the
/// first violated identity.
inline bool check_relations(const TruncatedModule& m) {
  const auto& lie = m.lie();
  const auto& rd = m.rd();
  for (const auto& [mu, d] : m.dims) {
    if (!m.interior(mu) && !m.levi_empty()) continue;
    for (int i = 0; i < rd.rank(); ++i) {
      for (int j = 0; j < rd.rank(); ++j) {
        if (!m.levi[j]) continue;
        Weight aj = rd.simple_roots()[j], ai = rd.simple_roots()[i];
        RatMatrix xy = m.action(lie.x_index(i), mu - aj) * m.action(lie.y_index(j), mu);
        RatMatrix yx = m.action(lie.y_index(j), mu + ai) * m.action(lie.x_index(i), mu);
        RatMatrix comm = xy - yx;
        if (i == j) comm = comm - RatMatrix::identity(d) * rd.pairing(mu, i);
        if (!comm.is_zero_matrix()) return false;
      }
    }
    if (rd.rank() == 2) {
      // Serre: ad(x_a)^2 x_b = 0, via the composite generator
      for (int i = 0; i < 2; ++i) {
        Weight ai = rd.simple_roots()[i];
        Weight ab = rd.positive_roots()[2].weight;
        RatMatrix l = m.action(lie.x_index(i), mu + ab) * m.action(lie.x_index(2), mu);
        RatMatrix r = m.action(lie.x_index(2), mu + ai) * m.action(lie.x_index(i), mu);
        if (!(l - r).is_zero_matrix()) return false;
      }
    }
  }
  return true;
}

inline bool check_relations(const ModPtr& m) { return check_relations(*m); }

/// Explicit monomial family spanning the canonical b-submodule below
/// the lowering power of one simple root; which = 0 for the alpha family,
/// 1 for beta. Verified closed under the Borel action.
inline Submodule m_alpha_basis(const Weight& lambda, int which, int depth) {
  AlgebraType type = AlgebraType::A2;
  const auto& rd = root_datum(type);
  const auto& lie = lie_algebra(type);
  if (!rd.dominant_integral(lambda)) throw SpecError("weight must be dominant integral");
  long n = rd.pairing(lambda + rd.rho(), 0).get_num().get_si();
  long m_ = rd.pairing(lambda + rd.rho(), 1).get_num().get_si();
  long low_min = which == 0 ? n : m_;   // minimum power of the main lowering
  long comp_max = which == 0 ? m_ : n;  // strict bound on the composite power
  int main_root = which, other_root = 1 - which;
  ModPtr base = restrict_to(verma(type, lambda, depth), {false, false});
  PbwEngine eng = PbwEngine::standard(lie);
  // index lookup into the Verma PBW basis
  std::map<Weight, std::map<std::vector<int>, int>> index;
  for (const auto& [mu, dd] : base->dims) {
    auto mons = detail::root_monomials(rd, rd.root_coords(lambda - mu));
    for (size_t i = 0; i < mons.size(); ++i) index[mu][mons[i]] = static_cast<int>(i);
  }
  std::map<Weight, IncrementalBasis> bases;
  for (long l = 0; l < comp_max; ++l)
    for (long p = 0; 2 * l + p + low_min <= depth; ++p) {
      // word y_ab^l y_other^p y_main^K, total height l*2 + p + K
      for (long K = low_min; 2 * l + p + K <= depth; ++K) {
        std::vector<int> word;
        for (long t = 0; t < l; ++t) word.push_back(lie.y_index(2));
        for (long t = 0; t < p; ++t) word.push_back(lie.y_index(other_root));
        for (long t = 0; t < K; ++t) word.push_back(lie.y_index(main_root));
        PbwElement e = eng.word(word);
        Weight mu = lambda + eng.monomial_weight(e.begin()->first);
        RatVec v(base->dim(mu), Rat(0));
        for (const auto& [pm, c] : e) {
          std::vector<int> expo(lie.num_pos_roots(), 0);
          for (int k = 0; k < lie.num_pos_roots(); ++k)
            expo[k] = pm[eng.position_of(lie.y_index(k))];
          v[index[mu].at(expo)] += c;
        }
        auto it = bases.find(mu);
        if (it == bases.end())
          it = bases.emplace(mu, IncrementalBasis(base->dim(mu))).first;
        it->second.add(v);
      }
    }
  Submodule s;
  s.parent = base;
  for (const auto& [w, ib] : bases)
    if (ib.dim() > 0)
      s.basis[w] = RatMatrix::from_columns(ib.ambient(), ib.vectors());
  // closure under the Borel action
  for (const auto& [w, b] : s.basis)
    for (int i = 0; i < rd.rank(); ++i) {
      Weight target = w + rd.simple_roots()[i];
      if (!base->in_window(target)) continue;
      RatMatrix image = base->action(lie.x_index(i), w) * b;
      auto it = s.basis.find(target);
      RatMatrix tb = it == s.basis.end() ? RatMatrix(base->dim(target), 0) : it->second;
      if (!solve_matrix(tb, image))
        throw std::logic_error("monomial family not closed under raising");
    }
  return s;
}

}  // namespace okit
