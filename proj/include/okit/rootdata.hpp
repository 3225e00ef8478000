#pragma once

#include <compare>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "okit/matrix.hpp"
#include "okit/rational.hpp"

namespace okit {

enum class AlgebraType { A1, A2 };

inline std::string to_string(AlgebraType t) {
  return t == AlgebraType::A1 ? "A1" : "A2";
}

/// Weight in fundamental-weight coordinates. Integral weights have
/// integer coordinates by construction.
struct Weight {
  RatVec fund;

  Weight() = default;
  explicit Weight(RatVec coords) : fund(std::move(coords)) {}

  int rank() const { return static_cast<int>(fund.size()); }

  bool is_integral() const {
    for (const auto& c : fund)
      if (!is_integer(c)) return false;
    return true;
  }

  Weight operator+(const Weight& o) const {
    Weight w(fund);
    for (int i = 0; i < rank(); ++i) w.fund[i] += o.fund[i];
    return w;
  }
  Weight operator-(const Weight& o) const {
    Weight w(fund);
    for (int i = 0; i < rank(); ++i) w.fund[i] -= o.fund[i];
    return w;
  }
  Weight operator*(const Rat& s) const {
    Weight w(fund);
    for (auto& c : w.fund) c *= s;
    return w;
  }
  Weight operator-() const { return *this * Rat(-1); }

  bool operator==(const Weight& o) const { return fund == o.fund; }
  bool operator!=(const Weight& o) const { return fund != o.fund; }
  bool operator<(const Weight& o) const {  // lexicographic, for map keys
    for (int i = 0; i < rank(); ++i) {
      if (fund[i] < o.fund[i]) return true;
      if (fund[i] > o.fund[i]) return false;
    }
    return false;
  }

  std::string str() const {
    std::string s = "[";
    for (int i = 0; i < rank(); ++i) {
      if (i) s += ",";
      s += to_string(fund[i]);
    }
    return s + "]";
  }
};

/// Weyl group element: reduced word over simple reflections plus its
/// linear action on fundamental coordinates.
struct WeylElt {
  std::vector<int> word;  // reduced
  RatMatrix action;       // rank x rank, on fundamental coords

  int length() const { return static_cast<int>(word.size()); }

  Weight apply(const Weight& w) const { return Weight(action.apply(w.fund)); }
};

/// Cartan/root/Weyl data for types A1 and A2.
class RootDatum {
 public:
  explicit RootDatum(AlgebraType type) : type_(type) {
    if (type == AlgebraType::A1) {
      rank_ = 1;
      cartan_ = {{2}};
    } else {
      rank_ = 2;
      cartan_ = {{2, -1}, {-1, 2}};
    }
    // Simple root j in fundamental coords is column j of the Cartan matrix.
    for (int j = 0; j < rank_; ++j) {
      RatVec c(rank_);
      for (int i = 0; i < rank_; ++i) c[i] = cartan_[i][j];
      simple_roots_.push_back(Weight(std::move(c)));
    }
    inv_cartan_ = invert_cartan();
    build_positive_roots();
    rho_ = Weight(RatVec(rank_, Rat(1)));
    build_weyl_group();
  }

  AlgebraType type() const { return type_; }
  int rank() const { return rank_; }
  const std::vector<std::vector<int>>& cartan_matrix() const { return cartan_; }
  const std::vector<Weight>& simple_roots() const { return simple_roots_; }
  const Weight& rho() const { return rho_; }
  const std::vector<WeylElt>& weyl_group() const { return weyl_group_; }
  const WeylElt& longest_element() const { return weyl_group_[longest_]; }
  const WeylElt& identity_element() const { return weyl_group_[0]; }
  const WeylElt& simple_reflection(int i) const { return weyl_group_[simple_idx_[i]]; }

  /// Positive roots, with their expression over the simple roots.
  struct PosRoot {
    std::vector<int> simple_coeffs;
    Weight weight;
    int height;
  };
  const std::vector<PosRoot>& positive_roots() const { return positive_roots_; }

  Weight zero_weight() const { return Weight(RatVec(rank_, Rat(0))); }

  Weight fundamental_weight(int i) const {
    RatVec c(rank_, Rat(0));
    c[i] = 1;
    return Weight(std::move(c));
  }

  /// <lambda, alpha_i^vee> is just the i-th fundamental coordinate.
  Rat pairing(const Weight& w, int i) const { return w.fund[i]; }

  /// Coordinates of w over the simple roots (rational in general).
  RatVec root_coords(const Weight& w) const { return inv_cartan_.apply(w.fund); }

  Weight from_root_coords(const RatVec& rc) const {
    Weight w = zero_weight();
    for (int i = 0; i < rank_; ++i) w = w + simple_roots_[i] * rc[i];
    return w;
  }

  /// Height of w as a root-lattice element; requires integer root coords.
  Rat height(const Weight& w) const {
    RatVec rc = root_coords(w);
    Rat h(0);
    for (const auto& c : rc) h += c;
    return h;
  }

  /// mu <= lambda in the standard order: lambda - mu is a nonnegative
  /// integer combination of simple roots.
  bool leq(const Weight& mu, const Weight& lambda) const {
    RatVec rc = root_coords(lambda - mu);
    for (const auto& c : rc)
      if (!is_integer(c) || sgn(c) < 0) return false;
    return true;
  }

  /// Dot action: w . lambda = w(lambda + rho) - rho.
  Weight dot_action(const WeylElt& w, const Weight& lambda) const {
    return w.apply(lambda + rho_) - rho_;
  }

  /// The dot orbit W . lambda, without duplicates; lambda must be integral.
  std::vector<Weight> linkage_class(const Weight& lambda) const {
    if (!lambda.is_integral())
      throw std::invalid_argument("linkage_class requires an integral weight");
    std::set<Weight> seen;
    std::vector<Weight> out;
    for (const auto& w : weyl_group_) {
      Weight m = dot_action(w, lambda);
      if (seen.insert(m).second) out.push_back(m);
    }
    return out;
  }

  /// Dominant-most member of the dot orbit: the unique mu with mu + rho
  /// dominant; ties (singular orbits) resolved by the orbit being smaller.
  Weight dominant_representative(const Weight& lambda) const {
    Weight best = lambda;
    bool found = false;
    for (const auto& m : linkage_class(lambda)) {
      bool dom = true;
      for (int i = 0; i < rank_; ++i)
        if (sgn((m + rho_).fund[i]) < 0) dom = false;
      if (dom && (!found || best < m)) {
        best = m;
        found = true;
      }
    }
    return best;
  }

  /// Kostant partition function: multisets of positive roots summing to nu.
  long kostant_partition(const Weight& nu) const {
    RatVec rc = root_coords(nu);
    for (const auto& c : rc)
      if (!is_integer(c) || sgn(c) < 0) return 0;
    std::vector<long> target;
    for (const auto& c : rc) target.push_back(c.get_num().get_si());
    return kostant_rec(target, 0);
  }

  bool dominant_integral(const Weight& w) const {
    if (!w.is_integral()) return false;
    for (int i = 0; i < rank_; ++i)
      if (sgn(w.fund[i]) < 0) return false;
    return true;
  }

 private:
  RatMatrix invert_cartan() {
    RatMatrix c(rank_, rank_);
    for (int i = 0; i < rank_; ++i)
      for (int j = 0; j < rank_; ++j) c.set(i, j, Rat(cartan_[i][j]));
    auto inv = solve_matrix(c, RatMatrix::identity(rank_));
    return *inv;
  }

  void build_positive_roots() {
    if (type_ == AlgebraType::A1) {
      positive_roots_.push_back({{1}, simple_roots_[0], 1});
    } else {
      positive_roots_.push_back({{1, 0}, simple_roots_[0], 1});
      positive_roots_.push_back({{0, 1}, simple_roots_[1], 1});
      positive_roots_.push_back({{1, 1}, simple_roots_[0] + simple_roots_[1], 2});
    }
  }

  void build_weyl_group() {
    std::vector<RatMatrix> refl;
    for (int i = 0; i < rank_; ++i) {
      // s_i = I - alpha_i e_i^T on fundamental coordinates.
      RatMatrix s = RatMatrix::identity(rank_);
      for (int k = 0; k < rank_; ++k)
        s.set(k, i, s.get(k, i) - simple_roots_[i].fund[k]);
      refl.push_back(std::move(s));
    }
    std::map<std::vector<RatVec>, int> seen;
    auto key = [&](const RatMatrix& m) {
      std::vector<RatVec> k;
      for (int j = 0; j < rank_; ++j) k.push_back(m.column_vec(j));
      return k;
    };
    weyl_group_.push_back({{}, RatMatrix::identity(rank_)});
    seen[key(weyl_group_[0].action)] = 0;
    simple_idx_.assign(rank_, -1);
    for (size_t head = 0; head < weyl_group_.size(); ++head) {
      for (int i = 0; i < rank_; ++i) {
        WeylElt cur = weyl_group_[head];  // copy: vector may reallocate
        RatMatrix m = refl[i] * cur.action;
        auto k = key(m);
        if (seen.count(k)) continue;
        WeylElt e;
        e.word = cur.word;
        e.word.insert(e.word.begin(), i);
        e.action = std::move(m);
        seen[k] = static_cast<int>(weyl_group_.size());
        weyl_group_.push_back(std::move(e));
      }
    }
    longest_ = 0;
    for (size_t i = 0; i < weyl_group_.size(); ++i) {
      if (weyl_group_[i].length() > weyl_group_[longest_].length())
        longest_ = static_cast<int>(i);
      if (weyl_group_[i].length() == 1) simple_idx_[weyl_group_[i].word[0]] = static_cast<int>(i);
    }
  }

  long kostant_rec(std::vector<long> target, size_t root_idx) const {
    if (root_idx == positive_roots_.size()) {
      for (long t : target)
        if (t != 0) return 0;
      return 1;
    }
    const auto& r = positive_roots_[root_idx].simple_coeffs;
    long count = 0;
    for (;;) {
      count += kostant_rec(target, root_idx + 1);
      bool ok = true;
      for (size_t i = 0; i < target.size(); ++i) {
        target[i] -= r[i];
        if (target[i] < 0) ok = false;
      }
      if (!ok) break;
    }
    return count;
  }

  AlgebraType type_;
  int rank_;
  std::vector<std::vector<int>> cartan_;
  RatMatrix inv_cartan_;
  std::vector<Weight> simple_roots_;
  std::vector<PosRoot> positive_roots_;
  Weight rho_;
  std::vector<WeylElt> weyl_group_;
  std::vector<int> simple_idx_;
  int longest_ = 0;
};

/// Shared, immutable root data per type.
inline const RootDatum& root_datum(AlgebraType t) {
  static const RootDatum a1(AlgebraType::A1);
  static const RootDatum a2(AlgebraType::A2);
  return t == AlgebraType::A1 ? a1 : a2;
}

inline const RootDatum& build_root_datum(AlgebraType t) { return root_datum(t); }

}  // namespace okit
