#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "linkhom/field.hpp"
#include "linkhom/frobenius.hpp"
#include "linkhom/resolution.hpp"

namespace linkhom {

// Enhanced state: resolution bits plus labels (bit j set = X on circle j).
struct State {
  std::uint32_t resolution = 0;
  std::uint32_t labels = 0;
  friend auto operator<=>(const State&, const State&) = default;
};

template <class F>
struct DiffEntry {
  int row;
  F coef;
  int upow;  // power of U (BN only)
};

template <class F>
using SparseVec = std::vector<std::pair<int, F>>;

inline constexpr int default_crossing_cap = 16;
inline constexpr int default_verify_limit = 12;

struct BuildOptions {
  int crossing_cap = default_crossing_cap;
  int verify_up_to = default_verify_limit;  // d^2 = 0 checked at build time up to this size
  std::optional<std::pair<int, int>> degrees;  // build only groups lo..hi and maps between them
};

// Per-resolution circle data shared by every theory.
class Cube {
 public:
  explicit Cube(const OrientedDiagram& d, int cap = default_crossing_cap) : d_(d) {
    d.ensure_valid();
    n_ = d.crossing_count();
    require(n_ <= cap, ErrorCode::cap_exceeded,
            "diagram has " + std::to_string(n_) + " crossings, above the cap of " + std::to_string(cap));
    require(n_ <= 24, ErrorCode::cap_exceeded, "cube too large");
    circles_.resize(std::size_t{1} << n_);
  }

  const OrientedDiagram& diagram() const { return d_; }
  int size() const { return n_; }
  std::uint32_t vertex_count() const { return std::uint32_t{1} << n_; }

  const CircleSet& circles(std::uint32_t r) const {
    auto& slot = circles_[r];
    if (!slot) slot = resolve_bits(d_, r);
    return *slot;
  }
  int degree(std::uint32_t r) const { return std::popcount(r) - d_.n_minus(); }
  int qdeg(State s) const {
    int k = circles(s.resolution).count;
    return k - 2 * std::popcount(s.labels) + d_.n_plus() - 2 * d_.n_minus() + std::popcount(s.resolution);
  }

  // Image of each circle of r in r|c (the two circles at c map to the same circle on a merge).
  std::vector<int> circle_map(std::uint32_t r, int c) const {
    const auto& from = circles(r);
    const auto& to = circles(r | (1u << c));
    std::vector<int> map(from.count, -1);
    for (std::size_t a = 0; a < from.arc_circle.size(); ++a) map[from.arc_circle[a]] = to.arc_circle[a];
    int free = d_.free_loops();
    for (int j = 0; j < free; ++j) map[from.count - free + j] = to.count - free + j;
    return map;
  }

  static int edge_sign(std::uint32_t r, int c) {
    return std::popcount(r & ((1u << c) - 1)) % 2 ? -1 : 1;
  }

  struct Edge {
    int crossing;
    int sign;
    std::uint32_t target;
    bool merge;
    int a, b;              // circles of r at the crossing
    int t1, t2;            // circles of the target at the crossing (t1 == t2 on a merge)
    std::vector<int> map;  // circle of r -> circle of target
  };

  // Outgoing cube edges of resolution r, by increasing crossing.
  std::vector<Edge> edges(std::uint32_t r) const {
    std::vector<Edge> out;
    const auto& cs = circles(r);
    for (int c = 0; c < n_; ++c) {
      if ((r >> c) & 1) continue;
      std::uint32_t t = r | (1u << c);
      const auto& ct = circles(t);
      out.push_back({c, edge_sign(r, c), t, cs.joined(c), cs.touch[c][0], cs.touch[c][1], ct.touch[c][0],
                     ct.touch[c][1], circle_map(r, c)});
    }
    return out;
  }

 private:
  OrientedDiagram d_;
  int n_ = 0;
  mutable std::vector<std::optional<CircleSet>> circles_;
};

// Local merge/split rules read off a Frobenius table.
template <class F>
struct CubeRules {
  struct Term {
    int a, b;  // output labels (b unused for merges)
    F coef;
    int upow;
  };
  std::array<std::vector<Term>, 4> merge;  // index (la << 1) | lb
  std::array<std::vector<Term>, 2> split;  // index la

  explicit CubeRules(const FrobeniusSpec<F>& spec) {
    auto terms = [](const PolyU<F>& p, int a, int b, std::vector<Term>& out) {
      for (int e = 0; e <= p.degree(); ++e)
        if (!p.coeff(e).is_zero()) out.push_back({a, b, p.coeff(e), e});
    };
    for (int la = 0; la < 2; ++la) {
      for (int lb = 0; lb < 2; ++lb) {
        auto m = spec.multiply(FrobeniusSpec<F>::basis(la), FrobeniusSpec<F>::basis(lb));
        for (int o = 0; o < 2; ++o) terms(m[o], o, 0, merge[(la << 1) | lb]);
      }
      auto t = spec.comultiply(FrobeniusSpec<F>::basis(la));
      for (int i = 0; i < 4; ++i) terms(t.c[i], i >> 1, i & 1, split[la]);
    }
  }
};

// Calls fn(target labels, coefficient, U power) for each term of the edge map on one state.
template <class F, class Fn>
void for_each_term(const CubeRules<F>& rules, const Cube::Edge& e, std::uint32_t labels, Fn&& fn) {
  std::uint32_t rest = 0;
  for (std::size_t x = 0; x < e.map.size(); ++x)
    if (static_cast<int>(x) != e.a && static_cast<int>(x) != e.b && ((labels >> x) & 1)) rest |= 1u << e.map[x];
  int la = (labels >> e.a) & 1;
  if (e.merge) {
    int lb = (labels >> e.b) & 1;
    for (auto& term : rules.merge[(la << 1) | lb])
      fn(rest | (static_cast<std::uint32_t>(term.a) << e.t1), e.sign > 0 ? term.coef : -term.coef, term.upow);
  } else {
    for (auto& term : rules.split[la])
      fn(rest | (static_cast<std::uint32_t>(term.a) << e.t1) | (static_cast<std::uint32_t>(term.b) << e.t2),
         e.sign > 0 ? term.coef : -term.coef, term.upow);
  }
}

template <class F>
class ChainComplex {
 public:
  struct Group {
    std::vector<State> states;
    std::vector<int> qdeg;
    int size() const { return static_cast<int>(states.size()); }
  };
  // Columns of d^i: d(state j of degree i) in degree i+1.
  struct Differential {
    std::vector<int> start{0};
    std::vector<DiffEntry<F>> entries;
    int rows = 0, cols = 0;
  };

  ChainComplex(const OrientedDiagram& d, Theory theory, const BuildOptions& opt = {})
      : cube_(std::make_shared<Cube>(d, opt.crossing_cap)), theory_(theory) {
    const auto& dg = cube_->diagram();
    lo_ = -dg.n_minus();
    hi_ = dg.n_plus();
    if (opt.degrees) {
      lo_ = std::max(lo_, opt.degrees->first);
      hi_ = std::min(hi_, opt.degrees->second);
    }
    build_bases();
    build_differentials(FrobeniusSpec<F>(theory));
    if (cube_->size() <= opt.verify_up_to) {
      auto w = d_squared_witness();
      require(!w.has_value(), ErrorCode::internal, "d^2 != 0 at build time: " + w.value_or(""));
    }
  }

  Theory theory() const { return theory_; }
  const Cube& cube() const { return *cube_; }
  const OrientedDiagram& diagram() const { return cube_->diagram(); }
  int min_degree() const { return lo_; }
  int max_degree() const { return hi_; }
  bool has_degree(int i) const { return i >= lo_ && i <= hi_; }

  const Group& group(int i) const {
    static const Group empty;
    return has_degree(i) ? groups_[i - lo_] : empty;
  }
  // d^i : C^i -> C^{i+1}; empty when i+1 is outside the built range.
  const Differential& differential(int i) const {
    static const Differential empty;
    return has_degree(i) && has_degree(i + 1) ? diffs_[i - lo_] : empty;
  }
  std::pair<const DiffEntry<F>*, const DiffEntry<F>*> column(int i, int j) const {
    const auto& df = differential(i);
    return {df.entries.data() + df.start[j], df.entries.data() + df.start[j + 1]};
  }

  int degree_of(State s) const { return cube_->degree(s.resolution); }
  std::optional<int> index_of(State s) const {
    if (!has_degree(degree_of(s))) return std::nullopt;
    int off = res_offset_[s.resolution];
    if (s.labels >= (1u << cube_->circles(s.resolution).count)) return std::nullopt;
    return off + static_cast<int>(s.labels);
  }

  SparseVec<F> apply(int i, const SparseVec<F>& v) const {
    std::map<int, F> acc;
    for (auto& [j, a] : v) {
      auto [b, e] = column(i, j);
      for (auto p = b; p != e; ++p) acc[p->row] += a * p->coef;
    }
    SparseVec<F> out;
    for (auto& [r, a] : acc)
      if (!a.is_zero()) out.push_back({r, a});
    return out;
  }

  // First violation of d∘d = 0, if any.
  std::optional<std::string> d_squared_witness() const {
    for (int i = lo_; i + 2 <= hi_; ++i) {
      const auto& g = group(i);
      for (int j = 0; j < g.size(); ++j) {
        std::unordered_map<long long, F> acc;
        auto [b, e] = column(i, j);
        for (auto p = b; p != e; ++p) {
          auto [b2, e2] = column(i + 1, p->row);
          for (auto q = b2; q != e2; ++q) acc[4LL * q->row + p->upow + q->upow] += p->coef * q->coef;
        }
        for (auto& [key, val] : acc)
          if (!val.is_zero())
            return "d^2(" + describe(i, j) + ") has coefficient " + val.str() + " on " + describe(i + 2, int(key / 4));
      }
    }
    return std::nullopt;
  }
  bool verify_d_squared() const { return !d_squared_witness(); }

  // Kh/BN: every entry preserves qdeg (U has degree -2); TLee: qdeg never drops.
  std::optional<std::string> graded_witness() const {
    for (int i = lo_; i < hi_; ++i) {
      const auto& src = group(i);
      const auto& dst = group(i + 1);
      for (int j = 0; j < src.size(); ++j) {
        auto [b, e] = column(i, j);
        for (auto p = b; p != e; ++p) {
          int qs = src.qdeg[j], qt = dst.qdeg[p->row] - 2 * p->upow;
          bool ok = theory_ == Theory::tlee ? dst.qdeg[p->row] >= qs : qt == qs;
          if (!ok) return "entry " + describe(i, j) + " -> " + describe(i + 1, p->row) + " breaks the grading";
        }
      }
    }
    return std::nullopt;
  }
  bool verify_graded() const { return !graded_witness(); }

  std::string describe(int i, int j) const {
    const auto& s = group(i).states[j];
    std::string out = "[" + Resolution(cube_->size(), s.resolution).str() + "|";
    int k = cube_->circles(s.resolution).count;
    for (int c = 0; c < k; ++c) out += (s.labels >> c) & 1 ? 'X' : '1';
    return out + "]";
  }

  // Mutable access for negative-control fixtures.
  Differential& mutable_differential(int i) { return diffs_.at(i - lo_); }

  // Versioned sparse dump: one "row col coeff upow" line per entry.
  void dump(std::ostream& os) const {
    os << "# linkhom-complex v1\n";
    os << "theory " << theory_name(theory_) << " field " << (F::characteristic ? "F" + std::to_string(F::characteristic) : "Q")
       << " crossings " << cube_->size() << " degrees " << lo_ << " " << hi_ << "\n";
    for (int i = lo_; i <= hi_; ++i) {
      os << "group " << i << " rank " << group(i).size() << "\n";
      for (int j = 0; j < group(i).size(); ++j) os << "  " << j << " " << describe(i, j) << " q " << group(i).qdeg[j] << "\n";
    }
    for (int i = lo_; i < hi_; ++i) {
      const auto& df = differential(i);
      os << "map " << i << " rows " << df.rows << " cols " << df.cols << " nnz " << df.entries.size() << "\n";
      for (int j = 0; j < df.cols; ++j) {
        auto [b, e] = column(i, j);
        for (auto p = b; p != e; ++p) os << "  " << p->row << " " << j << " " << p->coef.str() << " " << p->upow << "\n";
      }
    }
  }

 private:
  void build_bases() {
    const std::uint32_t V = cube_->vertex_count();
    groups_.assign(hi_ - lo_ + 1, {});
    res_offset_.assign(V, -1);
    for (std::uint32_t r = 0; r < V; ++r) {
      int i = cube_->degree(r);
      if (!has_degree(i)) continue;
      auto& g = groups_[i - lo_];
      res_offset_[r] = g.size();
      int k = cube_->circles(r).count;
      for (std::uint32_t L = 0; L < (1u << k); ++L) {
        State s{r, L};
        g.states.push_back(s);
        g.qdeg.push_back(cube_->qdeg(s));
      }
    }
  }

  void build_differentials(const FrobeniusSpec<F>& spec) {
    CubeRules<F> rules(spec);
    diffs_.assign(hi_ - lo_ + 1, {});
    for (int i = lo_; i < hi_; ++i) {
      auto& df = diffs_[i - lo_];
      const auto& g = groups_[i - lo_];
      df.cols = g.size();
      df.rows = groups_[i + 1 - lo_].size();
      df.start.reserve(g.size() + 1);
      std::uint32_t current = ~0u;
      std::vector<Cube::Edge> edges;
      for (int j = 0; j < g.size(); ++j) {
        State s = g.states[j];
        if (s.resolution != current) {
          current = s.resolution;
          edges = cube_->edges(current);
        }
        for (const auto& e : edges) {
          int base = res_offset_[e.target];
          for_each_term(rules, e, s.labels, [&](std::uint32_t lab, const F& coef, int upow) {
            df.entries.push_back({base + static_cast<int>(lab), coef, upow});
          });
        }
        df.start.push_back(static_cast<int>(df.entries.size()));
      }
    }
  }

  std::shared_ptr<Cube> cube_;
  Theory theory_;
  int lo_ = 0, hi_ = 0;
  std::vector<Group> groups_;
  std::vector<Differential> diffs_;
  std::vector<int> res_offset_;
};

template <class F>
ChainComplex<F> build_complex(const OrientedDiagram& d, Theory theory, const BuildOptions& opt = {}) {
  return ChainComplex<F>(d, theory, opt);
}

// Minimum qdeg over the support of a vector in degree i.
template <class F>
int qdeg_of(const ChainComplex<F>& c, int i, const SparseVec<F>& v) {
  require(!v.empty(), ErrorCode::invalid_argument, "qdeg of the zero element is undefined");
  int q = c.group(i).qdeg[v.front().first];
  for (auto& [j, a] : v) q = std::min(q, c.group(i).qdeg[j]);
  return q;
}

}  // namespace linkhom
