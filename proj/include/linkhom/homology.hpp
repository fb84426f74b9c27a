#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "linkhom/poly.hpp"
#include "linkhom/sparse.hpp"

namespace linkhom {

using Bidegree = std::pair<int, int>;
using BigradedDims = std::map<Bidegree, int>;

namespace detail {
template <class F>
SparseVec<F> column_vec(const ChainComplex<F>& c, int i, int j, const std::vector<int>* key = nullptr) {
  SparseVec<F> v;
  auto [b, e] = c.column(i, j);
  for (auto p = b; p != e; ++p) v.push_back({key ? (*key)[p->row] : p->row, p->coef});
  sort_vec(v);
  // merge duplicates (cannot occur for cube complexes, kept for safety)
  SparseVec<F> out;
  for (auto& [r, a] : v) {
    if (!out.empty() && out.back().first == r) out.back().second += a;
    else out.push_back({r, a});
  }
  std::erase_if(out, [](auto& x) { return x.second.is_zero(); });
  return out;
}

template <class F>
bool is_cycle(const ChainComplex<F>& c, int i, const SparseVec<F>& z) {
  if (!c.has_degree(i + 1)) return true;
  return c.apply(i, z).empty();
}
}  // namespace detail

// Ranks of d^i restricted to each qdeg (Kh complexes preserve qdeg).
template <class F>
BigradedDims homology_field(const ChainComplex<F>& c) {
  require(c.theory() == Theory::kh, ErrorCode::invalid_argument, "bigraded homology needs the Kh complex");
  std::map<Bidegree, int> dim, rank_out;
  for (int i = c.min_degree(); i <= c.max_degree(); ++i) {
    const auto& g = c.group(i);
    std::map<int, EchelonReducer<F>> slices;
    for (int j = 0; j < g.size(); ++j) {
      dim[{i, g.qdeg[j]}]++;
      if (!c.has_degree(i + 1)) continue;
      if (slices[g.qdeg[j]].add(detail::column_vec(c, i, j))) rank_out[{i, g.qdeg[j]}]++;
    }
  }
  BigradedDims h;
  for (auto& [bd, n] : dim) {
    int r_out = rank_out.count(bd) ? rank_out[bd] : 0;
    Bidegree prev{bd.first - 1, bd.second};
    int r_in = rank_out.count(prev) ? rank_out[prev] : 0;
    int d = n - r_out - r_in;
    if (d > 0) h[bd] = d;
  }
  return h;
}

// Dimensions of the chain groups by bidegree.
template <class F>
BigradedDims chain_dims(const ChainComplex<F>& c) {
  BigradedDims out;
  for (int i = c.min_degree(); i <= c.max_degree(); ++i)
    for (int q : c.group(i).qdeg) out[{i, q}]++;
  return out;
}

// Graded Euler characteristic as a map qdeg -> coefficient.
inline std::map<int, long long> euler_characteristic(const BigradedDims& dims) {
  std::map<int, long long> out;
  for (auto& [bd, n] : dims) out[bd.second] += (bd.first % 2 == 0 ? 1 : -1) * static_cast<long long>(n);
  std::erase_if(out, [](auto& x) { return x.second == 0; });
  return out;
}

// Ungraded homology dimension per homological degree (any theory over a field; BN at U=1).
template <class F>
std::map<int, int> homology_ranks(const ChainComplex<F>& c) {
  std::map<int, int> rank;
  for (int i = c.min_degree(); i < c.max_degree(); ++i) {
    EchelonReducer<F> red;
    for (int j = 0; j < c.group(i).size(); ++j) red.add(detail::column_vec(c, i, j));
    rank[i] = red.rank();
  }
  std::map<int, int> h;
  for (int i = c.min_degree(); i <= c.max_degree(); ++i) {
    int d = c.group(i).size() - (rank.count(i) ? rank[i] : 0) - (rank.count(i - 1) ? rank[i - 1] : 0);
    if (d > 0) h[i] = d;
  }
  return h;
}

struct Fdeg {
  bool infinite = false;  // the zero class
  int value = 0;
};

// Filtered column reduction for degree i: rows ordered by (qdeg, index),
// columns from d^{i-1} added in decreasing source qdeg. Entries are read
// with U = 1, so a BN complex serves for its twisted Lee specialization.
template <class F>
class FilteredReduction {
 public:
  FilteredReduction(const ChainComplex<F>& c, int degree, bool track = false)
      : c_(c), degree_(degree), red_(track) {
    const auto& g = c.group(degree);
    std::vector<int> order(g.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return g.qdeg[a] < g.qdeg[b]; });
    key_.assign(g.size(), 0);
    row_of_key_ = order;
    for (int k = 0; k < g.size(); ++k) key_[order[k]] = k;
    const auto& src = c.group(degree - 1);
    col_order_.resize(src.size());
    std::iota(col_order_.begin(), col_order_.end(), 0);
    std::stable_sort(col_order_.begin(), col_order_.end(), [&](int a, int b) { return src.qdeg[a] > src.qdeg[b]; });
  }

  void add_columns_down_to(int q) {
    const auto& src = c_.group(degree_ - 1);
    while (next_ < col_order_.size() && src.qdeg[col_order_[next_]] >= q) {
      red_.add(detail::column_vec(c_, degree_ - 1, col_order_[next_], &key_), col_order_[next_]);
      ++next_;
    }
  }
  void add_all_columns() { add_columns_down_to(std::numeric_limits<int>::min()); }

  // Largest achievable minimum qdeg of z - d(w) over the columns added so far.
  Fdeg leading_qdeg(const SparseVec<F>& z) const {
    auto v = reduce_keyed(z, nullptr);
    if (v.empty()) return {true, 0};
    return {false, c_.group(degree_).qdeg[row_of_key_[v.front().first]]};
  }

  // z - d(used) = remainder, with the remainder's lowest qdeg as large as possible.
  // used is indexed by degree - 1 generators and needs tracking enabled.
  SparseVec<F> reduce(const SparseVec<F>& z, SparseVec<F>* used = nullptr) const {
    auto v = reduce_keyed(z, used);
    for (auto& e : v) e.first = row_of_key_[e.first];
    sort_vec(v);
    if (used) sort_vec(*used);
    return v;
  }

 private:
  const ChainComplex<F>& c_;
  int degree_;
  SparseVec<F> reduce_keyed(const SparseVec<F>& z, SparseVec<F>* used) const {
    SparseVec<F> v;
    for (auto& [r, a] : z) v.push_back({key_[r], a});
    sort_vec(v);
    return red_.reduce(std::move(v), used);
  }

  std::vector<int> key_, row_of_key_, col_order_;
  std::size_t next_ = 0;
  EchelonReducer<F> red_;
};

// Filtered degree of [z] in the twisted Lee complex.
template <class F>
Fdeg filtration_degree(const ChainComplex<F>& c, int degree, const SparseVec<F>& z) {
  require(c.theory() == Theory::tlee, ErrorCode::invalid_argument, "filtration degree needs the TLee complex");
  require(detail::is_cycle(c, degree, z), ErrorCode::not_a_cycle, "filtration degree of a non-cycle");
  FilteredReduction<F> fr(c, degree);
  fr.add_all_columns();
  return fr.leading_qdeg(z);
}

// A BN chain: state -> coefficient in F[U].
template <class F>
using BnChain = std::map<State, PolyU<F>>;

// Homogeneous BN element of qdeg q, read in the U = 1 slice (state s stands for U^m s).
template <class F>
SparseVec<F> slice_vector(const ChainComplex<F>& c, const BnChain<F>& z, int* q_out = nullptr) {
  SparseVec<F> v;
  std::optional<int> q;
  for (auto& [s, p] : z) {
    if (p.is_zero()) continue;
    int deg = c.cube().qdeg(s);
    for (int m = 0; m <= p.degree(); ++m) {
      if (p.coeff(m).is_zero()) continue;
      if (!q) q = deg - 2 * m;
      require(*q == deg - 2 * m, ErrorCode::invalid_argument, "BN element is not homogeneous");
      require(m == p.degree() && p.valuation() == m, ErrorCode::invalid_argument, "BN element is not homogeneous");
      auto idx = c.index_of(s);
      require(idx.has_value(), ErrorCode::invalid_argument, "state outside the built complex");
      v.push_back({*idx, p.coeff(m)});
    }
  }
  sort_vec(v);
  if (q_out) *q_out = q.value_or(0);
  return v;
}

// Largest k with [z] = U^k [x] in BN homology, for a homogeneous cycle z in degree i.
template <class F>
int divisibility(const ChainComplex<F>& c, int degree, const BnChain<F>& z) {
  require(c.theory() == Theory::bn, ErrorCode::invalid_argument, "divisibility needs the BN complex");
  int q = 0;
  auto v = slice_vector(c, z, &q);
  require(!v.empty(), ErrorCode::trivial_class, "class is trivial; divisibility unbounded");
  require(detail::is_cycle(c, degree, v), ErrorCode::not_a_cycle, "divisibility of a non-cycle");
  FilteredReduction<F> fr(c, degree);
  fr.add_columns_down_to(q);
  Fdeg f = fr.leading_qdeg(v);
  require(!f.infinite, ErrorCode::trivial_class, "class is trivial; divisibility unbounded");
  return (f.value - q) / 2;
}

template <class F>
struct BoundaryResult {
  bool boundary = false;
  SparseVec<F> witness;  // d(witness) = z when boundary
};

// Exact membership of z in the image of d^{i-1}; z must be a cycle.
template <class F>
BoundaryResult<F> is_boundary(const ChainComplex<F>& c, int degree, const SparseVec<F>& z) {
  require(c.theory() != Theory::bn, ErrorCode::invalid_argument, "is_boundary works over a field");
  require(detail::is_cycle(c, degree, z), ErrorCode::not_a_cycle, "is_boundary of a non-cycle");
  BoundaryResult<F> r;
  if (z.empty()) {
    r.boundary = true;
    return r;
  }
  const auto& src = c.group(degree - 1);
  std::optional<int> slice;
  if (c.theory() == Theory::kh) {
    slice = c.group(degree).qdeg[z.front().first];
    for (auto& [j, a] : z)
      if (c.group(degree).qdeg[j] != *slice) slice.reset();
  }
  EchelonReducer<F> red(true);
  for (int j = 0; j < src.size(); ++j)
    if (!slice || src.qdeg[j] == *slice) red.add(detail::column_vec(c, degree - 1, j), j);
  SparseVec<F> used;
  auto rest = red.reduce(z, &used);
  r.boundary = rest.empty();
  if (r.boundary) r.witness = std::move(used);
  return r;
}

template <class F>
struct TorsionSummand {
  PolyU<F> annihilator;  // monic, non-unit
  int qdeg = 0;
};

template <class F>
struct DegreeModule {
  std::vector<int> free_qdegs;
  std::vector<TorsionSummand<F>> torsion;
  int free_rank() const { return static_cast<int>(free_qdegs.size()); }
};

template <class F>
struct ModuleDecomposition {
  std::map<int, DegreeModule<F>> degrees;
};

namespace detail {
// Sparse matrix over F[U] with row and column access.
template <class F>
struct PolyMatrix {
  std::vector<std::map<int, PolyU<F>>> cols;
  std::vector<std::set<int>> rows;

  void set(int r, int c, PolyU<F> v) {
    if (v.is_zero()) {
      cols[c].erase(r);
      rows[r].erase(c);
    } else {
      cols[c][r] = std::move(v);
      rows[r].insert(c);
    }
  }
  PolyU<F> get(int r, int c) const {
    auto it = cols[c].find(r);
    return it == cols[c].end() ? PolyU<F>() : it->second;
  }
  void drop_row(int r) {
    for (int c : rows[r]) cols[c].erase(r);
    rows[r].clear();
  }
  void drop_col(int c) {
    for (auto& [r, v] : cols[c]) rows[r].erase(c);
    cols[c].clear();
  }
};
}  // namespace detail

// Module structure of BN homology by elimination over the Euclidean domain F[U].
template <class F>
ModuleDecomposition<F> homology_BN(const ChainComplex<F>& c) {
  require(c.theory() == Theory::bn, ErrorCode::invalid_argument, "module decomposition needs the BN complex");
  const int lo = c.min_degree(), hi = c.max_degree();
  std::map<int, detail::PolyMatrix<F>> mats;
  std::map<int, std::vector<char>> alive;
  for (int i = lo; i <= hi; ++i) alive[i].assign(c.group(i).size(), 1);
  for (int i = lo; i < hi; ++i) {
    auto& m = mats[i];
    m.cols.resize(c.group(i).size());
    m.rows.resize(c.group(i + 1).size());
    for (int j = 0; j < c.group(i).size(); ++j) {
      auto [b, e] = c.column(i, j);
      for (auto p = b; p != e; ++p) m.set(p->row, j, m.get(p->row, j) + PolyU<F>::monomial(p->coef, p->upow));
    }
  }
  ModuleDecomposition<F> out;
  auto matrix = [&](int i) -> detail::PolyMatrix<F>* { return mats.count(i) ? &mats[i] : nullptr; };

  for (;;) {
    // smallest-degree entry overall
    int best_deg = std::numeric_limits<int>::max();
    for (auto& [i, m] : mats)
      for (auto& col : m.cols)
        for (auto& [r, v] : col) best_deg = std::min(best_deg, v.degree());
    if (best_deg == std::numeric_limits<int>::max()) break;
    bool restart = false;
    for (auto& [i, m] : mats) {
      for (int l = 0; l < static_cast<int>(m.cols.size()) && !restart; ++l) {
        int k = -1;
        for (auto& [r, v] : m.cols[l])
          if (v.degree() == best_deg) {
            k = r;
            break;
          }
        if (k < 0) continue;
        PolyU<F> p = m.get(k, l);
        // Euclid step on any entry of the pivot row/column that p does not divide
        bool reduced = false;
        for (auto& [r, v] : std::map<int, PolyU<F>>(m.cols[l])) {
          if (r == k) continue;
          auto [q, rem] = divmod(v, p);
          if (rem.is_zero()) continue;
          // row_r -= q row_k; basis change propagates to d^{i+1}: col_k += q col_r
          for (int cc : std::set<int>(m.rows[k])) m.set(r, cc, m.get(r, cc) - q * m.get(k, cc));
          if (auto* nx = matrix(i + 1))
            for (auto& [rr, vv] : std::map<int, PolyU<F>>(nx->cols[r])) nx->set(rr, k, nx->get(rr, k) + q * vv);
          reduced = true;
          break;
        }
        if (!reduced)
          for (int cc : std::set<int>(m.rows[k])) {
            if (cc == l) continue;
            auto [q, rem] = divmod(m.get(k, cc), p);
            if (rem.is_zero()) continue;
            // col_cc -= q col_l; propagates to d^{i-1}: row_l += q row_cc
            for (auto& [rr, vv] : std::map<int, PolyU<F>>(m.cols[l])) m.set(rr, cc, m.get(rr, cc) - q * vv);
            if (auto* pv = matrix(i - 1))
              for (int c2 : std::set<int>(pv->rows[cc])) pv->set(l, c2, pv->get(l, c2) + q * pv->get(cc, c2));
            reduced = true;
            break;
          }
        if (reduced) {
          restart = true;
          break;
        }
        // Schur complement on the pivot
        std::vector<std::pair<int, PolyU<F>>> colv, rowv;
        for (auto& [r, v] : m.cols[l])
          if (r != k) colv.push_back({r, divmod(v, p).first});
        for (int cc : m.rows[k])
          if (cc != l) rowv.push_back({cc, m.get(k, cc)});
        for (auto& [cc, b] : rowv)
          for (auto& [r, a] : colv) m.set(r, cc, m.get(r, cc) - a * b);
        m.drop_col(l);
        m.drop_row(k);
        if (auto* pv = matrix(i - 1)) pv->drop_row(l);
        if (auto* nx = matrix(i + 1)) nx->drop_col(k);
        alive[i][l] = 0;
        alive[i + 1][k] = 0;
        if (!p.is_unit()) out.degrees[i + 1].torsion.push_back({p.monic(), c.group(i + 1).qdeg[k]});
      }
      if (restart) break;
    }
  }
  for (int i = lo; i <= hi; ++i) {
    auto& dm = out.degrees[i];
    for (int j = 0; j < c.group(i).size(); ++j)
      if (alive[i][j]) dm.free_qdegs.push_back(c.group(i).qdeg[j]);
    std::sort(dm.free_qdegs.begin(), dm.free_qdegs.end());
    std::sort(dm.torsion.begin(), dm.torsion.end(), [](auto& a, auto& b) {
      return std::pair(a.qdeg, a.annihilator.degree()) < std::pair(b.qdeg, b.annihilator.degree());
    });
    if (dm.free_qdegs.empty() && dm.torsion.empty()) out.degrees.erase(i);
  }
  return out;
}

}  // namespace linkhom
