#pragma once

#include <unordered_map>
#include <utility>
#include <vector>

#include "linkhom/complex.hpp"

namespace linkhom {

// y += a*x for vectors sorted by key.
template <class F>
void axpy(SparseVec<F>& y, const F& a, const SparseVec<F>& x) {
  SparseVec<F> out;
  out.reserve(y.size() + x.size());
  std::size_t i = 0, j = 0;
  while (i < y.size() || j < x.size()) {
    if (j == x.size() || (i < y.size() && y[i].first < x[j].first)) {
      out.push_back(std::move(y[i++]));
    } else if (i == y.size() || x[j].first < y[i].first) {
      out.push_back({x[j].first, a * x[j].second});
      ++j;
    } else {
      F v = y[i].second + a * x[j].second;
      if (!v.is_zero()) out.push_back({y[i].first, std::move(v)});
      ++i;
      ++j;
    }
  }
  y = std::move(out);
}

template <class F>
void sort_vec(SparseVec<F>& v) {
  std::sort(v.begin(), v.end(), [](auto& a, auto& b) { return a.first < b.first; });
}

// Column echelon form with distinct leading (smallest) keys. Optionally
// tracks each stored column as a combination of the inserted ones.
template <class F>
class EchelonReducer {
 public:
  explicit EchelonReducer(bool track = false) : track_(track) {}

  // Returns true when the column is independent of the ones already added.
  bool add(SparseVec<F> col, int id = -1) {
    SparseVec<F> combo;
    if (track_) combo.push_back({id, F(1)});
    while (!col.empty()) {
      auto it = pivot_.find(col.front().first);
      if (it == pivot_.end()) break;
      const auto& other = cols_[it->second];
      F f = -(col.front().second / other.front().second);
      axpy(col, f, other);
      if (track_) axpy(combo, f, combos_[it->second]);
    }
    if (col.empty()) return false;
    pivot_[col.front().first] = static_cast<int>(cols_.size());
    cols_.push_back(std::move(col));
    if (track_) combos_.push_back(std::move(combo));
    return true;
  }

  // Removes leading entries while they are pivots; returns the remainder.
  // With tracking, *used receives the combination of inserted columns subtracted.
  SparseVec<F> reduce(SparseVec<F> v, SparseVec<F>* used = nullptr) const {
    while (!v.empty()) {
      auto it = pivot_.find(v.front().first);
      if (it == pivot_.end()) break;
      const auto& other = cols_[it->second];
      F f = v.front().second / other.front().second;
      axpy(v, -f, other);
      if (used && track_) axpy(*used, f, combos_[it->second]);
    }
    return v;
  }

  int rank() const { return static_cast<int>(cols_.size()); }

 private:
  bool track_;
  std::vector<SparseVec<F>> cols_;
  std::vector<SparseVec<F>> combos_;
  std::unordered_map<int, int> pivot_;
};

}  // namespace linkhom
