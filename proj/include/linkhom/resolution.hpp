#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <deque>
#include <numeric>
#include <string>
#include <vector>

#include "linkhom/diagram.hpp"

namespace linkhom {

inline constexpr int max_resolution_bits = 32;

// Bit c set = 1-resolution at crossing c.
class Resolution {
 public:
  Resolution() = default;
  explicit Resolution(int size, std::uint32_t bits = 0) : size_(size), bits_(bits) {
    require(size >= 0 && size <= max_resolution_bits, ErrorCode::cap_exceeded, "too many crossings for a resolution");
  }
  static Resolution parse(const std::string& s) {
    std::uint32_t bits = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      require(s[i] == '0' || s[i] == '1', ErrorCode::parse, "resolution string must be 0/1");
      if (s[i] == '1') bits |= 1u << i;
    }
    return Resolution(static_cast<int>(s.size()), bits);
  }

  int size() const { return size_; }
  std::uint32_t bits() const { return bits_; }
  int choice(int c) const { return (bits_ >> c) & 1; }
  int weight() const { return std::popcount(bits_); }
  Resolution flipped(int c) const { return Resolution(size_, bits_ ^ (1u << c)); }
  std::string str() const {
    std::string s;
    for (int c = 0; c < size_; ++c) s += choice(c) ? '1' : '0';
    return s;
  }
  friend bool operator==(const Resolution&, const Resolution&) = default;

 private:
  int size_ = 0;
  std::uint32_t bits_ = 0;
};

struct CircleSet {
  int count = 0;                            // circles, free loops last
  std::vector<int> arc_circle;              // arc index -> circle
  std::vector<std::array<int, 2>> touch;    // circles of the slot-0 side and the slot-2 side

  bool joined(int c) const { return touch[c][0] != touch[c][1]; }
  std::vector<std::vector<int>> circles() const {
    std::vector<std::vector<int>> out(count);
    for (std::size_t a = 0; a < arc_circle.size(); ++a) out[arc_circle[a]].push_back(static_cast<int>(a));
    return out;
  }
};

// Slot paired with slot 0 by the smoothing (1 for the 0-resolution, 3 for the 1-resolution).
inline int smoothing_partner_of_zero(int choice) { return choice ? 3 : 1; }

inline CircleSet resolve_bits(const OrientedDiagram& d, std::uint32_t bits) {
  const int m = d.arc_count();
  std::vector<int> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
  for (int c = 0; c < d.crossing_count(); ++c) {
    int p = smoothing_partner_of_zero((bits >> c) & 1);
    unite(d.arc(c, 0), d.arc(c, p));
    unite(d.arc(c, 2), d.arc(c, p == 1 ? 3 : 1));
  }
  CircleSet cs;
  cs.arc_circle.assign(m, -1);
  std::vector<int> id_of_root(m, -1);
  for (int a = 0; a < m; ++a) {
    int r = find(a);
    if (id_of_root[r] < 0) id_of_root[r] = cs.count++;
    cs.arc_circle[a] = id_of_root[r];
  }
  cs.count += d.free_loops();
  cs.touch.resize(d.crossing_count());
  for (int c = 0; c < d.crossing_count(); ++c)
    cs.touch[c] = {cs.arc_circle[d.arc(c, 0)], cs.arc_circle[d.arc(c, 2)]};
  return cs;
}

inline CircleSet resolve(const OrientedDiagram& d, const Resolution& r) {
  require(r.size() == d.crossing_count(), ErrorCode::invalid_argument, "resolution size does not match the diagram");
  return resolve_bits(d, r.bits());
}

inline Resolution oriented_resolution(const OrientedDiagram& d) {
  std::uint32_t bits = 0;
  for (int c = 0; c < d.crossing_count(); ++c)
    if (d.sign(c) < 0) bits |= 1u << c;
  return Resolution(d.crossing_count(), bits);
}

inline std::vector<std::pair<int, Resolution>> cube_neighbors(const Resolution& r) {
  std::vector<std::pair<int, Resolution>> out;
  for (int c = 0; c < r.size(); ++c)
    if (!r.choice(c)) out.push_back({c, r.flipped(c)});
  return out;
}

enum class OrientationFlag { diagram, reversed };
enum class NestingProvenance { braid_geometric, two_coloring };

struct NestingAssignment {
  std::vector<int> parity;  // indexed by oriented-resolution circle id
  NestingProvenance provenance = NestingProvenance::braid_geometric;
};

inline NestingAssignment nesting_parities(const OrientedDiagram& d, OrientationFlag o) {
  CircleSet cs = resolve(d, oriented_resolution(d));
  NestingAssignment na;
  na.parity.assign(cs.count, -1);
  const int flip = o == OrientationFlag::reversed ? 1 : 0;
  if (const auto& lay = d.layout()) {
    na.provenance = NestingProvenance::braid_geometric;
    const int n = lay->strands;
    for (int c = 0; c < d.crossing_count(); ++c)
      for (int s = 0; s < 4; ++s) na.parity[cs.arc_circle[d.arc(c, s)]] = (n - lay->slot_position[c][s] + flip) % 2;
    int first_free = cs.count - d.free_loops();
    for (int j = 0; j < d.free_loops(); ++j) na.parity[first_free + j] = (n - lay->free_positions[j] + flip) % 2;
  } else {
    na.provenance = NestingProvenance::two_coloring;
    std::vector<std::vector<int>> adj(cs.count);
    for (int c = 0; c < d.crossing_count(); ++c) {
      adj[cs.touch[c][0]].push_back(cs.touch[c][1]);
      adj[cs.touch[c][1]].push_back(cs.touch[c][0]);
    }
    std::deque<int> queue{0};
    na.parity[0] = flip;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (int u : adj[v])
        if (na.parity[u] < 0) {
          na.parity[u] = 1 - na.parity[v];
          queue.push_back(u);
        }
    }
    for (int p : na.parity)
      require(p >= 0, ErrorCode::nesting_undetermined,
              "nesting undetermined: Seifert graph is disconnected and the diagram has no braid structure");
  }
  for (int c = 0; c < d.crossing_count(); ++c)
    require(na.parity[cs.touch[c][0]] != na.parity[cs.touch[c][1]], ErrorCode::internal,
            "nesting parities are not a proper 2-coloring");
  return na;
}

}  // namespace linkhom
