#pragma once

#include <algorithm>
#include <array>
#include <cstdlib>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "linkhom/error.hpp"

namespace linkhom {

struct BraidWord {
  int strands = 1;
  std::vector<int> letters;

  void validate() const {
    require(strands >= 1, ErrorCode::invalid_argument, "braid needs at least one strand");
    for (int s : letters)
      require(s != 0 && std::abs(s) <= strands - 1, ErrorCode::invalid_argument,
              "braid letter " + std::to_string(s) + " out of range for " + std::to_string(strands) + " strands");
  }
  int writhe() const {
    int w = 0;
    for (int s : letters) w += s > 0 ? 1 : -1;
    return w;
  }
  friend bool operator==(const BraidWord&, const BraidWord&) = default;
};

// Arcs listed counterclockwise starting from the incoming under-strand.
struct Crossing {
  std::array<int, 4> arcs{};
  int sign = 1;
  friend bool operator==(const Crossing&, const Crossing&) = default;
};

// Slot-level braid geometry kept by braid_closure (positions are 1-based).
struct BraidLayout {
  int strands = 1;
  std::vector<std::array<int, 4>> slot_position;
  std::vector<int> free_positions;
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> issues;
};

// Slot s of a crossing with sign sg: is the arc entering the crossing there?
inline bool slot_incoming(int slot, int sign) { return slot == 0 || slot == (sign > 0 ? 3 : 1); }

class OrientedDiagram {
 public:
  OrientedDiagram() = default;
  explicit OrientedDiagram(std::vector<Crossing> crossings, int free_loops = 0,
                           std::optional<BraidLayout> layout = std::nullopt)
      : crossings_(std::move(crossings)), free_loops_(free_loops), layout_(std::move(layout)) {
    normalize();
  }

  static OrientedDiagram unknot() { return OrientedDiagram({}, 1); }

  const std::vector<Crossing>& crossings() const { return crossings_; }
  int crossing_count() const { return static_cast<int>(crossings_.size()); }
  int free_loops() const { return free_loops_; }
  const std::optional<BraidLayout>& layout() const { return layout_; }

  // Arcs renumbered 0..m-1 in increasing order of their labels.
  int arc_count() const { return static_cast<int>(labels_.size()); }
  int arc_label(int a) const { return labels_[a]; }
  int arc(int c, int slot) const { return norm_[c][slot]; }
  int sign(int c) const { return crossings_[c].sign; }
  std::optional<int> arc_index(int label) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
    if (it == labels_.end() || *it != label) return std::nullopt;
    return static_cast<int>(it - labels_.begin());
  }

  int n_plus() const {
    return static_cast<int>(std::count_if(crossings_.begin(), crossings_.end(), [](auto& x) { return x.sign > 0; }));
  }
  int n_minus() const { return crossing_count() - n_plus(); }
  int writhe() const { return n_plus() - n_minus(); }

  // (crossing, slot) where arc a ends / starts; valid diagrams only.
  std::pair<int, int> head(int a) const { return ends_[a][1]; }
  std::pair<int, int> tail(int a) const { return ends_[a][0]; }

  int component_count() const {
    std::vector<char> seen(arc_count(), 0);
    int comps = 0;
    for (int a = 0; a < arc_count(); ++a) {
      if (seen[a]) continue;
      ++comps;
      for (int b = a; !seen[b];) {
        seen[b] = 1;
        auto [c, s] = head(b);
        b = arc(c, (s + 2) % 4);
      }
    }
    return comps + free_loops_;
  }

  int split_component_count() const {
    std::vector<int> parent(crossing_count());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (int a = 0; a < arc_count(); ++a) parent[find(tail(a).first)] = find(head(a).first);
    int comps = 0;
    for (int c = 0; c < crossing_count(); ++c) comps += find(c) == c;
    return comps + free_loops_;
  }

  ValidationReport validate() const {
    ValidationReport r;
    auto issue = [&](std::string s) {
      r.ok = false;
      r.issues.push_back(std::move(s));
    };
    if (free_loops_ < 0) issue("negative free loop count");
    for (std::size_t c = 0; c < crossings_.size(); ++c)
      if (crossings_[c].sign != 1 && crossings_[c].sign != -1)
        issue("crossing " + std::to_string(c) + " has sign " + std::to_string(crossings_[c].sign));
    std::vector<int> in(arc_count(), 0), out(arc_count(), 0);
    for (int c = 0; c < crossing_count(); ++c)
      for (int s = 0; s < 4; ++s) (slot_incoming(s, sign(c)) ? in : out)[arc(c, s)]++;
    for (int a = 0; a < arc_count(); ++a) {
      if (in[a] + out[a] != 2)
        issue("arc " + std::to_string(labels_[a]) + " occurs " + std::to_string(in[a] + out[a]) + " times");
      else if (in[a] != 1)
        issue("arc " + std::to_string(labels_[a]) + " is inconsistent with the crossing signs/orientation");
    }
    if (layout_) {
      if (static_cast<int>(layout_->slot_position.size()) != crossing_count() ||
          static_cast<int>(layout_->free_positions.size()) != free_loops_)
        issue("braid layout does not match the crossing list");
    }
    if (r.ok && face_count() != crossing_count() + 2 * (split_component_count() - free_loops_))
      issue("crossing list is not a planar diagram (face count mismatch)");
    return r;
  }

  void ensure_valid() const {
    auto r = validate();
    if (!r.ok) fail(ErrorCode::invalid_argument, "invalid diagram: " + r.issues.front());
  }

  // Faces of the planar 4-valent graph, traced by turning at each crossing.
  int face_count() const {
    int m = arc_count();
    // dart 2a: travel arc a from tail to head; 2a+1: head to tail.
    std::vector<char> seen(2 * m, 0);
    auto dart_from = [&](int c, int s) {
      int a = arc(c, s);
      auto t = tail(a);
      return (t.first == c && t.second == s) ? 2 * a : 2 * a + 1;
    };
    int faces = 0;
    for (int d0 = 0; d0 < 2 * m; ++d0) {
      if (seen[d0]) continue;
      ++faces;
      for (int d = d0; !seen[d];) {
        seen[d] = 1;
        int a = d / 2;
        auto [c, s] = (d % 2 == 0) ? head(a) : tail(a);
        d = dart_from(c, (s + 1) % 4);
      }
    }
    return faces;
  }

  friend bool operator==(const OrientedDiagram& a, const OrientedDiagram& b) {
    return a.crossings_ == b.crossings_ && a.free_loops_ == b.free_loops_;
  }

 private:
  void normalize() {
    std::set<int> labels;
    for (auto& x : crossings_)
      for (int a : x.arcs) labels.insert(a);
    labels_.assign(labels.begin(), labels.end());
    norm_.resize(crossings_.size());
    ends_.assign(labels_.size(), {std::pair{-1, -1}, std::pair{-1, -1}});
    for (std::size_t c = 0; c < crossings_.size(); ++c)
      for (int s = 0; s < 4; ++s) {
        int a = *arc_index(crossings_[c].arcs[s]);
        norm_[c][s] = a;
        ends_[a][slot_incoming(s, crossings_[c].sign) ? 1 : 0] = {static_cast<int>(c), s};
      }
  }

  std::vector<Crossing> crossings_;
  int free_loops_ = 0;
  std::optional<BraidLayout> layout_;
  std::vector<int> labels_;
  std::vector<std::array<int, 4>> norm_;
  std::vector<std::array<std::pair<int, int>, 2>> ends_;
};

inline int writhe(const OrientedDiagram& d) { return d.writhe(); }

inline OrientedDiagram braid_closure(const BraidWord& b) {
  b.validate();
  const int n = b.strands;
  std::vector<int> cur(n + 1);
  std::iota(cur.begin(), cur.end(), 0);
  int next = n + 1;
  std::vector<Crossing> xs;
  BraidLayout layout;
  layout.strands = n;
  for (int letter : b.letters) {
    int i = std::abs(letter);
    int a = cur[i], c = cur[i + 1];
    int se = next++, sw = next++;
    if (letter > 0) {
      xs.push_back({{a, sw, se, c}, 1});
      layout.slot_position.push_back({i, i, i + 1, i + 1});
    } else {
      xs.push_back({{c, a, sw, se}, -1});
      layout.slot_position.push_back({i + 1, i, i, i + 1});
    }
    cur[i] = sw;
    cur[i + 1] = se;
  }
  // close up: the last arc at position p is the top arc p
  std::map<int, int> rename;
  int loops = 0;
  for (int p = 1; p <= n; ++p) {
    if (cur[p] == p) {
      ++loops;
      layout.free_positions.push_back(p);
    } else {
      rename[cur[p]] = p;
    }
  }
  std::set<int> used;
  for (auto& x : xs)
    for (int& a : x.arcs) {
      if (auto it = rename.find(a); it != rename.end()) a = it->second;
      used.insert(a);
    }
  std::map<int, int> compact;
  int label = 1;
  for (int a : used) compact[a] = label++;
  for (auto& x : xs)
    for (int& a : x.arcs) a = compact[a];
  return OrientedDiagram(std::move(xs), loops, std::move(layout));
}

enum Port { NE = 0, NW = 1, SW = 2, SE = 3 };

struct PortRef {
  int crossing;
  int port;
  friend bool operator==(const PortRef&, const PortRef&) = default;
};

// Assembles a diagram from crossings with compass ports (counterclockwise
// NE, NW, SW, SE; strands run NE-SW and NW-SE) and undirected connections.
class DiagramBuilder {
 public:
  int add_crossing(int sign) {
    signs_.push_back(sign);
    partner_.push_back({PortRef{-1, -1}, PortRef{-1, -1}, PortRef{-1, -1}, PortRef{-1, -1}});
    return static_cast<int>(signs_.size()) - 1;
  }
  void connect(PortRef a, PortRef b) {
    auto& pa = partner_.at(a.crossing)[a.port];
    auto& pb = partner_.at(b.crossing)[b.port];
    require(pa.crossing < 0 && pb.crossing < 0, ErrorCode::internal, "port connected twice");
    pa = b;
    pb = a;
  }
  int crossing_count() const { return static_cast<int>(signs_.size()); }

  // Orients each component by leaving through the given ports in turn.
  OrientedDiagram build(const std::vector<PortRef>& starts) const {
    const int n = crossing_count();
    for (int c = 0; c < n; ++c)
      for (int p = 0; p < 4; ++p)
        require(partner_[c][p].crossing >= 0, ErrorCode::internal, "unconnected port");
    std::vector<std::array<int, 4>> arc_at(n, {0, 0, 0, 0});
    std::vector<std::array<char, 4>> incoming(n, {0, 0, 0, 0});
    int label = 1;
    for (PortRef start : starts) {
      require(arc_at[start.crossing][start.port] == 0, ErrorCode::internal, "start port already traversed");
      PortRef out = start;
      do {
        PortRef in = partner_[out.crossing][out.port];
        require(arc_at[out.crossing][out.port] == 0 && arc_at[in.crossing][in.port] == 0, ErrorCode::internal,
                "inconsistent traversal");
        arc_at[out.crossing][out.port] = arc_at[in.crossing][in.port] = label++;
        incoming[in.crossing][in.port] = 1;
        out = {in.crossing, (in.port + 2) % 4};
      } while (!(out == start));
    }
    std::vector<Crossing> xs;
    for (int c = 0; c < n; ++c) {
      int under = -1;
      for (int p = 0; p < 4; ++p) {
        require(arc_at[c][p] != 0, ErrorCode::internal, "component not covered by the start ports");
        if (!incoming[c][p]) continue;
        int other = signs_[c] > 0 ? (p + 3) % 4 : (p + 1) % 4;
        if (incoming[c][other]) under = p;
      }
      require(under >= 0, ErrorCode::internal, "crossing strands not transverse");
      Crossing x;
      x.sign = signs_[c];
      for (int k = 0; k < 4; ++k) x.arcs[k] = arc_at[c][(under + k) % 4];
      xs.push_back(x);
    }
    return OrientedDiagram(std::move(xs));
  }

 private:
  std::vector<int> signs_;
  std::vector<std::array<PortRef, 4>> partner_;
};

namespace detail {
// Vertical stack: upper SW/SE feed lower NW/NE.
inline std::vector<int> column(DiagramBuilder& b, int count, int first_sign, bool alternate) {
  std::vector<int> ids;
  for (int j = 0; j < count; ++j) {
    int sign = alternate && j % 2 ? -first_sign : first_sign;
    ids.push_back(b.add_crossing(sign));
    if (j > 0) {
      b.connect({ids[j - 1], SW}, {ids[j], NW});
      b.connect({ids[j - 1], SE}, {ids[j], NE});
    }
  }
  return ids;
}
// Horizontal row: left NE/SE feed right NW/SW.
inline std::vector<int> row(DiagramBuilder& b, int count, int sign) {
  std::vector<int> ids;
  for (int j = 0; j < count; ++j) {
    ids.push_back(b.add_crossing(sign));
    if (j > 0) {
      b.connect({ids[j - 1], NE}, {ids[j], NW});
      b.connect({ids[j - 1], SE}, {ids[j], SW});
    }
  }
  return ids;
}
}  // namespace detail

// Unknot diagram U(k,h): 2k copies of T on the left, 2h on the right, and a
// three-crossing core.
inline OrientedDiagram generate_U(int k, int h) {
  require(k >= 1 && h >= 1, ErrorCode::invalid_argument, "U(k,h) needs k,h >= 1");
  DiagramBuilder b;
  auto left = detail::column(b, 2 * k, -1, true);
  auto right = detail::column(b, 2 * h, 1, true);
  int bl = b.add_crossing(-1);
  int br = b.add_crossing(1);
  int x = b.add_crossing(1);
  int l1 = left.front(), ll = left.back(), r1 = right.front(), rl = right.back();
  b.connect({l1, NW}, {r1, NE});
  b.connect({l1, NE}, {x, NW});
  b.connect({ll, SW}, {bl, SW});
  b.connect({ll, SE}, {bl, NW});
  b.connect({bl, NE}, {x, SW});
  b.connect({bl, SE}, {br, SW});
  b.connect({x, NE}, {r1, NW});
  b.connect({x, SE}, {br, NW});
  b.connect({br, NE}, {rl, SW});
  b.connect({br, SE}, {rl, SE});
  return b.build({{r1, NE}});
}

// Three twist boxes: A vertical with 2r+1 positive crossings, C vertical with
// 1-2k negative crossings, B horizontal with -2t-1 negative crossings.
inline OrientedDiagram generate_D(int r, int k, int t) {
  require(r > 0 && k < 0 && t < 0, ErrorCode::regime,
          "D(r,k,t) is only generated for r > 0, k < 0, t < 0");
  DiagramBuilder b;
  auto A = detail::column(b, 2 * r + 1, 1, false);
  auto C = detail::column(b, 1 - 2 * k, -1, false);
  auto B = detail::row(b, -2 * t - 1, -1);
  b.connect({A.front(), NW}, {C.front(), NE});
  b.connect({A.back(), SW}, {C.back(), SE});
  b.connect({A.front(), NE}, {B.front(), NW});
  b.connect({A.back(), SE}, {B.front(), SW});
  b.connect({C.front(), NW}, {B.back(), NE});
  b.connect({C.back(), SW}, {B.back(), SE});
  return b.build({{C.front(), NE}});
}

inline OrientedDiagram mirror(const OrientedDiagram& d) {
  std::vector<Crossing> xs;
  std::optional<BraidLayout> layout = d.layout();
  for (int c = 0; c < d.crossing_count(); ++c) {
    const auto& x = d.crossings()[c];
    // the old over-strand becomes the under-strand
    int shift = x.sign > 0 ? 3 : 1;
    Crossing m;
    m.sign = -x.sign;
    for (int s = 0; s < 4; ++s) m.arcs[s] = x.arcs[(s + shift) % 4];
    xs.push_back(m);
    if (layout) {
      auto old = layout->slot_position[c];
      for (int s = 0; s < 4; ++s) layout->slot_position[c][s] = old[(s + shift) % 4];
    }
  }
  return OrientedDiagram(std::move(xs), d.free_loops(), std::move(layout));
}

inline OrientedDiagram disjoint_union(const OrientedDiagram& d1, const OrientedDiagram& d2) {
  int offset = 0;
  for (auto& x : d1.crossings())
    for (int a : x.arcs) offset = std::max(offset, a);
  std::vector<Crossing> xs = d1.crossings();
  for (auto x : d2.crossings()) {
    for (int& a : x.arcs) a += offset;
    xs.push_back(x);
  }
  std::optional<BraidLayout> layout;
  if (d1.layout() && d2.layout()) {
    // juxtapose the braids: d2's strands sit to the right of d1's
    layout = d1.layout();
    int n1 = d1.layout()->strands;
    layout->strands += d2.layout()->strands;
    for (auto pos : d2.layout()->slot_position) {
      for (int& p : pos) p += n1;
      layout->slot_position.push_back(pos);
    }
    for (int p : d2.layout()->free_positions) layout->free_positions.push_back(p + n1);
  }
  return OrientedDiagram(std::move(xs), d1.free_loops() + d2.free_loops(), std::move(layout));
}

// Cuts arc1 of d1 and arc2 of d2 and reconnects them across.
inline OrientedDiagram connected_sum(const OrientedDiagram& d1, int arc1, const OrientedDiagram& d2, int arc2) {
  auto i1 = d1.arc_index(arc1);
  auto i2 = d2.arc_index(arc2);
  require(i1.has_value(), ErrorCode::invalid_argument, "arc " + std::to_string(arc1) + " not found in first diagram");
  require(i2.has_value(), ErrorCode::invalid_argument, "arc " + std::to_string(arc2) + " not found in second diagram");
  int offset = 0;
  for (auto& x : d1.crossings())
    for (int a : x.arcs) offset = std::max(offset, a);
  std::vector<Crossing> xs = d1.crossings();
  auto [h1c, h1s] = d1.head(*i1);
  auto [h2c, h2s] = d2.head(*i2);
  int n1 = d1.crossing_count();
  for (auto x : d2.crossings()) {
    for (int& a : x.arcs) a += offset;
    xs.push_back(x);
  }
  // arc1 now ends where arc2 ended, and arc2 ends where arc1 ended
  xs[h1c].arcs[h1s] = arc2 + offset;
  xs[n1 + h2c].arcs[h2s] = arc1;
  return OrientedDiagram(std::move(xs), d1.free_loops() + d2.free_loops());
}

// Freely reduces adjacent inverse pairs.
inline BraidWord free_reduce(BraidWord b) {
  std::vector<int> out;
  for (int s : b.letters) {
    if (!out.empty() && out.back() == -s) out.pop_back();
    else out.push_back(s);
  }
  b.letters = std::move(out);
  return b;
}

// sigma_i^{-1} b sigma_i (i may be negative to conjugate by the inverse), freely reduced.
inline BraidWord conjugate(const BraidWord& b, int i) {
  b.validate();
  require(i != 0 && std::abs(i) <= b.strands - 1, ErrorCode::invalid_argument,
          "conjugation index " + std::to_string(i) + " out of range");
  BraidWord r{b.strands, {-i}};
  r.letters.insert(r.letters.end(), b.letters.begin(), b.letters.end());
  r.letters.push_back(i);
  return free_reduce(r);
}

inline BraidWord stabilize_positive(const BraidWord& b) {
  b.validate();
  BraidWord r = b;
  r.letters.push_back(b.strands);
  r.strands += 1;
  return r;
}

inline BraidWord stabilize_negative(const BraidWord& b) {
  b.validate();
  BraidWord r = b;
  r.letters.push_back(-b.strands);
  r.strands += 1;
  return r;
}

// One application of a braid relation (far commutation or the
// three-letter relation with equal signs) at each possible place.
inline std::vector<BraidWord> braid_relation_variants(const BraidWord& b) {
  b.validate();
  std::vector<BraidWord> out;
  const auto& w = b.letters;
  for (std::size_t j = 0; j + 1 < w.size(); ++j) {
    if (std::abs(std::abs(w[j]) - std::abs(w[j + 1])) >= 2) {
      BraidWord v = b;
      std::swap(v.letters[j], v.letters[j + 1]);
      out.push_back(std::move(v));
    }
    if (j + 2 < w.size() && w[j] == w[j + 2] && std::abs(std::abs(w[j]) - std::abs(w[j + 1])) == 1 &&
        (w[j] > 0) == (w[j + 1] > 0)) {
      BraidWord v = b;
      v.letters[j] = v.letters[j + 2] = w[j + 1];
      v.letters[j + 1] = w[j];
      out.push_back(std::move(v));
    }
  }
  return out;
}

struct MarkovMoves {
  BraidWord word;
  BraidWord conjugate(int i) const { return linkhom::conjugate(word, i); }
  BraidWord stabilize_positive() const { return linkhom::stabilize_positive(word); }
  BraidWord stabilize_negative() const { return linkhom::stabilize_negative(word); }
  std::vector<BraidWord> braid_relation_variants() const { return linkhom::braid_relation_variants(word); }
};

inline MarkovMoves markov_moves(const BraidWord& b) {
  b.validate();
  return {b};
}

struct BuiltinEntry {
  std::string name;
  BraidWord braid;
  std::string note;
};

inline const std::vector<BuiltinEntry>& builtin_catalog() {
  static const std::vector<BuiltinEntry> catalog = {
      {"unknot", {1, {}}, "0-crossing unknot"},
      {"unlink2", {2, {}}, "2-component unlink"},
      {"trefoil+", {2, {1, 1, 1}}, "positive trefoil T(2,3)"},
      {"trefoil-", {2, {-1, -1, -1}}, "negative trefoil"},
      {"hopf+", {2, {1, 1}}, "positive Hopf link"},
      {"figure8", {3, {1, -2, 1, -2}}, "figure-eight knot 4_1"},
      {"5_1", {2, {1, 1, 1, 1, 1}}, "torus knot T(2,5)"},
      {"8_19", {3, {1, 1, 1, 2, 1, 1, 1, 2}}, "torus knot T(3,4)"},
      {"9_42", {4, {-1, -1, -1, 2, 1, 1, -3, 2, -3}}, "9_42, KnotInfo braid representative"},
  };
  return catalog;
}

inline std::optional<BraidWord> builtin_braid(const std::string& name) {
  std::string key = name == "trefoil−" ? "trefoil-" : name;
  for (const auto& e : builtin_catalog())
    if (e.name == key) return e.braid;
  return std::nullopt;
}

inline OrientedDiagram builtin_diagram(const std::string& name) {
  auto b = builtin_braid(name);
  require(b.has_value(), ErrorCode::invalid_argument, "unknown builtin diagram '" + name + "'");
  return braid_closure(*b);
}

// Same crossings in a different order (crossing i of the result is perm[i] of d).
inline OrientedDiagram permute_crossings(const OrientedDiagram& d, const std::vector<int>& perm) {
  std::vector<Crossing> xs;
  std::optional<BraidLayout> layout;
  if (d.layout()) {
    layout = BraidLayout{d.layout()->strands, {}, d.layout()->free_positions};
  }
  for (int p : perm) {
    xs.push_back(d.crossings().at(p));
    if (layout) layout->slot_position.push_back(d.layout()->slot_position[p]);
  }
  return OrientedDiagram(std::move(xs), d.free_loops(), std::move(layout));
}

}  // namespace linkhom
