#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "linkhom/complex.hpp"
#include "linkhom/homology.hpp"
#include "linkhom/seifert.hpp"

namespace linkhom {

enum class Label : std::uint8_t { one, x_circ, x_bullet };

// Labels indexed by circle id of the resolution.
struct LabeledState {
  std::uint32_t resolution = 0;
  std::vector<Label> labels;
};

// Expands x_bullet = X - U*1 into basis states.
template <class F>
BnChain<F> expand(const LabeledState& s, const PolyU<F>& coef = PolyU<F>(F(1))) {
  BnChain<F> out;
  std::vector<int> bullets;
  std::uint32_t base = 0;
  for (std::size_t j = 0; j < s.labels.size(); ++j) {
    if (s.labels[j] == Label::x_circ) base |= 1u << j;
    if (s.labels[j] == Label::x_bullet) bullets.push_back(static_cast<int>(j));
  }
  const auto minus_u = PolyU<F>::monomial(F(-1), 1);
  for (std::uint32_t m = 0; m < (1u << bullets.size()); ++m) {
    std::uint32_t lab = base;
    PolyU<F> c = coef;
    for (std::size_t t = 0; t < bullets.size(); ++t) {
      if ((m >> t) & 1)
        lab |= 1u << bullets[t];
      else
        c = c * minus_u;
    }
    if (!c.is_zero()) out[State{s.resolution, lab}] += c;
  }
  return out;
}

template <class F>
void add_to(BnChain<F>& a, const BnChain<F>& b, const PolyU<F>& scale = PolyU<F>(F(1))) {
  for (auto& [s, p] : b) {
    auto& slot = a[s];
    slot += scale * p;
    if (slot.is_zero()) a.erase(s);
  }
}

template <class F>
BnChain<F> scaled(const BnChain<F>& a, const PolyU<F>& scale) {
  BnChain<F> out;
  add_to(out, a, scale);
  return out;
}

template <class F>
void prune(BnChain<F>& a) {
  std::erase_if(a, [](const auto& kv) { return kv.second.is_zero(); });
}

template <class F>
bool chains_equal(BnChain<F> a, BnChain<F> b) {
  prune(a);
  prune(b);
  return a == b;
}

// Bar-Natan differential computed state by state, without building the complex.
template <class F>
BnChain<F> bn_differential(const Cube& cube, const BnChain<F>& z) {
  static const CubeRules<F> rules(FrobeniusSpec<F>(Theory::bn));
  BnChain<F> out;
  std::map<std::uint32_t, std::vector<Cube::Edge>> edges;
  for (auto& [s, p] : z) {
    if (p.is_zero()) continue;
    auto it = edges.find(s.resolution);
    if (it == edges.end()) it = edges.emplace(s.resolution, cube.edges(s.resolution)).first;
    for (const auto& e : it->second)
      for_each_term(rules, e, s.labels, [&](std::uint32_t lab, const F& coef, int upow) {
        out[State{e.target, lab}] += p * PolyU<F>::monomial(coef, upow);
      });
  }
  prune(out);
  return out;
}

// Reads a BN chain at U = 1 as a vector of the given (TLee or BN) complex.
template <class F>
SparseVec<F> at_u_one(const ChainComplex<F>& c, const BnChain<F>& z) {
  std::map<int, F> acc;
  for (auto& [s, p] : z) {
    auto idx = c.index_of(s);
    require(idx.has_value(), ErrorCode::invalid_argument, "state outside the built complex");
    acc[*idx] += p.evaluate(F(1));
  }
  SparseVec<F> v;
  for (auto& [i, a] : acc)
    if (!a.is_zero()) v.push_back({i, a});
  return v;
}

struct BetaCycle {
  OrientationFlag orientation = OrientationFlag::diagram;
  NestingProvenance provenance = NestingProvenance::braid_geometric;
  LabeledState state;
  int qdeg = 0;

  template <class F>
  BnChain<F> chain() const {
    return expand<F>(state);
  }
};

inline BetaCycle beta(const OrientedDiagram& d, OrientationFlag o) {
  NestingAssignment na = nesting_parities(d, o);
  BetaCycle b;
  b.orientation = o;
  b.provenance = na.provenance;
  b.state.resolution = oriented_resolution(d).bits();
  for (int p : na.parity) b.state.labels.push_back(p == 0 ? Label::x_circ : Label::x_bullet);
  b.qdeg = d.writhe() - static_cast<int>(na.parity.size());
  return b;
}

// Plamenevskaya's cycle: every Seifert circle labeled X.
inline State psi(const OrientedDiagram& d) {
  auto r = oriented_resolution(d);
  int k = resolve(d, r).count;
  return State{r.bits(), (1u << k) - 1};
}

template <class F>
struct DivisibilityWitness {
  int k = 0;
  BnChain<F> x;  // beta = U^k x + d(w)
  BnChain<F> w;
  bool verified = false;
};

namespace detail {

template <class F>
BnChain<F> lift(const ChainComplex<F>& c, int degree, const SparseVec<F>& v, int q, int k) {
  BnChain<F> out;
  const auto& g = c.group(degree);
  for (auto& [j, a] : v) {
    int m = (g.qdeg[j] - q) / 2 - k;
    require(m >= 0 && (g.qdeg[j] - q) % 2 == 0, ErrorCode::internal, "lift below the filtration level");
    out[g.states[j]] += PolyU<F>::monomial(a, m);
  }
  return out;
}

// Divisibility of [beta] and [beta-bar] from one filtered reduction.
template <class F>
std::pair<DivisibilityWitness<F>, DivisibilityWitness<F>> divisibility_pair(const OrientedDiagram& d, int cap,
                                                                            bool witness) {
  BuildOptions opt;
  opt.crossing_cap = cap;
  opt.degrees = std::pair{-1, 1};
  ChainComplex<F> c(d, Theory::bn, opt);
  FilteredReduction<F> fr(c, 0, witness);
  BetaCycle b[2] = {beta(d, OrientationFlag::diagram), beta(d, OrientationFlag::reversed)};
  fr.add_columns_down_to(b[0].qdeg);
  DivisibilityWitness<F> out[2];
  for (int t = 0; t < 2; ++t) {
    auto chain = b[t].chain<F>();
    require(bn_differential(c.cube(), chain).empty(), ErrorCode::internal, "beta is not a cycle");
    int q = 0;
    auto v = slice_vector(c, chain, &q);
    SparseVec<F> used;
    auto rest = fr.reduce(v, witness ? &used : nullptr);
    require(!rest.empty(), ErrorCode::trivial_class, "beta class is trivial; divisibility unbounded");
    int lead = c.group(0).qdeg[rest.front().first];
    for (auto& [j, a] : rest) lead = std::min(lead, c.group(0).qdeg[j]);
    out[t].k = (lead - q) / 2;
    if (witness) {
      out[t].x = lift(c, 0, rest, q, out[t].k);
      out[t].w = lift(c, -1, used, q, 0);
      BnChain<F> rhs = scaled(out[t].x, PolyU<F>::u_power(out[t].k));
      add_to(rhs, bn_differential(c.cube(), out[t].w));
      out[t].verified = chains_equal(rhs, chain);
      require(out[t].verified, ErrorCode::internal, "divisibility witness failed to verify");
    }
  }
  return {out[0], out[1]};
}

}  // namespace detail

struct CPair {
  int c = 0, cbar = 0;
  NestingProvenance provenance = NestingProvenance::braid_geometric;
};

template <class F>
CPair c_invariants(const OrientedDiagram& d, int cap = default_crossing_cap) {
  auto [a, b] = detail::divisibility_pair<F>(d, cap, false);
  return {a.k, b.k, nesting_parities(d, OrientationFlag::diagram).provenance};
}

inline CPair c_invariants(const OrientedDiagram& d, FieldSpec f, int cap = default_crossing_cap) {
  return with_field(f, [&]<class F>() { return c_invariants<F>(d, cap); });
}

template <class F>
bool psi_trivial(const OrientedDiagram& d, int cap = default_crossing_cap) {
  BuildOptions opt;
  opt.crossing_cap = cap;
  opt.degrees = std::pair{-1, 1};
  ChainComplex<F> c(d, Theory::kh, opt);
  auto idx = c.index_of(psi(d));
  require(idx.has_value(), ErrorCode::internal, "psi outside the complex");
  return is_boundary(c, 0, SparseVec<F>{{*idx, F(1)}}).boundary;
}

struct SResult {
  int s = 0;
  int fdeg_minus = 0, fdeg_plus = 0, fdeg_o = 0, fdeg_reversed = 0;
};

template <class F>
SResult s_invariant(const OrientedDiagram& d, int cap = default_crossing_cap) {
  BuildOptions opt;
  opt.crossing_cap = cap;
  opt.degrees = std::pair{-1, 1};
  ChainComplex<F> c(d, Theory::tlee, opt);
  auto vo = at_u_one(c, beta(d, OrientationFlag::diagram).chain<F>());
  auto vr = at_u_one(c, beta(d, OrientationFlag::reversed).chain<F>());
  require(detail::is_cycle(c, 0, vo) && detail::is_cycle(c, 0, vr), ErrorCode::internal,
          "canonical generator is not a cycle");
  FilteredReduction<F> fr(c, 0);
  fr.add_all_columns();
  auto level = [&](const SparseVec<F>& v) {
    Fdeg f = fr.leading_qdeg(v);
    require(!f.infinite, ErrorCode::internal, "canonical generator class vanished");
    return f.value;
  };
  SResult r;
  r.fdeg_o = level(vo);
  r.fdeg_reversed = level(vr);
  auto diff = vo, sum = vo;
  axpy(diff, F(-1), vr);
  axpy(sum, F(1), vr);
  if (F::characteristic == 2) {
    require(r.fdeg_o == r.fdeg_reversed, ErrorCode::internal, "Fdeg of v_o and v_-o differ in characteristic 2");
    r.fdeg_minus = r.fdeg_plus = r.fdeg_o;
    r.s = 1 + r.fdeg_o;
    return r;
  }
  r.fdeg_minus = level(diff);
  r.fdeg_plus = level(sum);
  r.s = 1 + std::min(r.fdeg_minus, r.fdeg_plus);
  require(r.s == 1 + r.fdeg_o, ErrorCode::internal,
          "s disagrees with 1 + Fdeg[v_o]: " + std::to_string(r.s) + " vs " + std::to_string(1 + r.fdeg_o));
  return r;
}

inline int s_invariant(const OrientedDiagram& d, FieldSpec f, int cap = default_crossing_cap) {
  return with_field(f, [&]<class F>() { return s_invariant<F>(d, cap).s; });
}

struct FieldReport {
  FieldSpec field;
  int s = 0, c = 0, cbar = 0;
  bool psi_trivial = false;
  bool bennequin_c = false, bennequin_cbar = false;  // s >= w - V + 2c + 1
  bool theorem_lower = false;                        // c, cbar >= V- - l- + delta-
};

struct InvariantReport {
  Quantities q;
  BoundReport bounds;  // sharp flags from the first field
  std::optional<int> sl;
  NestingProvenance provenance = NestingProvenance::braid_geometric;
  std::vector<FieldReport> fields;

  bool bennequin_check() const {
    return std::all_of(fields.begin(), fields.end(), [](auto& f) { return f.bennequin_c && f.bennequin_cbar; });
  }
};

template <class F>
FieldReport field_report(const OrientedDiagram& d, const Quantities& q, int cap) {
  FieldReport r;
  r.field = FieldSpec{F::characteristic};
  r.s = s_invariant<F>(d, cap).s;
  auto cp = c_invariants<F>(d, cap);
  r.c = cp.c;
  r.cbar = cp.cbar;
  r.psi_trivial = psi_trivial<F>(d, cap);
  r.bennequin_c = r.s >= q.w - q.V + 2 * r.c + 1;
  r.bennequin_cbar = r.s >= q.w - q.V + 2 * r.cbar + 1;
  int lower = q.Vminus - q.lminus + q.deltaminus;
  r.theorem_lower = r.c >= lower && r.cbar >= lower;
  return r;
}

inline InvariantReport bennequin_report(const OrientedDiagram& d, const std::vector<FieldSpec>& fields,
                                        int cap = default_crossing_cap) {
  require(!fields.empty(), ErrorCode::invalid_argument, "no fields requested");
  InvariantReport rep;
  rep.q = quantities(d);
  rep.bounds = bounds(rep.q);
  if (d.layout()) rep.sl = d.writhe() - d.layout()->strands;
  rep.provenance = nesting_parities(d, OrientationFlag::diagram).provenance;
  for (auto f : fields)
    rep.fields.push_back(with_field(f, [&]<class F>() { return field_report<F>(d, rep.q, cap); }));
  rep.bounds.record_s(rep.fields.front().s);
  return rep;
}

// States of the combinatorial lemmas, for a subset of negative vertices.
template <class F>
class LemmaContext {
 public:
  explicit LemmaContext(const OrientedDiagram& d, int cap = default_crossing_cap)
      : d_(d), cube_(d, cap), g_(build_graph(d)), beta_(beta(d, OrientationFlag::diagram)) {
    r_ = beta_.state.resolution;
  }

  const OrientedDiagram& diagram() const { return d_; }
  const Cube& cube() const { return cube_; }
  const SeifertGraph& graph() const { return g_; }
  const BetaCycle& beta_cycle() const { return beta_; }

  bool negative(int v) const { return g_.vertex_class[v] == SignClass::negative; }

  // Labels of x(gamma): 1 on negative vertices outside gamma, beta labels elsewhere.
  std::vector<Label> x_labels(const std::vector<bool>& gamma) const {
    auto lab = beta_.state.labels;
    for (int v = 0; v < g_.vertex_count; ++v)
      if (negative(v) && !gamma[v]) lab[v] = Label::one;
    return lab;
  }
  static Label conjugate(Label l) {
    return l == Label::x_circ ? Label::x_bullet : l == Label::x_bullet ? Label::x_circ : l;
  }

  BnChain<F> x(const std::vector<bool>& gamma) const { return expand<F>({r_, x_labels(gamma)}); }
  BnChain<F> x_conj(const std::vector<bool>& gamma, int v0) const {
    auto lab = x_labels(gamma);
    lab[v0] = conjugate(lab[v0]);
    return expand<F>({r_, lab});
  }

  // Sign e with x(gamma) - x(gamma, v0) = e U x(gamma minus v0).
  int lemma_sign(int v0) const { return beta_.state.labels[v0] == Label::x_circ ? 1 : -1; }

  // The other endpoint of crossing c at v0.
  int across(int c, int v0) const {
    const auto& t = cube_.circles(r_).touch[c];
    return t[0] == v0 ? t[1] : t[0];
  }
  bool touches(int c, int v) const {
    const auto& t = cube_.circles(r_).touch[c];
    return t[0] == v || t[1] == v;
  }

  // y(gamma, v0, c), scaled so that d(y) = x(gamma, v0) exactly.
  BnChain<F> y(const std::vector<bool>& gamma, int v0, int c) const {
    require(touches(c, v0), ErrorCode::precondition, "crossing does not touch v0");
    int v = across(c, v0);
    require(v != v0, ErrorCode::precondition, "crossing joins v0 to itself");
    require(!(negative(v) && !gamma[v]), ErrorCode::precondition, "neighbor lies in the removed part of the negative subgraph");
    require(d_.sign(c) < 0, ErrorCode::precondition, "y needs a negative crossing");
    std::uint32_t s = r_ & ~(1u << c);
    const auto& cs = cube_.circles(s);
    auto lab = x_labels(gamma);
    lab[v0] = conjugate(lab[v0]);
    std::vector<Label> out(cs.count, Label::one);
    // Circles of s away from c correspond to circles of r_ through the shared arcs.
    const auto& cr = cube_.circles(r_);
    for (std::size_t a = 0; a < cr.arc_circle.size(); ++a) out[cs.arc_circle[a]] = lab[cr.arc_circle[a]];
    for (int j = 0; j < d_.free_loops(); ++j) out[cs.count - 1 - j] = lab[cr.count - 1 - j];
    int gamma_merged = cs.touch[c][0];
    out[gamma_merged] = beta_.state.labels[v];
    auto ychain = expand<F>({s, out});
    auto target = x_conj(gamma, v0);
    auto dy = bn_differential(cube_, ychain);
    if (chains_equal(dy, target)) return ychain;
    require(chains_equal(scaled(dy, PolyU<F>(F(-1))), target), ErrorCode::internal, "d(y) != ±x(gamma, v0)");
    return scaled(ychain, PolyU<F>(F(-1)));
  }

  // z(gamma, c) and y with x(gamma) = U y + d(z), for a negative edge between neutral vertices.
  std::pair<BnChain<F>, BnChain<F>> z(const std::vector<bool>& gamma, int c) const {
    const auto& t = cube_.circles(r_).touch[c];
    require(d_.sign(c) < 0, ErrorCode::precondition, "z needs a negative crossing");
    require(t[0] != t[1], ErrorCode::precondition, "crossing does not join two circles");
    auto e = g_.edge_between(t[0], t[1]);
    require(e && g_.edges[*e].cls == SignClass::negative, ErrorCode::precondition, "z needs a negative edge");
    require(g_.vertex_class[t[0]] == SignClass::neutral && g_.vertex_class[t[1]] == SignClass::neutral,
            ErrorCode::precondition, "z needs two neutral vertices");
    int vp = std::min(t[0], t[1]);
    std::uint32_t s = r_ & ~(1u << c);
    const auto& cs = cube_.circles(s);
    const auto& cr = cube_.circles(r_);
    auto lab = x_labels(gamma);
    std::vector<Label> out(cs.count, Label::one);
    for (std::size_t a = 0; a < cr.arc_circle.size(); ++a) out[cs.arc_circle[a]] = lab[cr.arc_circle[a]];
    for (int j = 0; j < d_.free_loops(); ++j) out[cs.count - 1 - j] = lab[cr.count - 1 - j];
    out[cs.touch[c][0]] = lab[vp];
    auto zchain = expand<F>({s, out});
    auto dz = bn_differential(cube_, zchain);
    auto xg = x(gamma);
    for (int sign : {1, -1}) {
      BnChain<F> rest = xg;
      add_to(rest, dz, PolyU<F>(F(-sign)));
      BnChain<F> yv;
      bool ok = true;
      for (auto& [st, p] : rest) {
        if (p.valuation() < 1) {
          ok = false;
          break;
        }
        yv[st] = p.shift_down(1);
      }
      if (ok) return {yv, scaled(zchain, PolyU<F>(F(sign)))};
    }
    fail(ErrorCode::internal, "x(gamma) - d(z) is not divisible by U");
  }

 private:
  OrientedDiagram d_;
  Cube cube_;
  SeifertGraph g_;
  BetaCycle beta_;
  std::uint32_t r_ = 0;
};

template <class F>
struct LemmaStates {
  BnChain<F> x, x_conj, x_removed;  // x(gamma), x(gamma, v0), x(gamma minus v0)
  int lemma_sign = 1;               // x - x_conj = sign U x_removed
  std::optional<BnChain<F>> y;      // d(y) = x_conj
  std::optional<BnChain<F>> z, zy;  // x = U zy + d(z)
};

template <class F>
LemmaStates<F> lemma_states(const LemmaContext<F>& ctx, const std::vector<int>& gamma_prime, int v0, int c) {
  const auto& g = ctx.graph();
  require(c >= 0 && c < ctx.diagram().crossing_count(), ErrorCode::invalid_argument, "crossing out of range");
  std::vector<bool> gamma(g.vertex_count, false);
  for (int v : gamma_prime) {
    require(v >= 0 && v < g.vertex_count, ErrorCode::invalid_argument, "vertex out of range");
    require(ctx.negative(v), ErrorCode::precondition, "Γ′ must consist of negative vertices");
    gamma[v] = true;
  }
  require(v0 >= 0 && v0 < g.vertex_count && gamma[v0], ErrorCode::precondition, "v0 must lie in Γ′");
  LemmaStates<F> r;
  r.x = ctx.x(gamma);
  r.x_conj = ctx.x_conj(gamma, v0);
  auto removed = gamma;
  removed[v0] = false;
  r.x_removed = ctx.x(removed);
  r.lemma_sign = ctx.lemma_sign(v0);
  bool y_ok = ctx.touches(c, v0) && ctx.across(c, v0) != v0 &&
              !(ctx.negative(ctx.across(c, v0)) && !gamma[ctx.across(c, v0)]);
  if (y_ok) r.y = ctx.y(gamma, v0, c);
  const auto& t = ctx.cube().circles(ctx.beta_cycle().state.resolution).touch[c];
  bool z_ok = t[0] != t[1] && g.vertex_class[t[0]] == SignClass::neutral &&
              g.vertex_class[t[1]] == SignClass::neutral && g.edges[*g.edge_between(t[0], t[1])].cls == SignClass::negative;
  if (z_ok) {
    auto [yy, zz] = ctx.z(gamma, c);
    r.zy = std::move(yy);
    r.z = std::move(zz);
  }
  require(y_ok || z_ok, ErrorCode::precondition, "crossing fits neither y (v0 to an admissible neighbor) nor z");
  return r;
}

template <class F>
LemmaStates<F> lemma_states(const OrientedDiagram& d, const std::vector<int>& gamma_prime, int v0, int c) {
  LemmaContext<F> ctx(d);
  return lemma_states(ctx, gamma_prime, v0, c);
}

template <class F>
struct DecompositionWitness {
  int k = 0;
  BnChain<F> y, z;
  std::vector<int> order;  // v1, ..., vm
  std::vector<int> roots;  // reserved roots v'
  bool verified = false;
};

template <class F>
DecompositionWitness<F> theorem_decomposition(const OrientedDiagram& d, int cap = default_crossing_cap) {
  LemmaContext<F> ctx(d, cap);
  const auto& g = ctx.graph();
  const int nv = g.vertex_count;
  Quantities q = quantities(g, d);
  DecompositionWitness<F> w;

  // Components of the negative subgraph, by lowest vertex id.
  std::vector<int> comp(nv, -1);
  int ncomp = 0;
  for (int v = 0; v < nv; ++v) {
    if (!ctx.negative(v) || comp[v] >= 0) continue;
    std::deque<int> queue{v};
    comp[v] = ncomp;
    while (!queue.empty()) {
      int a = queue.front();
      queue.pop_front();
      for (int b : g.neighbors[a])
        if (ctx.negative(b) && comp[b] < 0) {
          comp[b] = ncomp;
          queue.push_back(b);
        }
    }
    ++ncomp;
  }
  for (int k = 0; k < ncomp; ++k) {
    std::vector<int> members;
    for (int v = 0; v < nv; ++v)
      if (comp[v] == k) members.push_back(v);
    auto nonpure = std::find_if(members.begin(), members.end(), [&](int v) { return !g.pure[v]; });
    bool reserved = nonpure == members.end();
    int root = reserved ? members.front() : *nonpure;
    // Breadth-first spanning tree; neighbors are sorted so ties go by circle id.
    std::vector<int> dist(nv, -1), seq{root};
    dist[root] = 0;
    for (std::size_t i = 0; i < seq.size(); ++i)
      for (int b : g.neighbors[seq[i]])
        if (comp[b] == k && dist[b] < 0) {
          dist[b] = dist[seq[i]] + 1;
          seq.push_back(b);
        }
    // Farthest first, so each removed vertex still has its tree parent.
    std::stable_sort(seq.begin(), seq.end(), [&](int a, int b) { return dist[a] > dist[b]; });
    if (reserved) {
      seq.pop_back();
      w.roots.push_back(root);
    }
    w.order.insert(w.order.end(), seq.begin(), seq.end());
  }
  require(static_cast<int>(w.roots.size()) == q.lminus, ErrorCode::internal, "reserved roots do not match l-");

  std::vector<bool> gamma(nv);
  for (int v = 0; v < nv; ++v) gamma[v] = ctx.negative(v);
  const auto u = PolyU<F>::u_power(1);
  PolyU<F> coef(F(1));  // prod of lemma signs times U^(i-1)
  for (int v0 : w.order) {
    int c = -1;
    for (int cr = 0; cr < d.crossing_count() && c < 0; ++cr) {
      if (!ctx.touches(cr, v0)) continue;
      int v = ctx.across(cr, v0);
      if (v != v0 && !(ctx.negative(v) && !gamma[v])) c = cr;
    }
    require(c >= 0, ErrorCode::internal, "no admissible crossing for a lemma step");
    add_to(w.z, ctx.y(gamma, v0, c), coef);
    gamma[v0] = false;
    coef = coef * PolyU<F>(F(ctx.lemma_sign(v0))) * u;
  }
  w.k = static_cast<int>(w.order.size());
  BnChain<F> rest = ctx.x(gamma);
  if (q.deltaminus) {
    int c = -1;
    for (int cr = 0; cr < d.crossing_count() && c < 0; ++cr) {
      if (d.sign(cr) > 0) continue;
      const auto& t = ctx.cube().circles(ctx.beta_cycle().state.resolution).touch[cr];
      if (t[0] == t[1]) continue;
      if (g.vertex_class[t[0]] == SignClass::neutral && g.vertex_class[t[1]] == SignClass::neutral &&
          g.edges[*g.edge_between(t[0], t[1])].cls == SignClass::negative)
        c = cr;
    }
    require(c >= 0, ErrorCode::internal, "delta- set but no negative edge between neutral vertices");
    auto [yy, zz] = ctx.z(gamma, c);
    add_to(w.z, zz, coef);
    rest = std::move(yy);
    ++w.k;
  }
  // coef = ±U^m; the sign goes into y.
  w.y = scaled(rest, PolyU<F>(coef.lead()));
  require(w.k == q.Vminus - q.lminus + q.deltaminus, ErrorCode::internal, "exponent mismatch");

  BnChain<F> rhs = scaled(w.y, PolyU<F>::u_power(w.k));
  add_to(rhs, bn_differential(ctx.cube(), w.z));
  w.verified = chains_equal(rhs, ctx.beta_cycle().template chain<F>());
  require(w.verified, ErrorCode::internal, "decomposition identity failed");
  return w;
}

template <class F>
struct RowWitness {
  int index = 0;  // generator index i with only sigma_i^-1 present
  DivisibilityWitness<F> x, y;
};

template <class F>
std::optional<RowWitness<F>> negative_row_divisor(const BraidWord& b, int cap = default_crossing_cap) {
  std::optional<int> row;
  for (int i = 1; i < b.strands && !row; ++i) {
    bool neg = std::count(b.letters.begin(), b.letters.end(), -i) > 0;
    bool pos = std::count(b.letters.begin(), b.letters.end(), i) > 0;
    if (neg && !pos) row = i;
  }
  if (!row) return std::nullopt;
  auto d = braid_closure(b);
  auto [x, y] = detail::divisibility_pair<F>(d, cap, true);
  if (x.k < 1 || y.k < 1) return std::nullopt;
  RowWitness<F> r{*row, std::move(x), std::move(y)};
  // [beta] = U [U^(k-1) x]
  r.x.x = scaled(r.x.x, PolyU<F>::u_power(r.x.k - 1));
  r.y.x = scaled(r.y.x, PolyU<F>::u_power(r.y.k - 1));
  return r;
}

}  // namespace linkhom
