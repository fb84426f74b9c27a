#pragma once

#include <chrono>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "linkhom/diagram_io.hpp"
#include "linkhom/invariants.hpp"
#include "linkhom/random.hpp"

namespace linkhom {

struct SuiteResult {
  std::string name;
  long checks = 0;
  std::vector<std::string> failures;  // minimal witnesses: braid, field, property
  double seconds = 0;
  bool passed() const { return failures.empty(); }
};

struct VerifyConfig {
  std::uint64_t seed = 7;
  int count = 0;          // 0: suite default
  int max_crossings = 0;  // 0: suite default
  std::vector<FieldSpec> fields{{2}, {0}};
  int cap = default_crossing_cap;
};

namespace detail {

class Recorder {
 public:
  explicit Recorder(std::string name) : start_(std::chrono::steady_clock::now()) { r_.name = std::move(name); }

  void check(bool ok, const std::function<std::string()>& witness) {
    ++r_.checks;
    if (!ok) r_.failures.push_back(witness());
  }
  // Runs fn; a thrown Error becomes a failure with the given context.
  template <class Fn>
  void guard(const std::string& context, Fn&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      ++r_.checks;
      r_.failures.push_back(context + ": error: " + e.what());
    }
  }
  SuiteResult finish() {
    r_.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return std::move(r_);
  }

 private:
  SuiteResult r_;
  std::chrono::steady_clock::time_point start_;
};

inline std::string tag(const BraidWord& b) { return "braid \"" + print_inline_braid(b) + "\""; }
inline std::string tag(const BraidWord& b, FieldSpec f) { return tag(b) + " field " + f.name(); }

inline int pick(int v, int fallback) { return v > 0 ? v : fallback; }

inline bool homogeneous(const BraidWord& b, int sign) {
  return std::all_of(b.letters.begin(), b.letters.end(), [&](int l) { return l * sign > 0; });
}

// Compares the BN differential at U = 0 (resp. U = 1) with the Kh (resp. TLee) one.
template <class F>
bool specializes(const ChainComplex<F>& bn, const ChainComplex<F>& other, Specialization s) {
  for (int i = bn.min_degree(); i < bn.max_degree(); ++i)
    for (int j = 0; j < bn.group(i).size(); ++j) {
      std::map<int, F> acc;
      auto [b, e] = bn.column(i, j);
      for (auto p = b; p != e; ++p)
        if (s == Specialization::u_to_1 || p->upow == 0) acc[p->row] += p->coef;
      SparseVec<F> lhs;
      for (auto& [r, a] : acc)
        if (!a.is_zero()) lhs.push_back({r, a});
      if (lhs != column_vec(other, i, j)) return false;
    }
  return true;
}

}  // namespace detail

// d^2 = 0 in all theories and fields, beta cycles, nesting coloring,
// specialization of the BN differential, Euler characteristic.
inline SuiteResult suite_structural(const VerifyConfig& cfg) {
  detail::Recorder rec("structural");
  auto corpus = random_corpus(cfg.seed, detail::pick(cfg.count, 200), detail::pick(cfg.max_crossings, 10));
  const std::vector<FieldSpec> fields{{2}, {3}, {0}};
  for (const auto& b : corpus) {
    auto d = braid_closure(b);
    rec.guard(detail::tag(b), [&] {
      auto o = nesting_parities(d, OrientationFlag::diagram);
      auto r = nesting_parities(d, OrientationFlag::reversed);
      CircleSet cs = resolve(d, oriented_resolution(d));
      bool proper = true, opposite = true;
      for (int c = 0; c < d.crossing_count(); ++c) proper &= o.parity[cs.touch[c][0]] != o.parity[cs.touch[c][1]];
      for (std::size_t v = 0; v < o.parity.size(); ++v) opposite &= o.parity[v] != r.parity[v];
      rec.check(proper && opposite, [&] { return detail::tag(b) + ": nesting parities are not a bipartite coloring"; });
    });
    for (auto f : fields) {
      rec.guard(detail::tag(b, f), [&] {
        with_field(f, [&]<class F>() {
          BuildOptions opt;
          opt.crossing_cap = cfg.cap;
          opt.verify_up_to = 0;
          ChainComplex<F> kh(d, Theory::kh, opt), tl(d, Theory::tlee, opt), bn(d, Theory::bn, opt);
          for (auto* c : {&kh, &tl, &bn}) {
            auto w = c->d_squared_witness();
            rec.check(!w, [&] { return detail::tag(b, f) + " theory " + theory_name(c->theory()) + ": " + *w; });
            rec.check(c->verify_graded(),
                      [&] { return detail::tag(b, f) + " theory " + theory_name(c->theory()) + ": grading violated"; });
          }
          for (auto o : {OrientationFlag::diagram, OrientationFlag::reversed}) {
            auto beta_chain = beta(d, o).template chain<F>();
            rec.check(bn_differential(bn.cube(), beta_chain).empty(), [&] {
              return detail::tag(b, f) + ": d(beta" + std::string(o == OrientationFlag::reversed ? "-bar" : "") +
                     ") != 0";
            });
          }
          rec.check(detail::specializes(bn, kh, Specialization::u_to_0),
                    [&] { return detail::tag(b, f) + ": BN at U=0 differs from Kh"; });
          rec.check(detail::specializes(bn, tl, Specialization::u_to_1),
                    [&] { return detail::tag(b, f) + ": BN at U=1 differs from TLee"; });
          rec.check(euler_characteristic(homology_field(kh)) == euler_characteristic(chain_dims(kh)),
                    [&] { return detail::tag(b, f) + ": graded Euler characteristic mismatch"; });
          return 0;
        });
      });
    }
  }
  return rec.finish();
}

// c, c-bar >= V- - l- + delta-, and the constructive witness with that exponent.
inline SuiteResult suite_theorem11(const VerifyConfig& cfg) {
  detail::Recorder rec("theorem11");
  auto corpus = random_corpus(cfg.seed, detail::pick(cfg.count, 100), detail::pick(cfg.max_crossings, 9));
  for (const auto& b : corpus) {
    auto d = braid_closure(b);
    Quantities q = quantities(d);
    int lower = q.Vminus - q.lminus + q.deltaminus;
    for (auto f : cfg.fields) {
      rec.guard(detail::tag(b, f), [&] {
        auto cp = c_invariants(d, f, cfg.cap);
        rec.check(cp.c >= lower && cp.cbar >= lower, [&] {
          return detail::tag(b, f) + ": c=" + std::to_string(cp.c) + " cbar=" + std::to_string(cp.cbar) +
                 " below V- - l- + delta- = " + std::to_string(lower);
        });
        with_field(f, [&]<class F>() {
          auto w = theorem_decomposition<F>(d, cfg.cap);
          rec.check(w.verified && w.k == lower, [&] {
            return detail::tag(b, f) + ": decomposition exponent " + std::to_string(w.k) + " expected " +
                   std::to_string(lower);
          });
          return 0;
        });
      });
    }
  }
  return rec.finish();
}

// s >= w - V + 2c + 1 (and with c-bar); c >= 1 with a verified witness on negative rows.
inline SuiteResult suite_bennequin(const VerifyConfig& cfg) {
  detail::Recorder rec("bennequin");
  auto corpus = random_corpus(cfg.seed, detail::pick(cfg.count, 100), detail::pick(cfg.max_crossings, 9));
  for (const auto& b : corpus) {
    auto d = braid_closure(b);
    Quantities q = quantities(d);
    for (auto f : cfg.fields) {
      rec.guard(detail::tag(b, f), [&] {
        int s = s_invariant(d, f, cfg.cap);
        auto cp = c_invariants(d, f, cfg.cap);
        for (auto [name, c] : {std::pair{"c", cp.c}, std::pair{"cbar", cp.cbar}}) {
          int rhs = q.w - q.V + 2 * c + 1;
          rec.check(s >= rhs, [&] {
            return detail::tag(b, f) + ": s=" + std::to_string(s) + " < w - V + 2" + name + " + 1 = " +
                   std::to_string(rhs);
          });
        }
        with_field(f, [&]<class F>() {
          auto row = negative_row_divisor<F>(b, cfg.cap);
          bool has_row = false;
          for (int i = 1; i < b.strands; ++i) {
            bool neg = std::count(b.letters.begin(), b.letters.end(), -i) > 0;
            bool pos = std::count(b.letters.begin(), b.letters.end(), i) > 0;
            has_row |= neg && !pos;
          }
          if (has_row) {
            rec.check(cp.c >= 1 && cp.cbar >= 1,
                      [&] { return detail::tag(b, f) + ": negative row but c or cbar is 0"; });
            rec.check(row.has_value() && row->x.verified && row->y.verified,
                      [&] { return detail::tag(b, f) + ": negative row witness missing"; });
          }
          return 0;
        });
      });
    }
  }
  return rec.finish();
}

// Identities of the combinatorial lemmas, checked by chain arithmetic.
inline SuiteResult suite_lemma52(const VerifyConfig& cfg) {
  detail::Recorder rec("lemma52");
  const int want = detail::pick(cfg.count, 50);
  BraidSampler sampler(cfg.seed);
  int found = 0;
  for (int attempt = 0; found < want && attempt < 100 * want; ++attempt) {
    BraidWord b = sampler.braid(4, 1, detail::pick(cfg.max_crossings, 9));
    auto d = braid_closure(b);
    Quantities q = quantities(d);
    if (q.Vminus == 0) continue;
    ++found;
    for (auto f : cfg.fields) {
      rec.guard(detail::tag(b, f), [&] {
        with_field(f, [&]<class F>() {
          LemmaContext<F> ctx(d, cfg.cap);
          const auto& g = ctx.graph();
          auto w = theorem_decomposition<F>(d, cfg.cap);
          // Stages of the removal sequence: Gamma_0 = all negative vertices, then one removal at a time.
          std::vector<int> gamma;
          for (int v = 0; v < g.vertex_count; ++v)
            if (ctx.negative(v)) gamma.push_back(v);
          std::vector<std::vector<int>> stages{gamma};
          for (int v : w.order) {
            std::erase(gamma, v);
            stages.push_back(gamma);
          }
          const auto u = PolyU<F>::u_power(1);
          for (const auto& stage : stages) {
            for (int v0 : stage)
              for (int c = 0; c < d.crossing_count(); ++c) {
                if (!ctx.touches(c, v0) || ctx.across(c, v0) == v0) continue;
                int v = ctx.across(c, v0);
                if (ctx.negative(v) && std::find(stage.begin(), stage.end(), v) == stage.end()) continue;
                auto st = lemma_states(ctx, stage, v0, c);
                BnChain<F> diff = st.x;
                add_to(diff, st.x_conj, PolyU<F>(F(-1)));
                rec.check(chains_equal(diff, scaled(st.x_removed, PolyU<F>(F(st.lemma_sign)) * u)), [&] {
                  return detail::tag(b, f) + ": x - x(v0) != ±U x(minus v0) at v0=" + std::to_string(v0);
                });
                rec.check(st.y && chains_equal(bn_differential(ctx.cube(), *st.y), st.x_conj), [&] {
                  return detail::tag(b, f) + ": d(y) != x(v0) at v0=" + std::to_string(v0) + " c=" +
                         std::to_string(c);
                });
              }
            if (q.deltaminus)
              for (int c = 0; c < d.crossing_count(); ++c) {
                const auto& t = ctx.cube().circles(ctx.beta_cycle().state.resolution).touch[c];
                if (d.sign(c) > 0 || t[0] == t[1]) continue;
                if (g.vertex_class[t[0]] != SignClass::neutral || g.vertex_class[t[1]] != SignClass::neutral) continue;
                if (g.edges[*g.edge_between(t[0], t[1])].cls != SignClass::negative) continue;
                std::vector<bool> mask(g.vertex_count, false);
                for (int v : stage) mask[v] = true;
                auto [y, z] = ctx.z(mask, c);
                BnChain<F> rhs = scaled(y, u);
                add_to(rhs, bn_differential(ctx.cube(), z));
                rec.check(chains_equal(rhs, ctx.x(mask)),
                          [&] { return detail::tag(b, f) + ": x != U y + d z at c=" + std::to_string(c); });
              }
          }
          return 0;
        });
      });
    }
  }
  rec.check(found == want, [&] { return "only " + std::to_string(found) + " braids with negative vertices found"; });
  return rec.finish();
}

// Conjugation, braid relations and stabilizations.
inline SuiteResult suite_markov(const VerifyConfig& cfg) {
  detail::Recorder rec("markov");
  auto corpus = random_corpus(cfg.seed, detail::pick(cfg.count, 30), detail::pick(cfg.max_crossings, 8));
  for (const auto& b : corpus) {
    auto moves = markov_moves(b);
    for (auto f : cfg.fields) {
      rec.guard(detail::tag(b, f), [&] {
        auto d = braid_closure(b);
        int s = s_invariant(d, f, cfg.cap);
        auto cp = c_invariants(d, f, cfg.cap);
        auto same = [&](const BraidWord& b2, const std::string& move) {
          auto d2 = braid_closure(b2);
          int s2 = s_invariant(d2, f, cfg.cap);
          auto c2 = c_invariants(d2, f, cfg.cap);
          rec.check(s2 == s && c2.c == cp.c && c2.cbar == cp.cbar, [&] {
            return detail::tag(b, f) + ": " + move + " to " + detail::tag(b2) + " changed (s,c,cbar) from (" +
                   std::to_string(s) + "," + std::to_string(cp.c) + "," + std::to_string(cp.cbar) + ") to (" +
                   std::to_string(s2) + "," + std::to_string(c2.c) + "," + std::to_string(c2.cbar) + ")";
          });
        };
        for (int i = 1; i < b.strands; ++i) same(moves.conjugate(i), "conjugation");
        for (const auto& b2 : moves.braid_relation_variants()) same(b2, "braid relation");
        same(moves.stabilize_positive(), "positive stabilization");
        auto dn = braid_closure(moves.stabilize_negative());
        int sn = s_invariant(dn, f, cfg.cap);
        auto cn = c_invariants(dn, f, cfg.cap);
        rec.check(sn == s && cn.c == cp.c + 1 && cn.cbar == cp.cbar + 1, [&] {
          return detail::tag(b, f) + ": negative stabilization gave (s,c,cbar) = (" + std::to_string(sn) + "," +
                 std::to_string(cn.c) + "," + std::to_string(cn.cbar) + ") from (" + std::to_string(s) + "," +
                 std::to_string(cp.c) + "," + std::to_string(cp.cbar) + ")";
        });
      });
    }
  }
  return rec.finish();
}

inline std::vector<BraidWord> almost_positive_battery() {
  return {{2, {1, 1, 1, -1}}, {3, {1, 1, -2, 1, 2}},     {3, {1, 2, 1, 2, -1, 2}},  {3, {1, 1, 1, 2, -1, 2, 2}},
          {3, {-1, 2, 1, 2, 2}}, {3, {1, 1, 2, 2, 2, -1, 2}}, {4, {1, 2, 3, 1, -2, 3}}, {3, {1, 1, 1, 1, 2, -1, 2}}};
}

// cbound = s on positive and negative closures; the almost-positive formula.
inline SuiteResult suite_sharpness(const VerifyConfig& cfg) {
  detail::Recorder rec("sharpness");
  const int maxc = detail::pick(cfg.max_crossings, 9);
  auto corpus = random_corpus(cfg.seed, detail::pick(cfg.count, 100), maxc);
  BraidSampler sampler(cfg.seed + 1);
  for (int i = 0; i < 15; ++i) {
    corpus.push_back(sampler.homogeneous_braid(4, 1, maxc, 1));
    corpus.push_back(sampler.homogeneous_braid(4, 1, maxc, -1));
  }
  int homogeneous = 0;
  for (const auto& b : corpus) {
    if (!detail::homogeneous(b, 1) && !detail::homogeneous(b, -1)) continue;
    ++homogeneous;
    auto d = braid_closure(b);
    int cb = bounds(quantities(d)).cbound;
    for (auto f : cfg.fields)
      rec.guard(detail::tag(b, f), [&] {
        int s = s_invariant(d, f, cfg.cap);
        rec.check(s == cb, [&] {
          return detail::tag(b, f) + ": s=" + std::to_string(s) + " but cbound=" + std::to_string(cb);
        });
      });
  }
  int almost = 0;
  for (const auto& b : almost_positive_battery()) {
    auto d = braid_closure(b);
    auto predicted = almost_positive_check(d);
    if (!predicted) continue;
    ++almost;
    for (auto f : cfg.fields)
      rec.guard(detail::tag(b, f), [&] {
        int s = s_invariant(d, f, cfg.cap);
        rec.check(s == *predicted, [&] {
          return detail::tag(b, f) + ": almost-positive s=" + std::to_string(s) + " predicted " +
                 std::to_string(*predicted);
        });
      });
  }
  rec.check(homogeneous > 0, [] { return "no positive or negative braids in the corpus"; });
  rec.check(almost >= 5, [&] { return "only " + std::to_string(almost) + " almost-positive closures"; });
  return rec.finish();
}

// Disjoint union, connected sum, mirror bounds and psi-triviality.
inline SuiteResult suite_sproperties(const VerifyConfig& cfg) {
  detail::Recorder rec("sproperties");
  auto corpus = random_corpus(cfg.seed, detail::pick(cfg.count, 20), detail::pick(cfg.max_crossings, 4), 3);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& b1 = corpus[i];
    const auto& b2 = corpus[(i + 1) % corpus.size()];
    auto d1 = braid_closure(b1), d2 = braid_closure(b2);
    for (auto f : cfg.fields)
      rec.guard(detail::tag(b1, f) + " with " + detail::tag(b2), [&] {
        int s1 = s_invariant(d1, f, cfg.cap), s2 = s_invariant(d2, f, cfg.cap);
        int su = s_invariant(disjoint_union(d1, d2), f, cfg.cap);
        rec.check(su == s1 + s2 - 1, [&] {
          return detail::tag(b1, f) + " with " + detail::tag(b2) + ": s(union)=" + std::to_string(su);
        });
        if (d1.component_count() == 1 && d2.component_count() == 1 && d1.crossing_count() > 0 &&
            d2.crossing_count() > 0) {
          int sc = s_invariant(connected_sum(d1, d1.arc_label(0), d2, d2.arc_label(0)), f, cfg.cap);
          rec.check(sc == s1 + s2, [&] {
            return detail::tag(b1, f) + " # " + detail::tag(b2) + ": s(sum)=" + std::to_string(sc);
          });
        }
        int sm = s_invariant(mirror(d1), f, cfg.cap);
        int l = d1.component_count();
        rec.check(2 - 2 * l <= s1 + sm && s1 + sm <= 2,
                  [&] { return detail::tag(b1, f) + ": s + s(mirror) = " + std::to_string(s1 + sm); });
        auto cp = c_invariants(d1, f, cfg.cap);
        bool trivial = with_field(f, [&]<class F>() { return psi_trivial<F>(d1, cfg.cap); });
        rec.check(trivial == (std::min(cp.c, cp.cbar) >= 1),
                  [&] { return detail::tag(b1, f) + ": psi triviality disagrees with min(c, cbar) >= 1"; });
      });
  }
  return rec.finish();
}

inline const std::vector<std::pair<std::string, std::function<SuiteResult(const VerifyConfig&)>>>& suites() {
  static const std::vector<std::pair<std::string, std::function<SuiteResult(const VerifyConfig&)>>> all = {
      {"structural", suite_structural}, {"theorem11", suite_theorem11}, {"bennequin", suite_bennequin},
      {"lemma52", suite_lemma52},       {"markov", suite_markov},       {"sharpness", suite_sharpness},
      {"sproperties", suite_sproperties},
  };
  return all;
}

}  // namespace linkhom
