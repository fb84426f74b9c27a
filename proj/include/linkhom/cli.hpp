#pragma once

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "linkhom/diagram_io.hpp"
#include "linkhom/report.hpp"

namespace linkhom {

// Stable exit codes.
enum ExitCode : int {
  exit_ok = 0,
  exit_verify_failed = 1,
  exit_parse = 2,
  exit_regime = 3,
  exit_cap = 4,
  exit_nesting = 5,
  exit_internal = 6,
};

inline int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::parse:
    case ErrorCode::invalid_argument: return exit_parse;
    case ErrorCode::regime: return exit_regime;
    case ErrorCode::cap_exceeded: return exit_cap;
    case ErrorCode::nesting_undetermined: return exit_nesting;
    default: return exit_internal;
  }
}

inline constexpr int default_field_cap = 14;
inline constexpr int default_bn_rational_cap = 12;

struct RunConfig {
  std::string command;
  std::string braid, file, builtin, family;
  int k = 0, h = 0, r = 0, t = 0;
  std::string fields;  // comma list; empty = command default
  std::string format = "table";
  std::string theory = "kh";
  std::optional<int> max_crossings;
  std::uint64_t seed = 7;
  std::string suite = "all";
  int count = 0;
};

namespace detail {

inline std::vector<FieldSpec> parse_fields(const std::string& list, std::vector<FieldSpec> fallback) {
  if (list.empty()) return fallback;
  std::vector<FieldSpec> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto t = tokens(item);
    require(t.size() == 1, ErrorCode::parse, "bad field list '" + list + "'");
    out.push_back(parse_field(t[0]));
  }
  require(!out.empty(), ErrorCode::parse, "empty field list");
  return out;
}

// Cap for a computation: explicit flag, then LINKHOM_MAX_CROSSINGS, then the default.
inline int cap_for(const RunConfig& cfg, bool bn_over_q) {
  if (cfg.max_crossings) return *cfg.max_crossings;
  if (const char* env = std::getenv("LINKHOM_MAX_CROSSINGS"); env && *env) return parse_int(env, "LINKHOM_MAX_CROSSINGS");
  return bn_over_q ? default_bn_rational_cap : default_field_cap;
}

inline void check_cap(const OrientedDiagram& d, int cap) {
  require(d.crossing_count() <= cap, ErrorCode::cap_exceeded,
          "diagram has " + std::to_string(d.crossing_count()) + " crossings, above the cap of " + std::to_string(cap) +
              " (raise with --max-crossings or LINKHOM_MAX_CROSSINGS)");
}

inline std::pair<OrientedDiagram, InputInfo> load_input(const RunConfig& cfg) {
  int sources = !cfg.braid.empty() + !cfg.file.empty() + !cfg.builtin.empty() + !cfg.family.empty();
  require(sources == 1, ErrorCode::parse, "give exactly one of --braid, --file, --builtin, --family");
  InputInfo info;
  OrientedDiagram d;
  if (!cfg.braid.empty()) {
    auto b = parse_inline_braid(cfg.braid);
    d = braid_closure(b);
    info = {"braid", print_inline_braid(b)};
  } else if (!cfg.file.empty()) {
    d = read_diagram_file(cfg.file).diagram;
    info = {"file", cfg.file};
  } else if (!cfg.builtin.empty()) {
    auto b = builtin_braid(cfg.builtin);
    require(b.has_value(), ErrorCode::parse, "unknown builtin '" + cfg.builtin + "'");
    d = braid_closure(*b);
    info = {"builtin", cfg.builtin};
  } else if (cfg.family == "U") {
    d = generate_U(cfg.k, cfg.h);
    info = {"family", "U(" + std::to_string(cfg.k) + "," + std::to_string(cfg.h) + ")"};
  } else if (cfg.family == "D") {
    d = generate_D(cfg.r, cfg.k, cfg.t);
    info = {"family", "D(" + std::to_string(cfg.r) + "," + std::to_string(cfg.k) + "," + std::to_string(cfg.t) + ")"};
  } else {
    fail(ErrorCode::parse, "unknown family '" + cfg.family + "' (U, D)");
  }
  info.crossings = d.crossing_count();
  info.components = d.component_count();
  return {d, info};
}

inline int cmd_bounds(const RunConfig& cfg, std::ostream& out) {
  auto [d, info] = load_input(cfg);
  auto q = quantities(d);
  write_bounds(out, parse_format(cfg.format), info, q, bounds(q));
  return exit_ok;
}

inline int cmd_invariants(const RunConfig& cfg, std::ostream& out) {
  auto [d, info] = load_input(cfg);
  auto fields = parse_fields(cfg.fields, {{2}, {0}});
  auto fmt = parse_format(cfg.format);
  for (auto f : fields) check_cap(d, cap_for(cfg, f.is_rational()));
  nesting_parities(d, OrientationFlag::diagram);
  auto rep = bennequin_report(d, fields, cap_for(cfg, false));
  write_invariants(out, fmt, info, rep);
  return exit_ok;
}

inline int cmd_homology(const RunConfig& cfg, std::ostream& out) {
  auto [d, info] = load_input(cfg);
  Theory th = parse_theory(cfg.theory);
  auto fields = parse_fields(cfg.fields, {{0}});
  auto fmt = parse_format(cfg.format);
  std::vector<HomologyResult> rs;
  for (auto f : fields) {
    int cap = cap_for(cfg, th == Theory::bn && f.is_rational());
    check_cap(d, cap);
    BuildOptions opt;
    opt.crossing_cap = cap;
    rs.push_back(with_field(f, [&]<class F>() {
      HomologyResult r;
      r.theory = th;
      r.field = f;
      ChainComplex<F> c(d, th, opt);
      if (th == Theory::kh) {
        r.kh = homology_field(c);
      } else if (th == Theory::tlee) {
        r.ranks = homology_ranks(c);
      } else {
        auto m = homology_BN(c);
        for (auto& [i, dm] : m.degrees) {
          r.free_qdegs[i] = dm.free_qdegs;
          for (auto& t : dm.torsion) r.torsion[i].push_back({t.annihilator.str(), t.qdeg});
        }
      }
      return r;
    }));
  }
  write_homology(out, fmt, info, rs);
  return exit_ok;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  VerifyConfig vc;
  vc.seed = cfg.seed;
  vc.count = cfg.count;
  vc.max_crossings = cfg.max_crossings.value_or(0);
  vc.fields = parse_fields(cfg.fields, {{2}, {0}});
  std::vector<SuiteResult> rs;
  bool known = cfg.suite == "all";
  for (const auto& [name, fn] : suites())
    if (cfg.suite == "all" || cfg.suite == name) {
      known = true;
      rs.push_back(fn(vc));
    }
  require(known, ErrorCode::parse, "unknown suite '" + cfg.suite + "'");
  write_verify(out, parse_format(cfg.format), vc, rs);
  for (const auto& r : rs)
    if (!r.passed()) return exit_verify_failed;
  return exit_ok;
}

inline void add_input_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--braid", cfg.braid, "inline braid \"n: w1 w2 ...\"");
  sub->add_option("--file", cfg.file, "diagram file (pd or braid text form)");
  sub->add_option("--builtin", cfg.builtin, "builtin diagram name");
  sub->add_option("--family", cfg.family, "generated family: U or D");
  sub->add_option("--k", cfg.k, "family parameter k");
  sub->add_option("--h", cfg.h, "family parameter h (U)");
  sub->add_option("--r", cfg.r, "family parameter r (D)");
  sub->add_option("--t", cfg.t, "family parameter t (D)");
  sub->add_option("--format", cfg.format, "table, json or csv");
}

}  // namespace detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"linkhom: Khovanov-type homologies, beta cycles, c and s invariants"};
  app.set_help_flag("--help", "print help");
  app.require_subcommand(1);
  auto* b = app.add_subcommand("bounds", "Seifert-graph quantities and bounds");
  auto* inv = app.add_subcommand("invariants", "s, c, c-bar and psi per field");
  auto* hom = app.add_subcommand("homology", "homology of a diagram");
  auto* ver = app.add_subcommand("verify", "randomized property suites");
  for (auto* sub : {b, inv, hom}) detail::add_input_options(sub, cfg);
  for (auto* sub : {inv, hom, ver}) {
    sub->add_option("--fields", cfg.fields, "comma list of characteristics (2,3,5,7,11,13; 0 = Q)");
    sub->add_option("--max-crossings", cfg.max_crossings, "crossing cap");
  }
  hom->add_option("--theory", cfg.theory, "kh, tlee or bn");
  ver->add_option("--suite", cfg.suite, "suite name or all");
  ver->add_option("--seed", cfg.seed, "corpus seed");
  ver->add_option("--count", cfg.count, "corpus size (0 = suite default)");
  ver->add_option("--format", cfg.format, "table, json or csv");

  std::vector<const char*> argv{"linkhom"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? exit_ok : exit_parse;
  }
  try {
    if (b->parsed()) return detail::cmd_bounds(cfg, out);
    if (inv->parsed()) return detail::cmd_invariants(cfg, out);
    if (hom->parsed()) return detail::cmd_homology(cfg, out);
    return detail::cmd_verify(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
}

}  // namespace linkhom
