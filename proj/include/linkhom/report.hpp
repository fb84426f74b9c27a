#pragma once

#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "linkhom/homology.hpp"
#include "linkhom/invariants.hpp"
#include "linkhom/verify.hpp"

namespace linkhom {

inline constexpr int report_schema_version = 1;

enum class OutputFormat { table, json, csv };

inline OutputFormat parse_format(const std::string& s) {
  if (s == "table") return OutputFormat::table;
  if (s == "json") return OutputFormat::json;
  if (s == "csv") return OutputFormat::csv;
  fail(ErrorCode::parse, "unknown format '" + s + "' (table, json, csv)");
}

// Column order of the bounds CSV.
inline const std::vector<std::string>& bound_columns() {
  static const std::vector<std::string> cols = {"V",  "Vplus",     "Vminus",     "lplus",      "lminus",
                                                "splus", "sminus", "deltaminus", "ls",         "w",
                                                "cbound", "lobb_lower", "lobb_upper", "kawcav"};
  return cols;
}

inline std::vector<int> bound_values(const Quantities& q, const BoundReport& b) {
  return {q.V, q.Vplus, q.Vminus, q.lplus, q.lminus, q.splus, q.sminus, q.deltaminus, q.ls, q.w,
          b.cbound, b.lobb_lower, b.lobb_upper, b.kawcav};
}

inline nlohmann::ordered_json to_json(const Quantities& q) {
  nlohmann::ordered_json j;
  auto v = bound_values(q, {});
  for (std::size_t i = 0; i < 10; ++i) j[bound_columns()[i]] = v[i];
  j["l"] = q.l;
  return j;
}

inline nlohmann::ordered_json to_json(const BoundReport& b) {
  return {{"cbound", b.cbound}, {"lobb_lower", b.lobb_lower}, {"lobb_upper", b.lobb_upper}, {"kawcav", b.kawcav}};
}

inline nlohmann::ordered_json sharp_json(const BoundReport& b, int s) {
  return {{"cbound", s == b.cbound}, {"lobb_lower", s == b.lobb_lower}, {"lobb_upper", s == b.lobb_upper},
          {"kawcav", s == b.kawcav}};
}

inline std::string provenance_name(NestingProvenance p) {
  return p == NestingProvenance::braid_geometric ? "braid" : "two_coloring";
}

struct InputInfo {
  std::string kind;  // braid, file, builtin, family
  std::string text;
  int crossings = 0;
  int components = 0;
};

inline nlohmann::ordered_json envelope(const std::string& command, const InputInfo& in) {
  nlohmann::ordered_json j;
  j["schema"] = "linkhom-report";
  j["version"] = report_schema_version;
  j["command"] = command;
  j["input"] = {{"kind", in.kind}, {"text", in.text}, {"crossings", in.crossings}, {"components", in.components}};
  return j;
}

inline void write_bounds(std::ostream& os, OutputFormat fmt, const InputInfo& in, const Quantities& q,
                         const BoundReport& b) {
  auto vals = bound_values(q, b);
  const auto& cols = bound_columns();
  switch (fmt) {
    case OutputFormat::json: {
      auto j = envelope("bounds", in);
      j["quantities"] = to_json(q);
      j["bounds"] = to_json(b);
      os << j.dump(2) << "\n";
      break;
    }
    case OutputFormat::csv:
      for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
      os << "\n";
      for (std::size_t i = 0; i < vals.size(); ++i) os << (i ? "," : "") << vals[i];
      os << "\n";
      break;
    case OutputFormat::table:
      os << "input " << in.kind << " " << in.text << "\n";
      for (std::size_t i = 0; i < cols.size(); ++i) os << std::left << std::setw(12) << cols[i] << vals[i] << "\n";
      os << std::left << std::setw(12) << "l" << q.l << "\n";
      break;
  }
}

inline void write_invariants(std::ostream& os, OutputFormat fmt, const InputInfo& in, const InvariantReport& r) {
  switch (fmt) {
    case OutputFormat::json: {
      auto j = envelope("invariants", in);
      j["quantities"] = to_json(r.q);
      j["bounds"] = to_json(r.bounds);
      j["sl"] = r.sl ? nlohmann::ordered_json(*r.sl) : nlohmann::ordered_json(nullptr);
      j["nesting"] = provenance_name(r.provenance);
      j["fields"] = nlohmann::ordered_json::array();
      for (const auto& f : r.fields) {
        nlohmann::ordered_json e;
        e["field"] = f.field.name();
        e["s"] = f.s;
        e["c"] = f.c;
        e["cbar"] = f.cbar;
        e["psi_trivial"] = f.psi_trivial;
        e["bennequin_c"] = f.bennequin_c;
        e["bennequin_cbar"] = f.bennequin_cbar;
        e["c_lower_bound"] = f.theorem_lower;
        e["sharp"] = sharp_json(r.bounds, f.s);
        j["fields"].push_back(e);
      }
      j["bennequin_check"] = r.bennequin_check();
      os << j.dump(2) << "\n";
      break;
    }
    case OutputFormat::csv: {
      const auto& cols = bound_columns();
      for (const auto& c : cols) os << c << ",";
      os << "field,s,c,cbar,psi_trivial,bennequin_check\n";
      auto vals = bound_values(r.q, r.bounds);
      for (const auto& f : r.fields) {
        for (int v : vals) os << v << ",";
        os << f.field.name() << "," << f.s << "," << f.c << "," << f.cbar << "," << (f.psi_trivial ? 1 : 0) << ","
           << (f.bennequin_c && f.bennequin_cbar ? 1 : 0) << "\n";
      }
      break;
    }
    case OutputFormat::table: {
      os << "input " << in.kind << " " << in.text << "\n";
      os << "crossings " << in.crossings << "  components " << in.components << "  w " << r.q.w << "  V " << r.q.V;
      if (r.sl) os << "  sl " << *r.sl;
      os << "\n";
      os << "cbound " << r.bounds.cbound << "  lobb_lower " << r.bounds.lobb_lower << "  lobb_upper "
         << r.bounds.lobb_upper << "  kawcav " << r.bounds.kawcav << "\n";
      os << "field  s    c    cbar psi_trivial bennequin\n";
      for (const auto& f : r.fields)
        os << std::left << std::setw(7) << f.field.name() << std::setw(5) << f.s << std::setw(5) << f.c
           << std::setw(5) << f.cbar << std::setw(12) << (f.psi_trivial ? "yes" : "no")
           << (f.bennequin_c && f.bennequin_cbar ? "ok" : "VIOLATED") << "\n";
      break;
    }
  }
}

struct HomologyResult {
  Theory theory = Theory::kh;
  FieldSpec field;
  BigradedDims kh;              // Kh
  std::map<int, int> ranks;     // TLee
  std::map<int, std::vector<int>> free_qdegs;  // BN
  std::map<int, std::vector<std::pair<std::string, int>>> torsion;  // annihilator, qdeg
};

inline void write_homology(std::ostream& os, OutputFormat fmt, const InputInfo& in,
                           const std::vector<HomologyResult>& rs) {
  switch (fmt) {
    case OutputFormat::json: {
      auto j = envelope("homology", in);
      j["results"] = nlohmann::ordered_json::array();
      for (const auto& r : rs) {
        nlohmann::ordered_json e;
        e["theory"] = theory_name(r.theory);
        e["field"] = r.field.name();
        if (r.theory == Theory::kh) {
          e["dims"] = nlohmann::ordered_json::array();
          for (auto& [bd, n] : r.kh) e["dims"].push_back({{"i", bd.first}, {"q", bd.second}, {"dim", n}});
        } else if (r.theory == Theory::tlee) {
          e["ranks"] = nlohmann::ordered_json::array();
          for (auto& [i, n] : r.ranks) e["ranks"].push_back({{"i", i}, {"rank", n}});
        } else {
          e["degrees"] = nlohmann::ordered_json::array();
          for (auto& [i, qs] : r.free_qdegs) {
            nlohmann::ordered_json deg{{"i", i}, {"free_rank", qs.size()}, {"free_qdegs", qs}};
            deg["torsion"] = nlohmann::ordered_json::array();
            if (auto it = r.torsion.find(i); it != r.torsion.end())
              for (auto& [ann, q] : it->second) deg["torsion"].push_back({{"annihilator", ann}, {"qdeg", q}});
            e["degrees"].push_back(deg);
          }
        }
        j["results"].push_back(e);
      }
      os << j.dump(2) << "\n";
      break;
    }
    case OutputFormat::csv:
      for (const auto& r : rs) {
        if (r.theory == Theory::kh) {
          os << "theory,field,i,q,dim\n";
          for (auto& [bd, n] : r.kh) os << "kh," << r.field.name() << "," << bd.first << "," << bd.second << "," << n << "\n";
        } else if (r.theory == Theory::tlee) {
          os << "theory,field,i,rank\n";
          for (auto& [i, n] : r.ranks) os << "tlee," << r.field.name() << "," << i << "," << n << "\n";
        } else {
          os << "theory,field,i,kind,qdeg,annihilator\n";
          for (auto& [i, qs] : r.free_qdegs) {
            for (int q : qs) os << "bn," << r.field.name() << "," << i << ",free," << q << ",\n";
            if (auto it = r.torsion.find(i); it != r.torsion.end())
              for (auto& [ann, q] : it->second)
                os << "bn," << r.field.name() << "," << i << ",torsion," << q << "," << ann << "\n";
          }
        }
      }
      break;
    case OutputFormat::table:
      os << "input " << in.kind << " " << in.text << "\n";
      for (const auto& r : rs) {
        os << theory_name(r.theory) << " over " << r.field.name() << "\n";
        if (r.theory == Theory::kh) {
          for (auto& [bd, n] : r.kh) os << "  i=" << bd.first << " q=" << bd.second << " dim " << n << "\n";
        } else if (r.theory == Theory::tlee) {
          for (auto& [i, n] : r.ranks) os << "  i=" << i << " rank " << n << "\n";
        } else {
          for (auto& [i, qs] : r.free_qdegs) {
            os << "  i=" << i << " free rank " << qs.size();
            if (!qs.empty()) {
              os << " at q =";
              for (int q : qs) os << " " << q;
            }
            if (auto it = r.torsion.find(i); it != r.torsion.end())
              for (auto& [ann, q] : it->second) os << "; torsion F[U]/(" << ann << ") at q=" << q;
            os << "\n";
          }
        }
      }
      break;
  }
}

inline void write_verify(std::ostream& os, OutputFormat fmt, const VerifyConfig& cfg,
                         const std::vector<SuiteResult>& rs) {
  if (fmt == OutputFormat::json) {
    nlohmann::ordered_json j;
    j["schema"] = "linkhom-report";
    j["version"] = report_schema_version;
    j["command"] = "verify";
    j["seed"] = cfg.seed;
    j["suites"] = nlohmann::ordered_json::array();
    for (const auto& r : rs)
      j["suites"].push_back({{"name", r.name}, {"passed", r.passed()}, {"checks", r.checks}, {"failures", r.failures}});
    os << j.dump(2) << "\n";
    return;
  }
  if (fmt == OutputFormat::csv) {
    os << "suite,passed,checks,failures\n";
    for (const auto& r : rs) os << r.name << "," << (r.passed() ? 1 : 0) << "," << r.checks << "," << r.failures.size() << "\n";
    return;
  }
  for (const auto& r : rs) {
    os << (r.passed() ? "PASS " : "FAIL ") << r.name << " (" << r.checks << " checks)\n";
    for (const auto& f : r.failures) os << "  " << f << "\n";
  }
}

}  // namespace linkhom
