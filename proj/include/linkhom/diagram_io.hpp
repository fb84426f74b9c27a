#pragma once

#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "linkhom/diagram.hpp"

namespace linkhom {

// Text forms:
//   pd <n>                 followed by n lines "X[a,b,c,d] +1" and an optional "loops <k>"
//   braid <n> w1 w2 ...
// Inline braids are written "n: w1 w2 ...".

namespace detail {

inline std::vector<std::string> content_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
    std::size_t i = 0;
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i < line.size()) out.push_back(line.substr(i));
  }
  return out;
}

inline int parse_int(const std::string& tok, const std::string& what) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(tok, &used);
  } catch (const std::exception&) {
    fail(ErrorCode::parse, "expected an integer for " + what + ", got '" + tok + "'");
  }
  require(used == tok.size(), ErrorCode::parse, "expected an integer for " + what + ", got '" + tok + "'");
  return v;
}

inline std::vector<std::string> tokens(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

inline Crossing parse_crossing(const std::string& line) {
  require(line.rfind("X[", 0) == 0, ErrorCode::parse, "crossing line must start with X[: '" + line + "'");
  auto close = line.find(']');
  require(close != std::string::npos, ErrorCode::parse, "missing ] in '" + line + "'");
  Crossing x;
  std::string inner = line.substr(2, close - 2);
  std::istringstream in(inner);
  std::string part;
  int k = 0;
  while (std::getline(in, part, ',')) {
    require(k < 4, ErrorCode::parse, "crossing has more than four arcs: '" + line + "'");
    auto t = tokens(part);
    require(t.size() == 1, ErrorCode::parse, "bad arc entry in '" + line + "'");
    x.arcs[k++] = parse_int(t[0], "arc id");
  }
  require(k == 4, ErrorCode::parse, "crossing needs four arcs: '" + line + "'");
  auto rest = tokens(line.substr(close + 1));
  require(rest.size() == 1, ErrorCode::parse, "crossing needs a sign: '" + line + "'");
  int s = parse_int(rest[0], "sign");
  require(s == 1 || s == -1, ErrorCode::parse, "sign must be +1 or -1: '" + line + "'");
  x.sign = s;
  return x;
}

}  // namespace detail

inline std::string print_pd(const OrientedDiagram& d) {
  std::ostringstream out;
  out << "pd " << d.crossing_count() << "\n";
  for (const auto& x : d.crossings())
    out << "X[" << x.arcs[0] << "," << x.arcs[1] << "," << x.arcs[2] << "," << x.arcs[3] << "] "
        << (x.sign > 0 ? "+1" : "-1") << "\n";
  if (d.free_loops() > 0) out << "loops " << d.free_loops() << "\n";
  return out.str();
}

inline OrientedDiagram parse_pd(const std::string& text) {
  auto lines = detail::content_lines(text);
  require(!lines.empty(), ErrorCode::parse, "empty diagram text");
  auto head = detail::tokens(lines[0]);
  require(head.size() == 2 && head[0] == "pd", ErrorCode::parse, "expected header 'pd <n>'");
  int n = detail::parse_int(head[1], "crossing count");
  require(n >= 0, ErrorCode::parse, "negative crossing count");
  std::vector<Crossing> xs;
  int loops = 0;
  std::size_t i = 1;
  for (; i < lines.size() && static_cast<int>(xs.size()) < n; ++i) xs.push_back(detail::parse_crossing(lines[i]));
  require(static_cast<int>(xs.size()) == n, ErrorCode::parse,
          "header announces " + std::to_string(n) + " crossings, found " + std::to_string(xs.size()));
  if (i < lines.size()) {
    auto t = detail::tokens(lines[i]);
    require(t.size() == 2 && t[0] == "loops", ErrorCode::parse, "unexpected line '" + lines[i] + "'");
    loops = detail::parse_int(t[1], "loop count");
    require(loops >= 0, ErrorCode::parse, "negative loop count");
    ++i;
  }
  require(i == lines.size(), ErrorCode::parse, "trailing content after the diagram");
  require(n > 0 || loops > 0, ErrorCode::parse, "a 0-crossing diagram needs 'loops <k>' with k >= 1");
  OrientedDiagram d;
  try {
    d = OrientedDiagram(std::move(xs), loops);
  } catch (const Error& e) {
    fail(ErrorCode::parse, e.what());
  }
  auto rep = d.validate();
  if (!rep.ok) {
    std::string msg = "invalid diagram:";
    for (auto& s : rep.issues) msg += " " + s + ";";
    fail(ErrorCode::parse, msg);
  }
  return d;
}

inline std::string print_braid(const BraidWord& b) {
  std::string s = "braid " + std::to_string(b.strands);
  for (int l : b.letters) s += " " + std::to_string(l);
  return s + "\n";
}

namespace detail {
inline BraidWord braid_from_tokens(const std::vector<std::string>& t, std::size_t first) {
  require(first < t.size(), ErrorCode::parse, "braid needs a strand count");
  BraidWord b;
  b.strands = parse_int(t[first], "strand count");
  for (std::size_t i = first + 1; i < t.size(); ++i) b.letters.push_back(parse_int(t[i], "braid letter"));
  try {
    b.validate();
  } catch (const Error& e) {
    fail(ErrorCode::parse, e.what());
  }
  return b;
}
}  // namespace detail

inline BraidWord parse_braid(const std::string& text) {
  auto lines = detail::content_lines(text);
  require(lines.size() == 1, ErrorCode::parse, "braid text must be a single line");
  auto t = detail::tokens(lines[0]);
  require(!t.empty() && t[0] == "braid", ErrorCode::parse, "expected 'braid <n> w1 w2 ...'");
  return detail::braid_from_tokens(t, 1);
}

// "n: w1 w2 ..."
inline BraidWord parse_inline_braid(const std::string& text) {
  auto colon = text.find(':');
  require(colon != std::string::npos, ErrorCode::parse, "inline braid must look like 'n: w1 w2 ...'");
  auto t = detail::tokens(text.substr(0, colon));
  require(t.size() == 1, ErrorCode::parse, "inline braid must start with the strand count");
  auto rest = detail::tokens(text.substr(colon + 1));
  rest.insert(rest.begin(), t[0]);
  return detail::braid_from_tokens(rest, 0);
}

inline std::string print_inline_braid(const BraidWord& b) {
  std::string s = std::to_string(b.strands) + ":";
  for (int l : b.letters) s += " " + std::to_string(l);
  return s;
}

struct DiagramInput {
  OrientedDiagram diagram;
  std::optional<BraidWord> braid;
};

// Accepts either text form.
inline DiagramInput parse_diagram_text(const std::string& text) {
  auto lines = detail::content_lines(text);
  require(!lines.empty(), ErrorCode::parse, "empty input");
  auto t = detail::tokens(lines[0]);
  if (t[0] == "braid") {
    auto b = parse_braid(text);
    return {braid_closure(b), b};
  }
  if (t[0] == "pd") return {parse_pd(text), std::nullopt};
  fail(ErrorCode::parse, "input must start with 'pd' or 'braid'");
}

inline DiagramInput read_diagram_file(const std::string& path) {
  std::ifstream in(path);
  require(static_cast<bool>(in), ErrorCode::parse, "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_diagram_text(ss.str());
}

}  // namespace linkhom
