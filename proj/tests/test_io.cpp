#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <functional>

#include "linkhom/diagram_io.hpp"
#include "linkhom/random.hpp"

using namespace linkhom;

namespace {
ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::internal;
}
}  // namespace

TEST(PdText, RoundTrip) {
  for (auto b : std::vector<BraidWord>{{2, {1, 1, 1}}, {3, {1, -2, 1, -2}}, {4, {-1, -1, -1, 2, 1, 1, -3, 2, -3}}, {3, {1}}}) {
    auto d = braid_closure(b);
    auto text = print_pd(d);
    auto back = parse_pd(text);
    EXPECT_EQ(back.crossings(), d.crossings());
    EXPECT_EQ(back.free_loops(), d.free_loops());
    EXPECT_EQ(print_pd(back), text);
  }
}

TEST(PdText, Format) {
  auto text = print_pd(braid_closure({2, {-1}}));
  EXPECT_EQ(text.rfind("pd 1\nX[", 0), 0u);
  EXPECT_NE(text.find("] -1\n"), std::string::npos);
  EXPECT_EQ(print_pd(OrientedDiagram::unknot()), "pd 0\nloops 1\n");
  auto u = parse_pd("# comment\npd 0\nloops 2   # two circles\n");
  EXPECT_EQ(u.component_count(), 2);
}

TEST(PdText, Errors) {
  EXPECT_EQ(code_of([] { parse_pd(""); }), ErrorCode::parse);
  EXPECT_EQ(code_of([] { parse_pd("pd x"); }), ErrorCode::parse);
  EXPECT_EQ(code_of([] { parse_pd("pd 1\n"); }), ErrorCode::parse);
  EXPECT_EQ(code_of([] { parse_pd("pd 1\nX[1,2,3] +1\n"); }), ErrorCode::parse);
  EXPECT_EQ(code_of([] { parse_pd("pd 1\nX[1,2,2,1] +2\n"); }), ErrorCode::parse);
  EXPECT_EQ(code_of([] { parse_pd("pd 1\nX[1,2,3,4] +1\n"); }), ErrorCode::parse);
  EXPECT_EQ(code_of([] { parse_pd("pd 0\n"); }), ErrorCode::parse);
  EXPECT_EQ(code_of([] { parse_pd("pd 1\nX[1,2,2,1] -1\nextra\n"); }), ErrorCode::parse);
}

TEST(BraidText, RoundTrip) {
  BraidWord b{3, {1, -2, 1}};
  EXPECT_EQ(print_braid(b), "braid 3 1 -2 1\n");
  EXPECT_EQ(parse_braid(print_braid(b)), b);
  EXPECT_EQ(print_inline_braid(b), "3: 1 -2 1");
  EXPECT_EQ(parse_inline_braid("3: 1 -2 1"), b);
  EXPECT_EQ(parse_inline_braid("2:"), (BraidWord{2, {}}));
  EXPECT_EQ(code_of([] { parse_inline_braid("2 1 1"); }), ErrorCode::parse);
  EXPECT_EQ(code_of([] { parse_inline_braid("2: 1 3"); }), ErrorCode::parse);
  EXPECT_EQ(code_of([] { parse_inline_braid("2: 1 a"); }), ErrorCode::parse);
  EXPECT_EQ(code_of([] { parse_braid("braid 2 1\nbraid 2 1\n"); }), ErrorCode::parse);
}

TEST(DiagramText, EitherForm) {
  auto a = parse_diagram_text("braid 2 1 1 1\n");
  ASSERT_TRUE(a.braid.has_value());
  EXPECT_EQ(a.diagram.crossing_count(), 3);
  auto p = parse_diagram_text(print_pd(a.diagram));
  EXPECT_FALSE(p.braid.has_value());
  EXPECT_EQ(p.diagram.crossings(), a.diagram.crossings());
  EXPECT_EQ(code_of([] { parse_diagram_text("knot 3"); }), ErrorCode::parse);
}

TEST(DiagramText, ReadFile) {
  std::string path = ::testing::TempDir() + "linkhom_io_test.pd";
  {
    std::ofstream out(path);
    out << print_pd(braid_closure({2, {1, 1, 1}}));
  }
  EXPECT_EQ(read_diagram_file(path).diagram.crossing_count(), 3);
  std::remove(path.c_str());
  EXPECT_EQ(code_of([&] { read_diagram_file(path); }), ErrorCode::parse);
}

TEST(Random, SeededCorpusIsDeterministic) {
  auto a = random_corpus(7, 20, 9);
  auto b = random_corpus(7, 20, 9);
  EXPECT_EQ(a, b);
  EXPECT_NE(a, random_corpus(8, 20, 9));
  for (const auto& w : a) {
    EXPECT_LE(static_cast<int>(w.letters.size()), 9);
    EXPECT_GE(w.strands, 2);
    EXPECT_LE(w.strands, 4);
    w.validate();
  }
  BraidSampler s(3);
  for (int i = 0; i < 10; ++i) {
    auto h = s.homogeneous_braid(3, 1, 6, -1);
    for (int l : h.letters) EXPECT_LT(l, 0);
  }
}
