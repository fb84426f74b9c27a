#include <gtest/gtest.h>

#include <sstream>

#include "linkhom/complex.hpp"
#include "linkhom/homology.hpp"
#include "linkhom/invariants.hpp"

using namespace linkhom;

namespace {
OrientedDiagram closure(int n, std::vector<int> w) { return braid_closure({n, std::move(w)}); }
using Q = Rational;
using F2 = Fp<2>;
}  // namespace

TEST(Complex, UnknotKh) {
  ChainComplex<Q> c(OrientedDiagram::unknot(), Theory::kh);
  EXPECT_EQ(c.min_degree(), 0);
  EXPECT_EQ(c.max_degree(), 0);
  ASSERT_EQ(c.group(0).size(), 2);
  EXPECT_EQ(c.group(0).qdeg, (std::vector<int>{1, -1}));
  EXPECT_TRUE(c.differential(0).entries.empty());
}

TEST(Complex, SingleCrossingRanks) {
  ChainComplex<Q> c(closure(2, {1}), Theory::kh);
  EXPECT_EQ(c.min_degree(), 0);
  EXPECT_EQ(c.max_degree(), 1);
  EXPECT_EQ(c.group(0).size(), 4);
  EXPECT_EQ(c.group(1).size(), 2);
  for (Theory t : {Theory::kh, Theory::tlee, Theory::bn}) {
    ChainComplex<F2> n(closure(2, {-1}), t);
    EXPECT_EQ(n.min_degree(), -1);
    EXPECT_EQ(n.max_degree(), 0);
  }
}

TEST(Complex, QuantumGrading) {
  Cube u(OrientedDiagram::unknot());
  EXPECT_EQ(u.qdeg(State{0, 1}), -1);
  EXPECT_EQ(u.qdeg(State{0, 0}), 1);
  auto t = closure(2, {1, 1, 1});
  EXPECT_EQ(beta(t, OrientationFlag::diagram).qdeg, 1);
  EXPECT_EQ(beta(closure(2, {-1, -1, -1}), OrientationFlag::diagram).qdeg, -5);
  // the slice reading of the beta chain sits in the same degree
  ChainComplex<Q> c(t, Theory::bn);
  int q = 0;
  auto v = slice_vector(c, beta(t, OrientationFlag::diagram).chain<Q>(), &q);
  EXPECT_FALSE(v.empty());
  EXPECT_EQ(q, 1);
  EXPECT_EQ(qdeg_of(c, 0, SparseVec<Q>{{*c.index_of(psi(t)), Q(1)}}), 1);
  EXPECT_THROW(qdeg_of(c, 0, SparseVec<Q>{}), Error);
}

TEST(Complex, DifferentialSquaresToZero) {
  for (auto [n, w] : std::vector<std::pair<int, std::vector<int>>>{
           {2, {1, 1, 1}}, {3, {1, -2, 1, -2}}, {3, {1, 1, -2, -1, 2}}, {4, {1, -3, 2, 2, -1, 3}}}) {
    auto d = closure(n, w);
    for (Theory t : {Theory::kh, Theory::tlee, Theory::bn}) {
      BuildOptions opt;
      opt.verify_up_to = 0;
      ChainComplex<Fp<3>> c3(d, t, opt);
      ChainComplex<Q> cq(d, t, opt);
      EXPECT_FALSE(c3.d_squared_witness().has_value());
      EXPECT_FALSE(cq.d_squared_witness().has_value());
      EXPECT_TRUE(c3.verify_graded());
      EXPECT_TRUE(cq.verify_graded());
    }
  }
}

TEST(Complex, CorruptedSignIsCaught) {
  ChainComplex<Q> c(closure(2, {1, 1}), Theory::kh);
  ASSERT_FALSE(c.d_squared_witness().has_value());
  auto& df = c.mutable_differential(0);
  ASSERT_FALSE(df.entries.empty());
  df.entries.front().coef = -df.entries.front().coef;
  auto w = c.d_squared_witness();
  ASSERT_TRUE(w.has_value());
  EXPECT_NE(w->find("d^2("), std::string::npos);
}

TEST(Complex, TwistedLeeIsFiltered) {
  ChainComplex<Q> c(closure(2, {1, -1}), Theory::tlee);
  EXPECT_TRUE(c.verify_graded());
  EXPECT_FALSE(c.d_squared_witness().has_value());
}

TEST(Complex, BnSpecializesToKhAndTlee) {
  auto d = closure(3, {1, -2, 1, 2});
  ChainComplex<Fp<5>> bn(d, Theory::bn), kh(d, Theory::kh), tl(d, Theory::tlee);
  for (int i = bn.min_degree(); i < bn.max_degree(); ++i)
    for (int j = 0; j < bn.group(i).size(); ++j) {
      std::map<int, Fp<5>> at0, at1, k, t;
      auto [b, e] = bn.column(i, j);
      for (auto p = b; p != e; ++p) {
        if (p->upow == 0) at0[p->row] += p->coef;
        at1[p->row] += p->coef;
      }
      auto [kb, ke] = kh.column(i, j);
      for (auto p = kb; p != ke; ++p) k[p->row] += p->coef;
      auto [tb, te] = tl.column(i, j);
      for (auto p = tb; p != te; ++p) t[p->row] += p->coef;
      std::erase_if(at0, [](auto& x) { return x.second.is_zero(); });
      std::erase_if(at1, [](auto& x) { return x.second.is_zero(); });
      EXPECT_EQ(at0, k);
      EXPECT_EQ(at1, t);
    }
}

TEST(Complex, CubeEdges) {
  Cube cube(closure(2, {1, 1, 1}));
  auto es = cube.edges(0);
  ASSERT_EQ(es.size(), 3u);
  for (const auto& e : es) {
    EXPECT_TRUE(e.merge);  // two Seifert circles join at every crossing
    EXPECT_EQ(e.sign, 1);
  }
  EXPECT_EQ(Cube::edge_sign(0b001, 2), -1);
  EXPECT_EQ(Cube::edge_sign(0b011, 2), 1);
  EXPECT_EQ(Cube::edge_sign(0b100, 1), 1);
  EXPECT_TRUE(cube.edges(0b111).empty());
}

TEST(Complex, CapAndRestrictedDegrees) {
  std::vector<int> w(17, 1);
  try {
    ChainComplex<F2> c(closure(2, w), Theory::kh);
    FAIL() << "expected cap error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::cap_exceeded);
  }
  BuildOptions opt;
  opt.degrees = std::pair{-1, 1};
  ChainComplex<F2> c(closure(3, {1, -2, 1, -2}), Theory::bn, opt);
  EXPECT_EQ(c.min_degree(), -1);
  EXPECT_EQ(c.max_degree(), 1);
}

TEST(Complex, DumpFormat) {
  ChainComplex<F2> c(closure(2, {1}), Theory::kh);
  std::ostringstream os;
  c.dump(os);
  auto s = os.str();
  EXPECT_EQ(s.rfind("# linkhom-complex v1\n", 0), 0u);
  EXPECT_NE(s.find("theory kh field F2 crossings 1 degrees 0 1"), std::string::npos);
  EXPECT_NE(s.find("group 0 rank 4"), std::string::npos);
}
