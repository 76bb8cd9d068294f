#include <cmath>

#include <gtest/gtest.h>
#include <Eigen/Eigenvalues>

#include "posred/error.hpp"
#include "posred/feasible/box.hpp"
#include "posred/feasible/graph.hpp"
#include "posred/feasible/perron.hpp"
#include "posred/feasible/projection.hpp"
#include "posred/numkit/spectral.hpp"
#include "support/oracles.hpp"

namespace posred::feasible {
namespace {

using testing::Rng;

DenseMatrix sym2(double d, double o) {
  DenseMatrix a(2, 2);
  a << d, o, o, d;
  return a;
}

double spectral_radius(const DenseMatrix& m) {
  Eigen::EigenSolver<DenseMatrix> eig(m, false);
  return eig.eigenvalues().cwiseAbs().maxCoeff();
}

DenseMatrix sample_box(Rng& rng, const StabilityBox& box, const SparsityPattern& pat) {
  const DenseMatrix lo = box.lower();
  DenseMatrix s(lo.rows(), lo.cols());
  for (Index j = 0; j < s.cols(); ++j) {
    for (Index i = 0; i < s.rows(); ++i) {
      if (pat.zero_a()(i, j)) {
        s(i, j) = 0.0;
      } else {
        std::uniform_real_distribution<double> u(lo(i, j), box.abar(i, j));
        s(i, j) = u(rng);
      }
    }
  }
  return s;
}

SparsityPattern pattern_of(const DenseMatrix& a0, Index m, Index p) {
  SparsityPattern::Mask za = (a0.array() == 0.0);
  for (Index i = 0; i < za.rows(); ++i) za(i, i) = false;
  return {za, SparsityPattern::Mask::Constant(a0.rows(), m, false),
          SparsityPattern::Mask::Constant(p, a0.rows(), false)};
}

TEST(Graph, IrreducibilityExamples) {
  EXPECT_TRUE(check_irreducible(sym2(-1, 1)));
  DenseMatrix upper(2, 2);
  upper << -1, 1, 0, -1;
  EXPECT_FALSE(check_irreducible(upper));
  EXPECT_TRUE(check_irreducible(DenseMatrix::Constant(1, 1, -3)));
}

TEST(Graph, StronglyConnectedComponents) {
  DenseMatrix a = DenseMatrix::Zero(4, 4);
  a(0, 1) = a(1, 0) = 1;
  a(1, 2) = 1;
  a(2, 3) = a(3, 2) = 1;
  a.diagonal().setConstant(-5);
  const auto comps = strongly_connected_components(a);
  ASSERT_EQ(comps.size(), 2u);
  EXPECT_EQ(format_components(comps), "{1,2} {3,4}");
  EXPECT_FALSE(check_irreducible(a));
}

TEST(Perron, Examples) {
  const auto p = perron(sym2(-2, 1));
  EXPECT_NEAR(p.mu1, -1.0, 1e-12);
  EXPECT_NEAR(p.v1(0), 1 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(p.v1(1), 1 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(p.w1(0), 1 / std::sqrt(2.0), 1e-12);
  const auto s = perron(DenseMatrix::Constant(1, 1, -3));
  EXPECT_DOUBLE_EQ(s.mu1, -3.0);
  EXPECT_DOUBLE_EQ(s.v1(0), 1.0);
  EXPECT_DOUBLE_EQ(s.w1(0), 1.0);
  EXPECT_THROW(perron(sym2(-1, 2)), PreconditionError);
}

TEST(Perron, ReducibleAndNonMetzlerInputs) {
  DenseMatrix upper(2, 2);
  upper << -1, 1, 0, -1;
  try {
    perron(upper);
    FAIL() << "expected PreconditionError";
  } catch (const PreconditionError& e) {
    EXPECT_NE(std::string(e.what()).find("{1}"), std::string::npos);
  }
  EXPECT_THROW(perron(sym2(-2, -0.5)), PreconditionError);
}

TEST(Perron, PeriodicGraphConverges) {
  // a directed 4-cycle with equal diagonal is periodic after shifting
  DenseMatrix a = DenseMatrix::Zero(4, 4);
  for (Index i = 0; i < 4; ++i) a(i, (i + 1) % 4) = 1.0;
  a.diagonal().setConstant(-2.0);
  const auto p = perron(a);
  EXPECT_NEAR(p.mu1, -1.0, 1e-12);
  EXPECT_LE((a * p.v1 - p.mu1 * p.v1).norm(), 1e-10 * a.norm());
}

TEST(Perron, ResidualsOnRandomSuite) {
  Rng rng(41);
  std::uniform_int_distribution<Index> size(3, 10);
  for (int trial = 0; trial < 20; ++trial) {
    const DenseMatrix a = testing::random_stable_metzler(rng, size(rng));
    const auto p = perron(a);
    EXPECT_LE((a * p.v1 - p.mu1 * p.v1).norm(), 1e-10 * a.norm());
    EXPECT_LE((p.w1.transpose() * a - p.mu1 * p.w1.transpose()).norm(), 1e-10 * a.norm());
    EXPECT_NEAR(p.w1.dot(p.v1), 1.0, 1e-12);
    EXPECT_GT(p.v1.minCoeff(), 0.0);
    EXPECT_GT(p.w1.minCoeff(), 0.0);
    EXPECT_NEAR(p.mu1, testing::eig_abscissa(a), 1e-10);
  }
}

TEST(Perron, SpectralRadiusMonotonicityOracle) {
  Rng rng(43);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const DenseMatrix a = testing::random_nonnegative(rng, 4, 4, 0.6);
    DenseMatrix b = a;
    for (Index j = 0; j < 4; ++j)
      for (Index i = 0; i < 4; ++i) b(i, j) += u(rng) < 0.5 ? u(rng) : 0.0;
    EXPECT_LE(spectral_radius(a), spectral_radius(b) + 1e-10);
  }
}

TEST(Box, HandExample) {
  const auto box = build_box(sym2(-2, 1), 0.5, 10.0);
  EXPECT_LE((box.abar - sym2(-1.75, 1.25)).norm(), 1e-12);
  EXPECT_NEAR(numkit::spectral_abscissa(box.abar), -0.5, 1e-12);
  EXPECT_TRUE(box.contains(sym2(-2, 1)));
}

TEST(Box, BoundaryEpsilonAndPreconditions) {
  const DenseMatrix a0 = sym2(-2, 1);
  const auto edge = build_box(a0, 1.0, 10.0);
  EXPECT_LE((edge.abar - a0).norm(), 1e-12);
  EXPECT_NEAR(numkit::spectral_abscissa(edge.abar), -1.0, 1e-12);
  EXPECT_THROW(build_box(a0, 1.5, 10.0), PreconditionError);
  EXPECT_THROW(build_box(a0, 0.0, 10.0), PreconditionError);
  EXPECT_THROW(build_box(a0, 0.5, 1.0), PreconditionError);
  EXPECT_THROW(build_box(a0, 0.5, -1.0), PreconditionError);
}

TEST(Box, InvariantsAndStabilityOfSamples) {
  Rng rng(47);
  std::uniform_int_distribution<Index> size(3, 10);
  for (int trial = 0; trial < 5; ++trial) {
    const DenseMatrix a0 = testing::random_stable_metzler(rng, size(rng));
    const auto box = build_box(a0, 1e-6, 1e7);
    const auto pat = pattern_of(a0, 1, 1);
    EXPECT_TRUE((a0.array() <= box.abar.array()).all());
    EXPECT_GE(numkit::min_off_diagonal(box.abar), 0.0);
    EXPECT_NEAR(numkit::spectral_abscissa(box.abar), -1e-6, 1e-8);
    EXPECT_EQ(project_a(a0, box, pat), a0);
    for (int s = 0; s < 200; ++s) {
      const DenseMatrix sample = sample_box(rng, box, pat);
      EXPECT_GE(numkit::min_off_diagonal(sample), 0.0);
      EXPECT_LE(numkit::spectral_abscissa(sample), -1e-6 + 1e-8);
    }
  }
}

TEST(Box, JsonHasAuditFields) {
  const auto text = box_to_json(build_box(sym2(-2, 1), 0.5, 10.0));
  for (const char* key : {"mu1", "epsilon", "gamma", "v1", "w1", "abar"}) {
    EXPECT_NE(text.find(key), std::string::npos) << key;
  }
}

TEST(ProjectA, Examples) {
  const auto box = build_box(sym2(-2, 1), 0.5, 10.0);
  const auto pat = SparsityPattern::unconstrained(2, 1, 1);
  const DenseMatrix feasible_point = sym2(-2, 1);
  EXPECT_EQ(project_a(feasible_point, box, pat), feasible_point);
  DenseMatrix neg = sym2(-2, 1);
  neg(0, 1) = -0.3;
  EXPECT_EQ(project_a(neg, box, pat)(0, 1), 0.0);
  DenseMatrix low = sym2(-2, 1);
  low(0, 0) = -20.0;
  EXPECT_EQ(project_a(low, box, pat)(0, 0), -10.0);
  DenseMatrix high = sym2(5, 7);
  const DenseMatrix clamped = project_a(high, box, pat);
  EXPECT_EQ(clamped, box.abar);
  SparsityPattern::Mask za = SparsityPattern::Mask::Constant(2, 2, false);
  za(1, 0) = true;
  const SparsityPattern pinned(za, SparsityPattern::Mask::Constant(2, 1, false),
                               SparsityPattern::Mask::Constant(1, 2, false));
  EXPECT_EQ(project_a(sym2(-2, 1), box, pinned)(1, 0), 0.0);
}

TEST(ProjectBC, Examples) {
  const auto pat = SparsityPattern::unconstrained(1, 2, 2);
  DenseMatrix br(1, 2);
  br << -1, 2;
  EXPECT_EQ(project_b(br, pat), (DenseMatrix(1, 2) << 0, 2).finished());
  SparsityPattern::Mask zb = SparsityPattern::Mask::Constant(1, 1, true);
  const SparsityPattern pinned(SparsityPattern::Mask::Constant(1, 1, false), zb,
                               SparsityPattern::Mask::Constant(1, 1, false));
  EXPECT_EQ(project_b(DenseMatrix::Constant(1, 1, 5), pinned)(0, 0), 0.0);
  const DenseMatrix ok = DenseMatrix::Constant(2, 1, 3);
  EXPECT_EQ(project_c(ok, pat), ok);
}

TEST(Projection, IdempotentAndNonexpansive) {
  Rng rng(53);
  for (int trial = 0; trial < 20; ++trial) {
    const DenseMatrix a0 = testing::random_stable_metzler(rng, 5, 0.3);
    const auto box = build_box(a0, 1e-3, 100.0);
    SparsityPattern::Mask za = (a0.array() == 0.0);
    for (Index i = 0; i < 5; ++i) za(i, i) = false;
    const SparsityPattern pat(za, (testing::random_nonnegative(rng, 5, 2, 0.5).array() == 0.0),
                              (testing::random_nonnegative(rng, 2, 5, 0.5).array() == 0.0));
    const DenseMatrix m1 = DenseMatrix::Random(5, 5) * 3.0, m2 = DenseMatrix::Random(5, 5) * 3.0;
    const DenseMatrix p1 = project_a(m1, box, pat), p2 = project_a(m2, box, pat);
    EXPECT_EQ(project_a(p1, box, pat), p1);
    EXPECT_LE((p1 - p2).norm(), (m1 - m2).norm() + 1e-15);
    EXPECT_TRUE(box.contains(p1));
    const DenseMatrix b1 = DenseMatrix::Random(5, 2), b2 = DenseMatrix::Random(5, 2);
    EXPECT_EQ(project_b(project_b(b1, pat), pat), project_b(b1, pat));
    EXPECT_LE((project_b(b1, pat) - project_b(b2, pat)).norm(), (b1 - b2).norm() + 1e-15);
    const DenseMatrix c1 = DenseMatrix::Random(2, 5), c2 = DenseMatrix::Random(2, 5);
    EXPECT_EQ(project_c(project_c(c1, pat), pat), project_c(c1, pat));
    EXPECT_LE((project_c(c1, pat) - project_c(c2, pat)).norm(), (c1 - c2).norm() + 1e-15);
    const auto cert = certify(p1, project_b(b1, pat), project_c(c1, pat), box, pat);
    EXPECT_TRUE(cert.passes);
    EXPECT_EQ(cert.pattern_checksum, pat.checksum());
  }
}

TEST(Certify, DetectsEachViolation) {
  const DenseMatrix a0 = sym2(-2, 1);
  const auto box = build_box(a0, 0.5, 10.0);
  const auto pat = SparsityPattern::unconstrained(2, 1, 1);
  const DenseMatrix b = DenseMatrix::Ones(2, 1), c = DenseMatrix::Ones(1, 2);
  EXPECT_TRUE(certify(a0, b, c, box, pat).passes);
  EXPECT_FALSE(certify(sym2(-0.1, 1), b, c, box, pat).passes);
  const auto neg_b = certify(a0, -b, c, box, pat);
  EXPECT_FALSE(neg_b.passes);
  EXPECT_EQ(neg_b.min_b, -1.0);
  DenseMatrix offneg = a0;
  offneg(0, 1) = -0.1;
  EXPECT_FALSE(certify(offneg, b, c, box, pat).passes);
  SparsityPattern::Mask za = SparsityPattern::Mask::Constant(2, 2, false);
  za(0, 1) = true;
  const SparsityPattern pinned(za, SparsityPattern::Mask::Constant(2, 1, false),
                               SparsityPattern::Mask::Constant(1, 2, false));
  const auto cert = certify(a0, b, c, box, pinned);
  EXPECT_FALSE(cert.pattern_respected);
  EXPECT_FALSE(cert.passes);
}

TEST(SparsityPattern, RejectsPinnedDiagonalAndMismatch) {
  SparsityPattern::Mask za = SparsityPattern::Mask::Constant(2, 2, false);
  za(0, 0) = true;
  EXPECT_THROW(SparsityPattern(za, SparsityPattern::Mask::Constant(2, 1, false),
                               SparsityPattern::Mask::Constant(1, 2, false)),
               PreconditionError);
  EXPECT_THROW(SparsityPattern(SparsityPattern::Mask::Constant(2, 2, false),
                               SparsityPattern::Mask::Constant(3, 1, false),
                               SparsityPattern::Mask::Constant(1, 2, false)),
               PreconditionError);
  EXPECT_NE(SparsityPattern::unconstrained(2, 1, 1).checksum(),
            SparsityPattern::unconstrained(2, 1, 2).checksum());
}

}  // namespace
}  // namespace posred::feasible
