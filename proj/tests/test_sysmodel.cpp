#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "posred/error.hpp"
#include "posred/numkit/spectral.hpp"
#include "posred/sysmodel/h2.hpp"
#include "posred/sysmodel/heat2d.hpp"
#include "posred/sysmodel/model_io.hpp"
#include "posred/sysmodel/state_space.hpp"
#include "support/oracles.hpp"

namespace posred::sysmodel {
namespace {

namespace fs = std::filesystem;
using testing::Rng;

DenseMatrix m1(double v) { return DenseMatrix::Constant(1, 1, v); }

StateSpaceModel scalar(double a, double b, double c) { return {m1(a), m1(b), m1(c)}; }

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("posred_sysmodel_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(StateSpaceModel, RejectsInconsistentDimensionsAndNonFinite) {
  EXPECT_THROW(StateSpaceModel(DenseMatrix::Zero(2, 2), DenseMatrix::Zero(3, 1), DenseMatrix::Zero(1, 2)),
               PreconditionError);
  EXPECT_THROW(StateSpaceModel(DenseMatrix::Zero(2, 2), DenseMatrix::Zero(2, 1), DenseMatrix::Zero(1, 3)),
               PreconditionError);
  EXPECT_THROW(StateSpaceModel(DenseMatrix::Zero(2, 3), DenseMatrix::Zero(2, 1), DenseMatrix::Zero(1, 2)),
               PreconditionError);
  EXPECT_THROW(scalar(std::nan(""), 1, 1), PreconditionError);
}

TEST(ValidateAspn, Examples) {
  const auto ok = validate_aspn(scalar(-1, 1, 1));
  EXPECT_TRUE(ok.ok());
  EXPECT_EQ(ok.positivity.worst_violation, 0.0);

  DenseMatrix a(2, 2);
  a << -1, -0.5, 0, -1;
  const auto bad = validate_aspn({a, DenseMatrix::Ones(2, 1), DenseMatrix::Ones(1, 2)});
  EXPECT_FALSE(bad.positivity.is_metzler);
  EXPECT_TRUE(bad.positivity.is_nonneg_b);
  EXPECT_DOUBLE_EQ(bad.positivity.worst_violation, -0.5);
  ASSERT_TRUE(bad.positivity.location.has_value());
  EXPECT_EQ(bad.positivity.location->matrix, MatrixId::kA);
  EXPECT_EQ(bad.positivity.location->row, 0);
  EXPECT_EQ(bad.positivity.location->col, 1);
  EXPECT_NE(bad.describe().find("(A,1,2)"), std::string::npos);

  EXPECT_TRUE(validate_aspn(heat2d(2).model).ok());
}

TEST(ValidateAspn, ToleranceAndUnstable) {
  DenseMatrix a(2, 2);
  a << -1, -1e-12, 0, -1;
  EXPECT_FALSE(validate_aspn({a, DenseMatrix::Ones(2, 1), DenseMatrix::Ones(1, 2)}).ok());
  EXPECT_TRUE(validate_aspn({a, DenseMatrix::Ones(2, 1), DenseMatrix::Ones(1, 2)}, 1e-10).ok());
  const auto unstable = validate_aspn(scalar(0.5, 1, 1));
  EXPECT_FALSE(unstable.stable);
  EXPECT_FALSE(unstable.ok());
  const auto neg_c = validate_aspn(scalar(-1, 1, -2));
  EXPECT_FALSE(neg_c.positivity.is_nonneg_c);
  EXPECT_EQ(neg_c.positivity.location->matrix, MatrixId::kC);
}

TEST(H2Norm, Examples) {
  EXPECT_NEAR(h2_norm_squared(scalar(-1, 1, 1)), 0.5, 1e-15);
  EXPECT_EQ(h2_norm_squared(scalar(-1, 1, 0)), 0.0);
  DenseMatrix a(2, 2);
  a << -1, 0, 0, -2;
  DenseMatrix b(2, 1);
  b << 1, 1;
  DenseMatrix c(1, 2);
  c << 1, 0;
  EXPECT_NEAR(h2_norm_squared({a, b, c}), 0.5, 1e-15);
  EXPECT_NEAR(h2_norm_squared({SparseMatrix(a.sparseView()), b, c}), 0.5, 1e-15);
}

TEST(H2Norm, SizeCap) {
  H2Options small;
  small.gramian_size_cap = 3;
  EXPECT_THROW(h2_norm_squared(heat2d(2).model, small), SizeCapError);
}

TEST(H2Error, Examples) {
  const auto full = scalar(-1, 1, 1);
  EXPECT_NEAR(h2_error_squared(full, full), 0.0, 1e-15);
  EXPECT_NEAR(h2_error_squared(full, scalar(-2, 1, 1)), 1.0 / 12.0, 1e-14);
  EXPECT_NEAR(h2_error_squared(full, scalar(-2, 0, 1)), 0.5, 1e-15);
  EXPECT_THROW(h2_error_squared(full, StateSpaceModel(m1(-1), DenseMatrix::Ones(1, 2), m1(1))),
               PreconditionError);
}

TEST(H2Error, MatchesFrequencyDomainQuadrature) {
  Rng rng(23);
  for (int trial = 0; trial < 5; ++trial) {
    const auto inst = testing::random_instance(rng, 6, 3, 2, 2);
    const double oracle = testing::frequency_h2_error_squared(inst.a, inst.b, inst.c, inst.ar,
                                                              inst.br, inst.cr);
    EXPECT_NEAR(h2_error_squared(inst.full(), inst.reduced()), oracle, 1e-6 * (1.0 + oracle));
  }
  const double scalar_oracle =
      testing::frequency_h2_error_squared(m1(-1), m1(1), m1(1), m1(-2), m1(1), m1(1));
  EXPECT_NEAR(scalar_oracle, 1.0 / 12.0, 1e-9);
}

TEST(H2Error, SelfErrorVanishesOnHeat) {
  const auto model = heat2d(4).model;
  const double g2 = h2_norm_squared(model);
  const StateSpaceModel dense(model.a_dense(), model.b(), model.c());
  EXPECT_LE(h2_error_squared(model, dense, g2), 1e-10 * g2);
}

TEST(Heat2d, SmallestGridMatchesPrintedMatrices) {
  const auto h = heat2d(2);
  const double beta = 0.0241 * 9.0 / 100.0;
  EXPECT_NEAR(h.beta, beta, 1e-18);
  DenseMatrix a(4, 4);
  a << -4, 1, 1, 0, 1, -4, 0, 1, 1, 0, -4, 1, 0, 1, 1, -4;
  EXPECT_LE((h.model.a_dense() - beta * a).norm(), 1e-18);
  DenseMatrix b = DenseMatrix::Zero(4, 2);
  b(0, 0) = beta;
  b(3, 1) = beta;
  EXPECT_EQ(h.model.b(), b);
  DenseMatrix c = DenseMatrix::Zero(2, 4);
  c(0, 0) = 1;
  c(1, 3) = 1;
  EXPECT_EQ(h.model.c(), c);
  EXPECT_FALSE(h.partition_hint.has_value());
}

TEST(Heat2d, SymmetricDominantAndStable) {
  for (Index k : {3, 4, 8}) {
    const auto h = heat2d(k);
    const DenseMatrix a = h.model.a_dense();
    EXPECT_EQ(h.model.order(), k * k);
    EXPECT_EQ(a, a.transpose());
    // weakly dominant in every row, strictly in the boundary rows
    Index strict = 0;
    for (Index i = 0; i < a.rows(); ++i) {
      EXPECT_LT(a(i, i), 0.0);
      const double off = a.row(i).cwiseAbs().sum() - std::abs(a(i, i));
      EXPECT_GE(std::abs(a(i, i)), off * (1.0 - 1e-14));
      if (std::abs(a(i, i)) > off * (1.0 + 1e-12)) ++strict;
    }
    EXPECT_EQ(strict, 4 * k - 4);
    EXPECT_LT(numkit::spectral_abscissa(a), 0.0);
    EXPECT_TRUE(validate_aspn(h.model).ok());
  }
}

TEST(Heat2d, PartitionHint) {
  const auto h4 = heat2d(4);
  ASSERT_TRUE(h4.partition_hint.has_value());
  EXPECT_EQ(*h4.partition_hint, clustering::ClusterPartition::singletons(16));
  const auto h24 = heat2d(24);
  ASSERT_TRUE(h24.partition_hint.has_value());
  EXPECT_EQ(h24.partition_hint->clusters(), 16);
  for (Index size : h24.partition_hint->cluster_sizes()) EXPECT_EQ(size, 36);
  // node (row 7, col 13) lies in block row 1, block col 2
  EXPECT_EQ(h24.partition_hint->assignment()[7 * 24 + 13], 1 * 4 + 2);
}

TEST(Heat2d, InvalidGrid) { EXPECT_THROW(heat2d(1), PreconditionError); }

TEST(SemistableShift, Examples) {
  EXPECT_DOUBLE_EQ(semistable_shift(scalar(0, 1, 1), 0.1).dense_a()(0, 0), -0.1);
  DenseMatrix a(2, 2);
  a << -1, 1, 1, -1;
  const StateSpaceModel semi(a, DenseMatrix::Ones(2, 1), DenseMatrix::Ones(1, 2));
  const auto shifted = semistable_shift(semi, 0.01);
  EXPECT_NEAR(numkit::spectral_abscissa(shifted.a_dense()), -0.01, 1e-10);
  EXPECT_EQ(shifted.b(), semi.b());
  EXPECT_TRUE(validate_aspn(shifted).positivity.ok());
  EXPECT_THROW(semistable_shift(semi, 0.0), PreconditionError);
  EXPECT_THROW(semistable_shift(semi, -1.0), PreconditionError);
}

TEST(SemistableShift, ShiftsAbscissaExactly) {
  Rng rng(29);
  for (int trial = 0; trial < 5; ++trial) {
    const DenseMatrix a = testing::random_stable_metzler(rng, 6);
    const StateSpaceModel m(a, DenseMatrix::Ones(6, 1), DenseMatrix::Ones(1, 6));
    const auto s = semistable_shift(m, 0.3);
    EXPECT_NEAR(numkit::spectral_abscissa(s.a_dense()), numkit::spectral_abscissa(a) - 0.3, 1e-10);
  }
}

TEST(ModelIo, RoundTripIsBitIdentical) {
  const auto dir = scratch_dir("roundtrip");
  const auto model = heat2d(4).model;
  save_model(dir.string(), model);
  const auto loaded = load_model(dir.string());
  EXPECT_EQ(loaded.storage(), Storage::kSparse);
  EXPECT_EQ(loaded.a_dense(), model.a_dense());
  EXPECT_EQ(loaded.b(), model.b());
  EXPECT_EQ(loaded.c(), model.c());
  const auto again = scratch_dir("roundtrip2");
  save_model(again.string(), loaded);
  for (const char* f : {"A.mtx", "B.mtx", "C.mtx", "manifest.json"}) {
    EXPECT_EQ(slurp(dir / f), slurp(again / f)) << f;
  }
}

TEST(ModelIo, DenseModelsAndManifestChecks) {
  const auto dir = scratch_dir("dense");
  DenseMatrix a(2, 2);
  a << -1.0 / 3.0, 0.1, 0.2, -2;
  const StateSpaceModel model(a, DenseMatrix::Ones(2, 1), DenseMatrix::Ones(1, 2));
  save_model(dir.string(), model);
  const auto loaded = load_model(dir.string());
  EXPECT_EQ(loaded.storage(), Storage::kDense);
  EXPECT_EQ(loaded.dense_a(), a);
  std::ofstream(dir / "manifest.json") << R"({"n": 3, "m": 1, "p": 1, "storage": "dense"})";
  EXPECT_THROW(load_model(dir.string()), FormatError);
  EXPECT_THROW(load_model((dir / "missing").string()), Error);
}

}  // namespace
}  // namespace posred::sysmodel
