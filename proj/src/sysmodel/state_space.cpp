#include "posred/sysmodel/state_space.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "posred/error.hpp"
#include "posred/numkit/spectral.hpp"

namespace posred::sysmodel {

std::string to_string(Storage s) { return s == Storage::kSparse ? "sparse" : "dense"; }

Storage storage_from_string(const std::string& s) {
  if (s == "sparse") return Storage::kSparse;
  if (s == "dense") return Storage::kDense;
  throw FormatError("unknown storage kind '" + s + "'");
}

StateSpaceModel::StateSpaceModel(SparseMatrix a, DenseMatrix b, DenseMatrix c)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
  std::get<SparseMatrix>(a_).makeCompressed();
  validate();
}

StateSpaceModel::StateSpaceModel(DenseMatrix a, DenseMatrix b, DenseMatrix c)
    : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {
  validate();
}

void StateSpaceModel::validate() const {
  const auto [rows, cols, finite] = std::visit(
      [](const auto& a) { return std::tuple{a.rows(), a.cols(), numkit::all_finite(a)}; }, a_);
  if (rows != cols) throw PreconditionError("state matrix A is not square");
  if (b_.rows() != rows) throw PreconditionError("B must have as many rows as A");
  if (c_.cols() != rows) throw PreconditionError("C must have as many columns as A");
  if (!finite || !b_.allFinite() || !c_.allFinite()) {
    throw PreconditionError("state-space model has non-finite entries");
  }
}

Storage StateSpaceModel::storage() const {
  return std::holds_alternative<SparseMatrix>(a_) ? Storage::kSparse : Storage::kDense;
}

const SparseMatrix& StateSpaceModel::sparse_a() const {
  if (!is_sparse()) throw PreconditionError("model A is stored dense");
  return std::get<SparseMatrix>(a_);
}

const DenseMatrix& StateSpaceModel::dense_a() const {
  if (is_sparse()) throw PreconditionError("model A is stored sparse");
  return std::get<DenseMatrix>(a_);
}

DenseMatrix StateSpaceModel::a_dense() const {
  return std::visit([](const auto& a) { return DenseMatrix(a); }, a_);
}

namespace {

void note(PositivityReport& report, bool& flag, double value, double tol, MatrixId id,
          Index row, Index col) {
  if (value >= -tol) return;
  flag = false;
  if (value < report.worst_violation) {
    report.worst_violation = value;
    report.location = EntryLocation{id, row, col};
  }
}

void scan_dense(PositivityReport& report, bool& flag, const DenseMatrix& m, double tol,
                MatrixId id, bool skip_diagonal) {
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      if (skip_diagonal && i == j) continue;
      note(report, flag, m(i, j), tol, id, i, j);
    }
  }
}

char matrix_name(MatrixId id) {
  switch (id) {
    case MatrixId::kA: return 'A';
    case MatrixId::kB: return 'B';
    case MatrixId::kC: return 'C';
  }
  return '?';
}

}  // namespace

std::string AspnReport::describe() const {
  std::ostringstream out;
  out << "metzler=" << positivity.is_metzler << " nonneg_B=" << positivity.is_nonneg_b
      << " nonneg_C=" << positivity.is_nonneg_c << " stable=" << stable
      << " abscissa=" << abscissa;
  if (positivity.location) {
    const auto& loc = *positivity.location;
    out << " worst_violation=" << positivity.worst_violation << " at (" << matrix_name(loc.matrix)
        << "," << loc.row + 1 << "," << loc.col + 1 << ")";
  }
  return out.str();
}

AspnReport validate_aspn(const StateSpaceModel& model, double tol) {
  AspnReport report;
  auto& pos = report.positivity;
  if (model.is_sparse()) {
    const auto& a = model.sparse_a();
    for (Index k = 0; k < a.outerSize(); ++k) {
      for (SparseMatrix::InnerIterator it(a, k); it; ++it) {
        if (it.row() != it.col()) {
          note(pos, pos.is_metzler, it.value(), tol, MatrixId::kA, it.row(), it.col());
        }
      }
    }
  } else {
    scan_dense(pos, pos.is_metzler, model.dense_a(), tol, MatrixId::kA, true);
  }
  scan_dense(pos, pos.is_nonneg_b, model.b(), tol, MatrixId::kB, false);
  scan_dense(pos, pos.is_nonneg_c, model.c(), tol, MatrixId::kC, false);

  try {
    report.abscissa =
        std::visit([](const auto& a) { return numkit::spectral_abscissa(a); }, model.a());
    report.stable = report.abscissa < 0.0;
  } catch (const Error&) {
    // Large non-Metzler inputs have no cheap abscissa; report them unstable.
    report.abscissa = std::numeric_limits<double>::quiet_NaN();
    report.stable = false;
  }
  return report;
}

StateSpaceModel semistable_shift(const StateSpaceModel& model, double alpha) {
  if (!(alpha > 0.0)) throw PreconditionError("semi-stable shift needs alpha > 0");
  if (model.is_sparse()) {
    SparseMatrix eye(model.order(), model.order());
    eye.setIdentity();
    SparseMatrix shifted = model.sparse_a() - alpha * eye;
    return {std::move(shifted), model.b(), model.c()};
  }
  DenseMatrix shifted = model.dense_a();
  shifted.diagonal().array() -= alpha;
  return {std::move(shifted), model.b(), model.c()};
}

}  // namespace posred::sysmodel
