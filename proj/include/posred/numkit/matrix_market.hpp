#pragma once

#include <iosfwd>
#include <string>

#include "posred/numkit/matrix.hpp"

namespace posred::numkit {

// Matrix Market exchange files. Only the `real general` variants are
// supported; complex, pattern, integer and symmetric files are rejected.
// Values are written with 17 significant digits so reading then writing a
// file reproduces it byte for byte.

SparseMatrix read_market_sparse(std::istream& in);
DenseMatrix read_market_dense(std::istream& in);

/// Reads either layout; coordinate files are densified.
DenseMatrix read_market_any_dense(std::istream& in);

void write_market(std::ostream& out, const SparseMatrix& m);
void write_market(std::ostream& out, const DenseMatrix& m);

/// Peeks at the banner: true for coordinate, false for array.
bool market_is_coordinate(const std::string& path);

SparseMatrix load_market_sparse(const std::string& path);
DenseMatrix load_market_dense(const std::string& path);
void save_market(const std::string& path, const SparseMatrix& m);
void save_market(const std::string& path, const DenseMatrix& m);

}  // namespace posred::numkit
