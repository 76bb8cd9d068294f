#include "posred/numkit/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "posred/error.hpp"

namespace posred::numkit {
namespace {

struct Banner {
  bool coordinate = false;
};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

Banner read_banner(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError("empty Matrix Market stream");
  std::istringstream ss(line);
  std::string tag, object, format, field, symmetry;
  ss >> tag >> object >> format >> field >> symmetry;
  if (tag != "%%MatrixMarket") throw FormatError("missing %%MatrixMarket banner");
  object = lower(object);
  format = lower(format);
  field = lower(field);
  symmetry = lower(symmetry);
  if (object != "matrix") throw FormatError("unsupported Matrix Market object: " + object);
  if (field == "complex") throw FormatError("complex Matrix Market files are not supported");
  if (field == "pattern") throw FormatError("pattern-only Matrix Market files are not supported");
  if (field != "real" && field != "double") {
    throw FormatError("unsupported Matrix Market field: " + field);
  }
  if (symmetry != "general") {
    throw FormatError("unsupported Matrix Market symmetry: " + symmetry);
  }
  if (format == "coordinate") return {true};
  if (format == "array") return {false};
  throw FormatError("unsupported Matrix Market format: " + format);
}

// First non-comment, non-blank line.
std::string next_data_line(std::istream& in) {
  std::string line;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '%') continue;
    return line;
  }
  throw FormatError("unexpected end of Matrix Market stream");
}

double parse_double(const std::string& token) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw FormatError("malformed value '" + token + "'");
  }
  return v;
}

Index parse_index(const std::string& token) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size() || v < 0) {
    throw FormatError("malformed index '" + token + "'");
  }
  return static_cast<Index>(v);
}

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream ss(line);
  std::vector<std::string> out;
  for (std::string t; ss >> t;) out.push_back(t);
  return out;
}

SparseMatrix read_coordinate_body(std::istream& in) {
  auto header = tokens(next_data_line(in));
  if (header.size() != 3) throw FormatError("coordinate size line needs rows cols nnz");
  const Index rows = parse_index(header[0]);
  const Index cols = parse_index(header[1]);
  const Index nnz = parse_index(header[2]);
  std::vector<Triplet> entries;
  entries.reserve(static_cast<std::size_t>(nnz));
  for (Index k = 0; k < nnz; ++k) {
    auto t = tokens(next_data_line(in));
    if (t.size() != 3) throw FormatError("coordinate entry needs row col value");
    const Index i = parse_index(t[0]);
    const Index j = parse_index(t[1]);
    if (i < 1 || j < 1) throw FormatError("Matrix Market indices are 1-based");
    entries.emplace_back(i - 1, j - 1, parse_double(t[2]));
  }
  try {
    return make_sparse(rows, cols, entries);
  } catch (const PreconditionError& e) {
    throw FormatError(e.what());
  }
}

DenseMatrix read_array_body(std::istream& in) {
  auto header = tokens(next_data_line(in));
  if (header.size() != 2) throw FormatError("array size line needs rows cols");
  const Index rows = parse_index(header[0]);
  const Index cols = parse_index(header[1]);
  DenseMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      auto t = tokens(next_data_line(in));
      if (t.size() != 1) throw FormatError("array entry lines hold one value");
      m(i, j) = parse_double(t[0]);
    }
  }
  if (!m.allFinite()) throw FormatError("non-finite value in Matrix Market array");
  return m;
}

void write_value(std::ostream& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out << buf;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path);
  return out;
}

}  // namespace

SparseMatrix read_market_sparse(std::istream& in) {
  if (!read_banner(in).coordinate) {
    throw FormatError("expected a coordinate Matrix Market file");
  }
  return read_coordinate_body(in);
}

DenseMatrix read_market_dense(std::istream& in) {
  if (read_banner(in).coordinate) throw FormatError("expected an array Matrix Market file");
  return read_array_body(in);
}

DenseMatrix read_market_any_dense(std::istream& in) {
  if (read_banner(in).coordinate) return DenseMatrix(read_coordinate_body(in));
  return read_array_body(in);
}

void write_market(std::ostream& out, const SparseMatrix& m) {
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << m.rows() << ' ' << m.cols() << ' ' << m.nonZeros() << '\n';
  for (Index k = 0; k < m.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) {
      out << it.row() + 1 << ' ' << it.col() + 1 << ' ';
      write_value(out, it.value());
      out << '\n';
    }
  }
}

void write_market(std::ostream& out, const DenseMatrix& m) {
  out << "%%MatrixMarket matrix array real general\n";
  out << m.rows() << ' ' << m.cols() << '\n';
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      write_value(out, m(i, j));
      out << '\n';
    }
  }
}

bool market_is_coordinate(const std::string& path) {
  auto in = open_in(path);
  return read_banner(in).coordinate;
}

SparseMatrix load_market_sparse(const std::string& path) {
  auto in = open_in(path);
  if (read_banner(in).coordinate) return read_coordinate_body(in);
  return read_array_body(in).sparseView(0.0, 0.0);
}

DenseMatrix load_market_dense(const std::string& path) {
  auto in = open_in(path);
  return read_market_any_dense(in);
}

void save_market(const std::string& path, const SparseMatrix& m) {
  auto out = open_out(path);
  write_market(out, m);
  if (!out) throw FormatError("failed writing " + path);
}

void save_market(const std::string& path, const DenseMatrix& m) {
  auto out = open_out(path);
  write_market(out, m);
  if (!out) throw FormatError("failed writing " + path);
}

}  // namespace posred::numkit
