#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "posred/numkit/matrix.hpp"

namespace posred::optimizer {

struct IterateRecord {
  numkit::Index k = 0;
  double f = 0.0;
  double residual = 0.0;
  double c_a = 0.0;
  double c_b = 0.0;
  double c_c = 0.0;
  double millis = 0.0;  // elapsed since the run started

  bool operator==(const IterateRecord&) const = default;
};

struct IterateTrace {
  std::vector<IterateRecord> records;

  bool empty() const { return records.empty(); }
  std::size_t size() const { return records.size(); }
  /// Appends; k must exceed the last recorded k.
  void append(const IterateRecord& record);
};

/// Header "k,f,residual,cA,cB,cC,millis", one row per record, %.17g.
void write_trace_csv(std::ostream& out, const IterateTrace& trace);
void save_trace_csv(const std::string& path, const IterateTrace& trace);
/// Throws FormatError on a bad header, wrong column count, or unparsable number.
IterateTrace read_trace_csv(std::istream& in);
IterateTrace load_trace_csv(const std::string& path);

/// Header "k,f,residual" with the same rows.
void write_plot_data(std::ostream& out, const IterateTrace& trace);

}  // namespace posred::optimizer
