#include "posred/optimizer/trace.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "posred/error.hpp"

namespace posred::optimizer {

namespace {

constexpr const char* kTraceHeader = "k,f,residual,cA,cB,cC,millis";

std::string fmt(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

double parse_double(const std::string& field, std::size_t line) {
  try {
    std::size_t used = 0;
    const double value = std::stod(field, &used);
    if (used == field.size()) return value;
  } catch (const std::exception&) {
  }
  throw FormatError("trace line " + std::to_string(line) + ": bad number '" + field + "'");
}

numkit::Index parse_index(const std::string& field, std::size_t line) {
  numkit::Index value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw FormatError("trace line " + std::to_string(line) + ": bad iteration '" + field + "'");
  }
  return value;
}

std::string strip_cr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

}  // namespace

void IterateTrace::append(const IterateRecord& record) {
  if (!records.empty() && record.k <= records.back().k) {
    throw PreconditionError("trace iteration numbers must increase");
  }
  records.push_back(record);
}

void write_trace_csv(std::ostream& out, const IterateTrace& trace) {
  out << kTraceHeader << '\n';
  for (const auto& r : trace.records) {
    out << r.k << ',' << fmt(r.f) << ',' << fmt(r.residual) << ',' << fmt(r.c_a) << ','
        << fmt(r.c_b) << ',' << fmt(r.c_c) << ',' << fmt(r.millis) << '\n';
  }
}

void save_trace_csv(const std::string& path, const IterateTrace& trace) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  write_trace_csv(out, trace);
  if (!out) throw Error("write failed for " + path);
}

IterateTrace read_trace_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || strip_cr(line) != kTraceHeader) {
    throw FormatError("trace CSV must start with header '" + std::string(kTraceHeader) + "'");
  }
  IterateTrace trace;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    line = strip_cr(line);
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 7) {
      throw FormatError("trace line " + std::to_string(lineno) + ": expected 7 columns");
    }
    IterateRecord r;
    r.k = parse_index(fields[0], lineno);
    r.f = parse_double(fields[1], lineno);
    r.residual = parse_double(fields[2], lineno);
    r.c_a = parse_double(fields[3], lineno);
    r.c_b = parse_double(fields[4], lineno);
    r.c_c = parse_double(fields[5], lineno);
    r.millis = parse_double(fields[6], lineno);
    if (!trace.records.empty() && r.k <= trace.records.back().k) {
      throw FormatError("trace line " + std::to_string(lineno) + ": k not increasing");
    }
    trace.records.push_back(r);
  }
  return trace;
}

IterateTrace load_trace_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return read_trace_csv(in);
}

void write_plot_data(std::ostream& out, const IterateTrace& trace) {
  out << "k,f,residual\n";
  for (const auto& r : trace.records) {
    out << r.k << ',' << fmt(r.f) << ',' << fmt(r.residual) << '\n';
  }
}

}  // namespace posred::optimizer
