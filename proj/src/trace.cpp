#include "htopt/trace.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace htopt {

namespace {

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::vector<std::string> split_line(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::stringstream ss(line);
  while (std::getline(ss, cur, sep)) out.push_back(cur);
  return out;
}

}  // namespace

double RunTrace::min_grad_norm() const {
  if (rows.empty()) throw std::logic_error("min_grad_norm: empty trace");
  double m = rows.front().grad_norm_exact;
  for (const auto& r : rows) m = std::min(m, r.grad_norm_exact);
  return m;
}

double RunTrace::avg_grad_norm() const {
  if (rows.empty()) throw std::logic_error("avg_grad_norm: empty trace");
  double s = 0.0;
  for (const auto& r : rows) s += r.grad_norm_exact;
  return s / static_cast<double>(rows.size());
}

std::optional<long> iterations_to_target(const RunTrace& trace, double target) {
  if (!(target > 0.0)) throw std::invalid_argument("iterations_to_target: target must be > 0");
  for (const auto& r : trace.rows) {
    if (r.grad_norm_exact <= target) return r.t;
  }
  return std::nullopt;
}

std::string trace_to_csv(const RunTrace& trace) {
  std::ostringstream out;
  for (const auto& [k, v] : trace.meta) out << "# " << k << "=" << v << "\n";
  out << "t,grad_norm_exact,momentum_norm,q_t,grad_clip_active,hvp_clip_active,samples_used\n";
  for (const auto& r : trace.rows) {
    out << r.t << ',' << fmt_double(r.grad_norm_exact) << ','
        << fmt_double(r.momentum_norm) << ',' << fmt_double(r.q_t) << ','
        << (r.grad_clip_active ? 1 : 0) << ',' << (r.hvp_clip_active ? 1 : 0) << ','
        << r.samples_used << "\n";
  }
  return out.str();
}

RunTrace parse_trace_csv(const std::string& csv) {
  RunTrace trace;
  std::stringstream ss(csv);
  std::string line;
  bool header_seen = false;
  while (std::getline(ss, line)) {
    if (line.empty()) continue;
    if (line.rfind("# ", 0) == 0) {
      auto eq = line.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("bad metadata line: " + line);
      trace.meta[line.substr(2, eq - 2)] = line.substr(eq + 1);
      continue;
    }
    if (!header_seen) {
      header_seen = true;  // column header
      continue;
    }
    auto f = split_line(line, ',');
    if (f.size() != 7) throw std::invalid_argument("bad trace row: " + line);
    TraceRow r;
    r.t = std::stol(f[0]);
    r.grad_norm_exact = std::stod(f[1]);
    r.momentum_norm = std::stod(f[2]);
    r.q_t = std::stod(f[3]);
    r.grad_clip_active = f[4] == "1";
    r.hvp_clip_active = f[5] == "1";
    r.samples_used = std::stol(f[6]);
    trace.rows.push_back(r);
  }
  return trace;
}

namespace {

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << body;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace

void emit_csv(const RunTrace& trace, const std::string& path) {
  write_file(path, trace_to_csv(trace));
}

std::string table_to_csv(const Table& table) {
  std::ostringstream out;
  for (const auto& [k, v] : table.meta) out << "# " << k << "=" << v << "\n";
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out << ',';
    out << table.columns[i];
  }
  out << "\n";
  for (const auto& row : table.rows) {
    if (row.size() != table.columns.size()) {
      throw std::invalid_argument("table row width mismatch");
    }
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << fmt_double(row[i]);
    }
    out << "\n";
  }
  return out.str();
}

void emit_csv(const Table& table, const std::string& path) {
  write_file(path, table_to_csv(table));
}

}  // namespace htopt
