#include "minexp/matrix_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <utility>
#include <vector>

#include "minexp/error.hpp"

namespace minexp::io {

namespace {

[[noreturn]] void fail(ErrorCode code, int line, const std::string& what) {
  throw Error(code, "line " + std::to_string(line) + ": " + what);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  f << std::setprecision(17);
  return f;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot read " + path);
  return f;
}

bool parse_int(const std::string& tok, long& out) {
  char* end = nullptr;
  out = std::strtol(tok.c_str(), &end, 10);
  return !tok.empty() && *end == '\0';
}

bool parse_double(const std::string& tok, double& out) {
  char* end = nullptr;
  out = std::strtod(tok.c_str(), &end);
  return !tok.empty() && *end == '\0' && std::isfinite(out);
}

bool skippable(const std::string& line) {
  const auto p = line.find_first_not_of(" \t\r");
  return p == std::string::npos || line[p] == '#';
}

}  // namespace

void write_matrix(std::ostream& out, const MeasurementMatrix& a) {
  const auto old = out.precision(17);
  out << a.n() << ' ' << a.m() << ' ' << a.d() << ' ' << a.epsilon1() << '\n';
  for (Index j = 0; j < a.n(); ++j) {
    out << j << ':';
    const auto rows = a.graph().column(j);
    const auto w = a.weights(j);
    for (std::size_t e = 0; e < rows.size(); ++e) out << ' ' << rows[e] << ':' << w[e];
    out << '\n';
  }
  out.precision(old);
}

void write_matrix(const std::string& path, const MeasurementMatrix& a) {
  auto f = open_out(path);
  write_matrix(f, a);
  if (!f) throw Error(ErrorCode::InvalidArgument, "write failed for " + path);
}

MeasurementMatrix read_matrix(std::istream& in) {
  std::string line;
  int line_no = 0;
  auto next = [&]() {
    while (std::getline(in, line)) {
      ++line_no;
      if (!skippable(line)) return true;
    }
    return false;
  };

  if (!next()) fail(ErrorCode::FormatError, line_no, "missing header");
  long n = 0, m = 0, d = 0;
  double eps1 = 0.0;
  {
    std::istringstream hs(line);
    std::string tn, tm, td, te, extra;
    hs >> tn >> tm >> td >> te;
    if (!parse_int(tn, n) || !parse_int(tm, m) || !parse_int(td, d) || !parse_double(te, eps1) || (hs >> extra) ||
        n < 0 || m < 1 || d < 1 || d > m || eps1 < 0.0 || eps1 >= 1.0) {
      fail(ErrorCode::FormatError, line_no, "header must be 'n m d epsilon1'");
    }
  }

  std::vector<IndexSet> cols;
  std::vector<std::vector<double>> weights;
  while (next()) {
    std::istringstream ls(line);
    std::string tok;
    ls >> tok;
    long j = 0;
    if (tok.empty() || tok.back() != ':' || !parse_int(tok.substr(0, tok.size() - 1), j)) {
      fail(ErrorCode::FormatError, line_no, "expected 'j:' column label");
    }
    if (j != static_cast<long>(cols.size())) {
      fail(ErrorCode::FormatError, line_no, "column " + std::to_string(j) + " out of order");
    }
    std::vector<std::pair<Index, double>> entries;
    while (ls >> tok) {
      const auto colon = tok.find(':');
      long r = 0;
      double w = 0.0;
      if (colon == std::string::npos || !parse_int(tok.substr(0, colon), r) ||
          !parse_double(tok.substr(colon + 1), w)) {
        fail(ErrorCode::FormatError, line_no, "bad entry '" + tok + "'");
      }
      if (r < 0 || r >= m) fail(ErrorCode::FormatError, line_no, "row " + std::to_string(r) + " out of range");
      if (!(w > 0.0)) fail(ErrorCode::FormatError, line_no, "weights must be positive");
      entries.emplace_back(static_cast<Index>(r), w);
    }
    if (entries.empty()) fail(ErrorCode::FormatError, line_no, "empty column");
    if (static_cast<long>(entries.size()) > d) {
      fail(ErrorCode::FormatError, line_no,
           std::to_string(entries.size()) + " entries in a column of degree " + std::to_string(d));
    }
    std::sort(entries.begin(), entries.end());
    IndexSet rows;
    std::vector<double> w;
    double sum = 0.0;
    for (const auto& [r, v] : entries) {
      if (!rows.empty() && rows.back() == r) fail(ErrorCode::FormatError, line_no, "repeated row");
      rows.push_back(r);
      w.push_back(v);
      sum += v;
    }
    if (std::abs(sum - static_cast<double>(d)) > 1e-9 * static_cast<double>(d)) {
      std::ostringstream msg;
      msg << std::setprecision(17) << "column " << j << " sums to " << sum << ", expected " << d;
      fail(ErrorCode::ChecksumMismatch, line_no, msg.str());
    }
    cols.push_back(std::move(rows));
    weights.push_back(std::move(w));
  }
  if (static_cast<long>(cols.size()) != n) {
    fail(ErrorCode::ChecksumMismatch, line_no,
         "header says " + std::to_string(n) + " columns, body has " + std::to_string(cols.size()));
  }
  BipartiteGraph g(static_cast<Index>(m), static_cast<Index>(d), std::move(cols));
  return MeasurementMatrix(std::move(g), std::move(weights), eps1);
}

MeasurementMatrix read_matrix(const std::string& path) {
  auto f = open_in(path);
  return read_matrix(f);
}

void write_vector(std::ostream& out, const linalg::Vector& v) {
  const auto old = out.precision(17);
  for (Eigen::Index i = 0; i < v.size(); ++i) out << v(i) << '\n';
  out.precision(old);
}

void write_vector(const std::string& path, const linalg::Vector& v) {
  auto f = open_out(path);
  write_vector(f, v);
  if (!f) throw Error(ErrorCode::InvalidArgument, "write failed for " + path);
}

linalg::Vector read_vector(std::istream& in) {
  std::vector<double> vals;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      double v = 0.0;
      if (!parse_double(tok, v)) fail(ErrorCode::FormatError, line_no, "bad number '" + tok + "'");
      vals.push_back(v);
    }
  }
  return Eigen::Map<linalg::Vector>(vals.data(), static_cast<Eigen::Index>(vals.size()));
}

linalg::Vector read_vector(const std::string& path) {
  auto f = open_in(path);
  return read_vector(f);
}

}  // namespace minexp::io
