#include "tonmf/corpus_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "tonmf/errors.hpp"

namespace tonmf {

namespace {

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open input file: " + path);
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open output file: " + path);
  return out;
}

[[noreturn]] void parse_fail(const std::string& path, Index line, const std::string& what) {
  throw IoError(path + ":" + std::to_string(line) + ": " + what);
}

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isspace(c); });
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

}  // namespace

TermDocMatrix load_bow(const std::string& path) {
  auto in = open_input(path);
  Index line_no = 0;
  std::string line;

  auto read_header = [&](const char* name) {
    if (!std::getline(in, line)) parse_fail(path, line_no + 1, std::string("missing header line (") + name + ")");
    ++line_no;
    std::istringstream ss(line);
    Index v = -1;
    if (!(ss >> v) || v < 0) parse_fail(path, line_no, std::string("malformed header: expected nonnegative ") + name);
    std::string extra;
    if (ss >> extra) parse_fail(path, line_no, "malformed header: trailing tokens");
    return v;
  };

  const Index n_docs = read_header("document count");
  const Index n_terms = read_header("vocabulary size");
  const Index n_entries = read_header("entry count");

  std::vector<Triplet> entries;
  entries.reserve(static_cast<std::size_t>(n_entries));
  for (Index k = 0; k < n_entries; ++k) {
    if (!std::getline(in, line)) parse_fail(path, line_no + 1, "unexpected end of file: fewer entries than declared");
    ++line_no;
    std::istringstream ss(line);
    Index doc = 0, term = 0;
    double count = 0.0;
    if (!(ss >> doc >> term >> count)) parse_fail(path, line_no, "malformed entry: expected 'docID termID count'");
    if (doc < 1 || doc > n_docs) parse_fail(path, line_no, "document id " + std::to_string(doc) + " outside declared bounds");
    if (term < 1 || term > n_terms) parse_fail(path, line_no, "term id " + std::to_string(term) + " outside declared bounds");
    if (!std::isfinite(count) || count <= 0.0) parse_fail(path, line_no, "non-positive count");
    entries.push_back({term - 1, doc - 1, count});
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (!blank(line)) parse_fail(path, line_no, "trailing data after declared entries");
  }
  return TermDocMatrix::from_triplets(n_terms, n_docs, entries);
}

void save_bow(const TermDocMatrix& a, const std::string& path) {
  auto out = open_output(path);
  out << a.n_docs << "\n" << a.n_terms << "\n" << a.nnz() << "\n";
  for (Index j = 0; j < a.n_docs; ++j) {
    auto rows = a.col_rows(j);
    auto vals = a.col_values(j);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      out << (j + 1) << " " << (rows[k] + 1) << " " << format_value(vals[k]) << "\n";
    }
  }
  if (!out) throw IoError("write failed: " + path);
}

TermDocMatrix load_matrix_market(const std::string& path) {
  auto in = open_input(path);
  Index line_no = 1;
  std::string banner;
  if (!std::getline(in, banner)) parse_fail(path, 1, "empty file");
  std::istringstream hs(lower(banner));
  std::string tag, object, format, field, symmetry;
  hs >> tag >> object >> format >> field >> symmetry;
  if (tag != "%%matrixmarket" || object != "matrix") parse_fail(path, 1, "not a MatrixMarket file");
  if (format != "coordinate") parse_fail(path, 1, "expected coordinate format");
  if (field == "pattern") parse_fail(path, 1, "pattern matrices are not supported (values required)");
  if (field != "real" && field != "integer") parse_fail(path, 1, "unsupported field type: " + field);
  if (symmetry != "general") parse_fail(path, 1, "unsupported symmetry: " + symmetry);

  std::string line;
  Index m = 0, n = 0, declared = 0;
  bool have_size = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line[0] == '%') continue;
    if (blank(line)) continue;
    std::istringstream ss(line);
    if (!(ss >> m >> n >> declared) || m < 0 || n < 0 || declared < 0) {
      parse_fail(path, line_no, "malformed size line");
    }
    have_size = true;
    break;
  }
  if (!have_size) parse_fail(path, line_no, "missing size line");

  std::vector<Triplet> entries;
  entries.reserve(static_cast<std::size_t>(declared));
  Index seen = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line[0] == '%') continue;
    if (blank(line)) continue;
    if (seen == declared) parse_fail(path, line_no, "more entries than declared");
    std::istringstream ss(line);
    Index row = 0, col = 0;
    double value = 0.0;
    if (!(ss >> row >> col >> value)) parse_fail(path, line_no, "malformed entry line");
    if (row < 1 || row > m || col < 1 || col > n) parse_fail(path, line_no, "entry index out of bounds");
    if (!std::isfinite(value)) parse_fail(path, line_no, "non-finite entry");
    if (value < 0.0) parse_fail(path, line_no, "negative entry (matrix must be nonnegative)");
    ++seen;
    if (value == 0.0) continue;  // explicit zeros are dropped
    entries.push_back({row - 1, col - 1, value});
  }
  if (seen != declared) parse_fail(path, line_no, "fewer entries than declared");
  return TermDocMatrix::from_triplets(m, n, entries);
}

void save_matrix_market(const TermDocMatrix& a, const std::string& path) {
  auto out = open_output(path);
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << a.n_terms << " " << a.n_docs << " " << a.nnz() << "\n";
  for (Index j = 0; j < a.n_docs; ++j) {
    auto rows = a.col_rows(j);
    auto vals = a.col_values(j);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      out << (rows[k] + 1) << " " << (j + 1) << " " << format_value(vals[k]) << "\n";
    }
  }
  if (!out) throw IoError("write failed: " + path);
}

void save_dense_matrix_market(const Eigen::MatrixXd& m, const std::string& path,
                              const std::string& comment) {
  auto out = open_output(path);
  out << "%%MatrixMarket matrix array real general\n";
  if (!comment.empty()) out << "% " << comment << "\n";
  out << m.rows() << " " << m.cols() << "\n";
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      out << format_value(m(i, j)) << "\n";
    }
  }
  if (!out) throw IoError("write failed: " + path);
}

Eigen::MatrixXd load_dense_matrix_market(const std::string& path) {
  auto in = open_input(path);
  std::string banner;
  if (!std::getline(in, banner)) parse_fail(path, 1, "empty file");
  std::istringstream hs(lower(banner));
  std::string tag, object, format, field, symmetry;
  hs >> tag >> object >> format >> field >> symmetry;
  if (tag != "%%matrixmarket" || format != "array") parse_fail(path, 1, "expected MatrixMarket array file");
  std::string line;
  Index line_no = 1, rows = -1, cols = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line[0] == '%') continue;
    if (blank(line)) continue;
    std::istringstream ss(line);
    if (!(ss >> rows >> cols) || rows < 0 || cols < 0) parse_fail(path, line_no, "malformed size line");
    break;
  }
  if (rows < 0) parse_fail(path, line_no, "missing size line");
  Eigen::MatrixXd m(rows, cols);
  Index filled = 0;
  const Index total = rows * cols;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line[0] == '%') continue;
    if (blank(line)) continue;
    std::istringstream ss(line);
    double v = 0.0;
    while (ss >> v) {
      if (filled == total) parse_fail(path, line_no, "more values than declared");
      m(filled % rows, filled / rows) = v;
      ++filled;
    }
  }
  if (filled != total) parse_fail(path, line_no, "fewer values than declared");
  return m;
}

LabelVector load_labels(const std::string& path, Index n_docs) {
  auto in = open_input(path);
  LabelVector labels;
  labels.reserve(static_cast<std::size_t>(n_docs));
  std::string line;
  Index line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    std::istringstream ss(line);
    long v = -1;
    std::string extra;
    if (!(ss >> v) || (ss >> extra)) parse_fail(path, line_no, "expected a single 0/1 per line");
    if (v != 0 && v != 1) parse_fail(path, line_no, "label outside {0, 1}");
    labels.push_back(static_cast<int>(v));
  }
  if (static_cast<Index>(labels.size()) != n_docs) {
    throw ShapeError(path + ": " + std::to_string(labels.size()) + " labels for " +
                     std::to_string(n_docs) + " documents");
  }
  return labels;
}

void save_labels(const LabelVector& labels, const std::string& path) {
  auto out = open_output(path);
  for (int v : labels) out << v << "\n";
  if (!out) throw IoError("write failed: " + path);
}

TermDocMatrix tfidf_transform(const TermDocMatrix& a) {
  std::vector<Index> df(static_cast<std::size_t>(a.n_terms), 0);
  for (Index r : a.row_idx) ++df[static_cast<std::size_t>(r)];
  TermDocMatrix out = a;
  const double n = static_cast<double>(a.n_docs);
  for (std::size_t k = 0; k < out.values.size(); ++k) {
    const double d = static_cast<double>(df[static_cast<std::size_t>(out.row_idx[k])]);
    out.values[k] *= std::log((1.0 + n) / (1.0 + d)) + 1.0;
  }
  return out;
}

}  // namespace tonmf
