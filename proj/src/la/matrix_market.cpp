#include "eddy/la/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace eddy::la {

namespace {

struct Header {
  std::string format;    // coordinate | array
  std::string symmetry;  // general | symmetric
};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

class LineReader {
 public:
  explicit LineReader(const std::filesystem::path& path) : path_(path.string()), in_(path) {
    if (!in_) throw MatrixMarketError(path_, 0, "cannot open file");
  }

  // Next non-comment line; false at EOF.
  bool next_data(std::string& line) {
    while (std::getline(in_, line)) {
      ++line_no_;
      if (line.empty() || line[0] == '%') continue;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      return true;
    }
    return false;
  }

  bool next_raw(std::string& line) {
    if (!std::getline(in_, line)) return false;
    ++line_no_;
    return true;
  }

  [[noreturn]] void fail(const std::string& what) const { throw MatrixMarketError(path_, line_no_, what); }

 private:
  std::string path_;
  std::ifstream in_;
  std::size_t line_no_ = 0;
};

Header read_header(LineReader& reader) {
  std::string line;
  if (!reader.next_raw(line)) reader.fail("empty file");
  std::istringstream ss(line);
  std::string banner, object, format, field, symmetry;
  ss >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket") reader.fail("missing %%MatrixMarket banner");
  if (lower(object) != "matrix") reader.fail("unsupported object '" + object + "'");
  format = lower(format);
  if (format != "coordinate" && format != "array") reader.fail("unsupported format '" + format + "'");
  if (lower(field) != "real") reader.fail("unsupported field '" + field + "' (only real is accepted)");
  symmetry = lower(symmetry);
  if (symmetry != "general" && symmetry != "symmetric") reader.fail("unsupported symmetry '" + symmetry + "'");
  return {format, symmetry};
}

template <typename T>
T parse_field(std::istringstream& ss, LineReader& reader, const char* what) {
  T value;
  if (!(ss >> value)) reader.fail(std::string("cannot parse ") + what);
  return value;
}

void expect_end(std::istringstream& ss, LineReader& reader) {
  std::string rest;
  if (ss >> rest) reader.fail("unexpected trailing token '" + rest + "'");
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

void put_double(std::ostream& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out << buf;
}

}  // namespace

SpMat mm_read(const std::filesystem::path& path) {
  LineReader reader(path);
  const Header header = read_header(reader);
  if (header.format != "coordinate") reader.fail("expected coordinate format");

  std::string line;
  if (!reader.next_data(line)) reader.fail("missing size line");
  std::istringstream size_line(line);
  const long rows = parse_field<long>(size_line, reader, "row count");
  const long cols = parse_field<long>(size_line, reader, "column count");
  const long nnz = parse_field<long>(size_line, reader, "entry count");
  expect_end(size_line, reader);
  if (rows < 0 || cols < 0 || nnz < 0) reader.fail("negative dimension");
  if (header.symmetry == "symmetric" && rows != cols) reader.fail("symmetric matrix must be square");

  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(header.symmetry == "symmetric" ? 2 * nnz : nnz));
  for (long k = 0; k < nnz; ++k) {
    if (!reader.next_data(line)) reader.fail("expected " + std::to_string(nnz) + " entries, found " + std::to_string(k));
    std::istringstream ss(line);
    const long i = parse_field<long>(ss, reader, "row index");
    const long j = parse_field<long>(ss, reader, "column index");
    const double v = parse_field<double>(ss, reader, "value");
    expect_end(ss, reader);
    if (i < 1 || i > rows || j < 1 || j > cols)
      reader.fail("index (" + std::to_string(i) + ", " + std::to_string(j) + ") out of bounds (1-based)");
    triplets.emplace_back(i - 1, j - 1, v);
    if (header.symmetry == "symmetric" && i != j) triplets.emplace_back(j - 1, i - 1, v);
  }
  if (reader.next_data(line)) reader.fail("more entries than announced");

  SpMat a(rows, cols);
  a.setFromTriplets(triplets.begin(), triplets.end());
  a.makeCompressed();
  return a;
}

void mm_write(const std::filesystem::path& path, const SpMat& a) {
  auto out = open_out(path);
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << a.rows() << ' ' << a.cols() << ' ' << a.nonZeros() << '\n';
  for (Index j = 0; j < a.outerSize(); ++j) {
    for (SpMat::InnerIterator it(a, j); it; ++it) {
      out << it.row() + 1 << ' ' << it.col() + 1 << ' ';
      put_double(out, it.value());
      out << '\n';
    }
  }
}

Eigen::MatrixXd mm_read_dense(const std::filesystem::path& path) {
  LineReader reader(path);
  const Header header = read_header(reader);
  if (header.format != "array") reader.fail("expected array format");
  if (header.symmetry != "general") reader.fail("only general dense arrays are supported");
  std::string line;
  if (!reader.next_data(line)) reader.fail("missing size line");
  std::istringstream size_line(line);
  const long rows = parse_field<long>(size_line, reader, "row count");
  const long cols = parse_field<long>(size_line, reader, "column count");
  expect_end(size_line, reader);
  if (rows < 0 || cols < 0) reader.fail("negative dimension");
  Eigen::MatrixXd a(rows, cols);
  for (long k = 0; k < rows * cols; ++k) {
    if (!reader.next_data(line)) reader.fail("too few values");
    std::istringstream ss(line);
    a.data()[k] = parse_field<double>(ss, reader, "value");
    expect_end(ss, reader);
  }
  if (reader.next_data(line)) reader.fail("more values than announced");
  return a;
}

void mm_write_dense(const std::filesystem::path& path, const Eigen::MatrixXd& a) {
  auto out = open_out(path);
  out << "%%MatrixMarket matrix array real general\n";
  out << a.rows() << ' ' << a.cols() << '\n';
  for (Index k = 0; k < a.size(); ++k) {
    put_double(out, a.data()[k]);
    out << '\n';
  }
}

}  // namespace eddy::la
