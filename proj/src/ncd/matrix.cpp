#include "ncdlab/ncd/matrix.hpp"

#include <atomic>
#include <cmath>
#include <iomanip>
#include <exception>
#include <istream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "ncdlab/common/error.hpp"

namespace ncdlab::ncd {
namespace {

void finish_diagnostics(NcdMatrix& m) {
  const std::size_t n = m.size();
  m.max_asymmetry = 0.0;
  m.soft_violations = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      m.max_asymmetry = std::max(m.max_asymmetry, std::fabs(m.values[i][j] - m.values[j][i]));
      if (m.values[i][j] > kSoftUpperBound) ++m.soft_violations;
    }
  }
}

void check_square(const NcdMatrix& m, std::size_t line) {
  if (m.labels.size() < 2) throw ParseError("matrix needs at least two rows", line);
  for (const auto& row : m.values)
    if (row.size() != m.labels.size()) throw ParseError("matrix is not square", line);
  for (const auto& row : m.values)
    for (double v : row)
      if (!std::isfinite(v) || v < 0.0) throw ParseError("matrix cell is negative or not finite", line);
}

double parse_cell(const std::string& text, std::size_t line) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw ParseError("bad number '" + text + "'", line);
    return v;
  } catch (const std::logic_error&) {
    throw ParseError("bad number '" + text + "'", line);
  }
}

}  // namespace

NcdMatrix ncd_matrix(const codec::Backend& backend, const std::vector<Document>& docs,
                     const MatrixOptions& options) {
  if (docs.size() < 2) throw ValidationError("NCD matrix needs at least two documents");
  for (const auto& d : docs)
    if (d.bytes.empty()) throw ValidationError("document '" + d.id + "' is empty");

  CompressedLengthCache local;
  CompressedLengthCache* cache = options.cache ? options.cache : (options.use_cache ? &local : nullptr);

  const std::size_t n = docs.size();
  NcdMatrix m;
  m.backend_name = std::string(backend.name());
  for (const auto& d : docs) m.labels.push_back(d.id);
  m.values.assign(n, std::vector<double>(n, 0.0));

  // Singles first so the pair cells only ever hit the cache for C(x).
  std::vector<std::size_t> single(n);
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j || !options.skip_diagonal) cells.emplace_back(i, j);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto run = [&](auto&& job, std::size_t count) {
    next = 0;
    auto worker = [&] {
      try {
        for (std::size_t k; (k = next++) < count;) job(k);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    };
    const unsigned threads = std::max(1u, std::min<unsigned>(options.workers, static_cast<unsigned>(count)));
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    pool.clear();
    if (failure) std::rethrow_exception(failure);
  };

  run([&](std::size_t i) {
    single[i] = cache ? cache->length(backend, docs[i].bytes) : backend.compressed_len(docs[i].bytes);
  }, n);
  run([&](std::size_t k) {
    const auto [i, j] = cells[k];
    const ByteView x = docs[i].bytes, y = docs[j].bytes;
    const std::size_t cxy = cache ? cache->length_of_concat(backend, x, y) : backend.compressed_len(concat(x, y));
    const std::size_t cyx = cache ? cache->length_of_concat(backend, y, x) : backend.compressed_len(concat(y, x));
    const double v = ncd_from_lengths(single[i], single[j], cxy, cyx);
    if (!(v < kHardUpperBound))
      throw Error("NCD(" + docs[i].id + ", " + docs[j].id + ") = " + std::to_string(v) +
                  " exceeds 1.5; backend fault");
    m.values[i][j] = v;
  }, cells.size());

  finish_diagnostics(m);
  return m;
}

void write_csv(std::ostream& out, const NcdMatrix& m) {
  out << "id";
  for (const auto& l : m.labels) out << ',' << l;
  out << '\n' << std::setprecision(6) << std::fixed;
  for (std::size_t i = 0; i < m.size(); ++i) {
    out << m.labels[i];
    for (double v : m.values[i]) out << ',' << v;
    out << '\n';
  }
  out << std::defaultfloat;
}

void write_square(std::ostream& out, const NcdMatrix& m) {
  out << m.size() << '\n' << std::setprecision(6) << std::fixed;
  for (std::size_t i = 0; i < m.size(); ++i) {
    out << m.labels[i];
    for (double v : m.values[i]) out << ' ' << v;
    out << '\n';
  }
  out << std::defaultfloat;
}

NcdMatrix read_csv(std::istream& in) {
  NcdMatrix m;
  std::string line;
  std::size_t line_no = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    for (std::string f; std::getline(ss, f, ',');) fields.push_back(f);
    if (header) {
      if (fields.size() < 3) throw ParseError("matrix header needs at least two labels", line_no);
      m.labels.assign(fields.begin() + 1, fields.end());
      header = false;
      continue;
    }
    if (fields.size() != m.labels.size() + 1) throw ParseError("row width differs from header", line_no);
    if (fields[0] != m.labels[m.values.size()])
      throw ParseError("row label '" + fields[0] + "' does not match header order", line_no);
    std::vector<double> row;
    for (std::size_t k = 1; k < fields.size(); ++k) row.push_back(parse_cell(fields[k], line_no));
    m.values.push_back(std::move(row));
  }
  if (m.values.size() != m.labels.size()) throw ParseError("matrix has missing rows", line_no);
  check_square(m, line_no);
  finish_diagnostics(m);
  return m;
}

NcdMatrix read_square(std::istream& in) {
  NcdMatrix m;
  std::string line;
  std::size_t line_no = 0, n = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::stringstream ss(line);
    std::string first;
    if (!(ss >> first)) continue;
    if (n == 0) {
      n = static_cast<std::size_t>(parse_cell(first, line_no));
      if (n < 2) throw ParseError("matrix size must be at least 2", line_no);
      continue;
    }
    if (m.labels.size() == n) throw ParseError("more rows than declared", line_no);
    m.labels.push_back(first);
    std::vector<double> row;
    for (std::string cell; ss >> cell;) row.push_back(parse_cell(cell, line_no));
    if (row.size() != n) throw ParseError("row has " + std::to_string(row.size()) + " cells", line_no);
    m.values.push_back(std::move(row));
  }
  if (n == 0 || m.labels.size() != n) throw ParseError("matrix has missing rows", line_no);
  check_square(m, line_no);
  finish_diagnostics(m);
  return m;
}

NcdMatrix read_matrix(std::istream& in) {
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  std::istringstream again(text);
  if (first != std::string::npos && std::isdigit(static_cast<unsigned char>(text[first])) &&
      text.find(',') == std::string::npos)
    return read_square(again);
  return read_csv(again);
}

}  // namespace ncdlab::ncd
