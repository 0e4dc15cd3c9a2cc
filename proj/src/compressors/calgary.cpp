#include "ncdlab/compressors/calgary.hpp"

#include <cstdio>
#include <fstream>
#include <iterator>
#include <ostream>

namespace ncdlab::codec {

const std::vector<std::string>& calgary_files() {
  static const std::vector<std::string> files = {
      "bib",   "book1", "book2", "geo",   "news",  "obj1",  "obj2",
      "paper1", "paper2", "pic", "progc", "progl", "progp", "trans"};
  return files;
}

double bits_per_byte(std::size_t original, std::size_t compressed) {
  return original == 0 ? 0.0 : 8.0 * static_cast<double>(compressed) / static_cast<double>(original);
}

std::optional<double> BenchmarkRow::bpb() const {
  if (!compressed) return std::nullopt;
  return bits_per_byte(original, *compressed);
}

std::optional<double> BenchmarkTable::average_bpb(const std::string& backend) const {
  double sum = 0;
  std::size_t n = 0;
  for (const auto& row : rows) {
    if (row.backend != backend || !row.compressed) continue;
    sum += *row.bpb();
    ++n;
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

void BenchmarkTable::write_csv(std::ostream& out) const {
  char buf[32];
  out << "backend,file,original,compressed,bpb\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    out << row.backend << ',' << row.file << ',';
    if (row.compressed) {
      std::snprintf(buf, sizeof buf, "%.3f", *row.bpb());
      out << row.original << ',' << *row.compressed << ',' << buf << '\n';
    } else {
      out << ",,skipped\n";
    }
    if (i + 1 == rows.size() || rows[i + 1].backend != row.backend) {
      out << row.backend << ",AVERAGE,,,";
      if (auto avg = average_bpb(row.backend)) {
        std::snprintf(buf, sizeof buf, "%.3f", *avg);
        out << buf;
      }
      out << '\n';
    }
  }
}

BenchmarkTable calgary_benchmark(const std::filesystem::path& dir,
                                 const std::vector<const Backend*>& backends,
                                 const std::vector<std::string>& files) {
  BenchmarkTable table;
  for (const Backend* backend : backends) {
    for (const auto& name : files) {
      BenchmarkRow row{std::string(backend->name()), name, 0, std::nullopt, false};
      std::ifstream in(dir / name, std::ios::binary);
      if (in) {
        Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        const Bytes packed = backend->compress(data);
        row.original = data.size();
        row.compressed = packed.size();
        row.round_trip_ok = backend->decompress(packed) == data;
      }
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

}  // namespace ncdlab::codec
