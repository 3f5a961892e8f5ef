#include "fmdp/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace fmdp {

namespace {

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

int64_t ParseInt(const std::string& tok, const std::string& path, int64_t line,
                 int64_t offset) {
  int64_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError(path, line, offset, "expected integer, got '" + tok + "'");
  }
  return v;
}

double ParseDouble(const std::string& tok, const std::string& path,
                   int64_t line, int64_t offset) {
  try {
    size_t used = 0;
    double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError(path, line, offset, "expected number, got '" + tok + "'");
  }
}

std::vector<int64_t> ParseExtentsLine(const std::string& line,
                                      const std::string& path,
                                      int64_t line_no, int64_t offset) {
  const std::string prefix = "#extents=";
  if (line.rfind(prefix, 0) != 0) {
    throw ParseError(path, line_no, offset,
                     "expected '#extents=...' header, got '" + line + "'");
  }
  std::vector<int64_t> extents;
  for (const std::string& tok : SplitCsv(line.substr(prefix.size()))) {
    extents.push_back(ParseInt(tok, path, line_no, offset));
  }
  return extents;
}

class LineReader {
 public:
  explicit LineReader(const std::string& path) : path_(path), in_(path) {
    if (!in_) throw std::runtime_error("cannot open " + path);
  }
  bool Next(std::string* line) {
    offset_ = in_.tellg();
    if (!std::getline(in_, *line)) return false;
    ++line_no_;
    if (!line->empty() && line->back() == '\r') line->pop_back();
    return true;
  }
  int64_t line_no() const { return line_no_; }
  int64_t offset() const { return offset_; }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::ifstream in_;
  int64_t line_no_ = 0;
  int64_t offset_ = 0;
};

}  // namespace

ParseError::ParseError(const std::string& path, int64_t line,
                       int64_t byte_offset, const std::string& what)
    : std::runtime_error(path + ":" + std::to_string(line) + " (byte offset " +
                         std::to_string(byte_offset) + "): " + what),
      line_(line),
      byte_offset_(byte_offset) {}

std::string FormatDouble(double v) {
  char buf[64];
  // %.17g always round-trips; prefer the shortest form that does.
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    double back = 0;
    std::sscanf(buf, "%lf", &back);
    if (back == v) break;
  }
  return buf;
}

void WriteMatrix(const FrequencyMatrix& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "#extents=";
  for (int k = 0; k < m.Dims(); ++k) {
    if (k) out << ",";
    out << m.extents()[k];
  }
  out << "\n";
  for (const Entry& e : m.entries()) {
    for (int64_t c : e.coord) out << c << ",";
    out << e.count << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

FrequencyMatrix ReadMatrix(const std::string& path) {
  LineReader reader(path);
  std::string line;
  if (!reader.Next(&line)) {
    throw ParseError(path, 1, 0, "empty file, expected '#extents=' header");
  }
  const auto extents =
      ParseExtentsLine(line, path, reader.line_no(), reader.offset());
  const size_t d = extents.size();

  std::vector<Entry> entries;
  while (reader.Next(&line)) {
    if (line.empty()) continue;
    const auto toks = SplitCsv(line);
    if (toks.size() != d + 1) {
      std::ostringstream os;
      os << "record has " << toks.size() << " fields, expected " << d + 1;
      throw ParseError(path, reader.line_no(), reader.offset(), os.str());
    }
    Entry e;
    e.coord.resize(d);
    for (size_t k = 0; k < d; ++k) {
      e.coord[k] = ParseInt(toks[k], path, reader.line_no(), reader.offset());
      if (e.coord[k] < 0 || e.coord[k] >= extents[k]) {
        std::ostringstream os;
        os << "coordinate " << e.coord[k] << " out of range [0," << extents[k]
           << ") in dimension " << k;
        throw ParseError(path, reader.line_no(), reader.offset(), os.str());
      }
    }
    e.count = ParseInt(toks[d], path, reader.line_no(), reader.offset());
    if (e.count <= 0) {
      throw ParseError(path, reader.line_no(), reader.offset(),
                       "counts must be positive");
    }
    entries.push_back(std::move(e));
  }
  return FrequencyMatrix::FromEntries(std::move(entries), extents);
}

void WriteSanitized(const SanitizedMatrix& sm, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "#method=" << MethodName(sm.method) << "\n";
  out << "#epsilon=" << FormatDouble(sm.epsilon) << "\n";
  out << "#seed=" << sm.seed << "\n";
  out << "#extents=";
  for (size_t k = 0; k < sm.extents.size(); ++k) {
    if (k) out << ",";
    out << sm.extents[k];
  }
  out << "\n";
  if (sm.noise_disabled) out << "#noise_disabled=1\n";
  for (const auto& [key, value] : sm.meta) {
    out << "#" << key << "=" << value << "\n";
  }
  for (const SanitizedPartition& p : sm.partitions) {
    for (const Interval& b : p.region.bounds()) {
      out << b.lo << "," << b.hi << ",";
    }
    out << FormatDouble(p.noisy_count) << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

SanitizedMatrix ReadSanitized(const std::string& path) {
  LineReader reader(path);
  SanitizedMatrix sm;
  bool have_method = false, have_eps = false, have_extents = false;
  std::string line;
  // Metadata block first, then records.
  while (reader.Next(&line)) {
    if (line.empty()) continue;
    if (line[0] != '#') break;
    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError(path, reader.line_no(), reader.offset(),
                       "metadata line without '=': '" + line + "'");
    }
    const std::string key = line.substr(1, eq - 1);
    const std::string value = line.substr(eq + 1);
    if (key == "method") {
      sm.method = ParseMethod(value);
      have_method = true;
    } else if (key == "epsilon") {
      sm.epsilon =
          ParseDouble(value, path, reader.line_no(), reader.offset());
      have_eps = true;
    } else if (key == "seed") {
      sm.seed = static_cast<uint64_t>(
          ParseInt(value, path, reader.line_no(), reader.offset()));
    } else if (key == "extents") {
      sm.extents = ParseExtentsLine(line, path, reader.line_no(),
                                    reader.offset());
      have_extents = true;
    } else if (key == "noise_disabled") {
      sm.noise_disabled = value == "1";
    } else {
      sm.AddMeta(key, value);
    }
  }
  if (!have_method || !have_eps || !have_extents) {
    throw ParseError(path, reader.line_no(), reader.offset(),
                     "missing method/epsilon/extents metadata");
  }
  const size_t d = sm.extents.size();
  // `line` still holds the first record (or is stale at EOF).
  bool pending = !line.empty() && line[0] != '#';
  while (pending || reader.Next(&line)) {
    pending = false;
    if (line.empty()) continue;
    const auto toks = SplitCsv(line);
    if (toks.size() != 2 * d + 1) {
      std::ostringstream os;
      os << "record has " << toks.size() << " fields, expected " << 2 * d + 1;
      throw ParseError(path, reader.line_no(), reader.offset(), os.str());
    }
    std::vector<Interval> bounds(d);
    for (size_t k = 0; k < d; ++k) {
      bounds[k].lo =
          ParseInt(toks[2 * k], path, reader.line_no(), reader.offset());
      bounds[k].hi =
          ParseInt(toks[2 * k + 1], path, reader.line_no(), reader.offset());
      if (bounds[k].lo >= bounds[k].hi) {
        throw ParseError(path, reader.line_no(), reader.offset(),
                         "empty interval in record");
      }
    }
    Region r(std::move(bounds));
    if (!r.WithinExtents(sm.extents)) {
      throw ParseError(path, reader.line_no(), reader.offset(),
                       "partition outside extents");
    }
    const double noisy =
        ParseDouble(toks[2 * d], path, reader.line_no(), reader.offset());
    const int64_t volume = r.Volume();
    sm.partitions.push_back({std::move(r), noisy, volume});
  }
  return sm;
}

void WriteQueryRecords(const std::vector<QueryRecord>& records,
                       const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "query_id,true,noisy,mre\n";
  for (const QueryRecord& r : records) {
    out << r.id << "," << FormatDouble(r.truth) << "," << FormatDouble(r.noisy)
        << "," << FormatDouble(r.mre) << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

void WriteSummary(const std::vector<SummaryRow>& rows,
                  const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << "method,eps,d,dataset,mean_mre,median_mre,seed\n";
  for (const SummaryRow& r : rows) {
    out << r.method << "," << FormatDouble(r.eps) << "," << r.dims << ","
        << r.dataset << "," << FormatDouble(r.mean_mre) << ","
        << FormatDouble(r.median_mre) << "," << r.seed << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

void WriteTextFile(const std::string& text, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace fmdp
