#ifndef FMDP_IO_HPP
#define FMDP_IO_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "fmdp/frequency_matrix.hpp"
#include "fmdp/query_eval.hpp"
#include "fmdp/sanitized_matrix.hpp"

namespace fmdp {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& path, int64_t line, int64_t byte_offset,
             const std::string& what);
  int64_t line() const { return line_; }
  int64_t byte_offset() const { return byte_offset_; }

 private:
  int64_t line_;
  int64_t byte_offset_;
};

// Shortest decimal form that round-trips the double exactly.
std::string FormatDouble(double v);

// Sparse COO text format: header line `#extents=F1,...,Fd`, then one line
// `c1,...,cd,count` per non-zero cell, sorted row-major.
void WriteMatrix(const FrequencyMatrix& m, const std::string& path);
FrequencyMatrix ReadMatrix(const std::string& path);

// Sanitized matrix format: `#key=value` metadata lines (method, epsilon,
// seed, extents first), then one record `lo1,hi1,...,lod,hid,noisy_count`
// per partition. The timestamp and runtime metadata lines are the only
// run-varying content.
void WriteSanitized(const SanitizedMatrix& sm, const std::string& path);
SanitizedMatrix ReadSanitized(const std::string& path);

// Per-query evaluation records: `query_id,true,noisy,mre`.
void WriteQueryRecords(const std::vector<QueryRecord>& records,
                       const std::string& path);

struct SummaryRow {
  std::string method;
  double eps = 0;
  int dims = 0;
  std::string dataset;
  double mean_mre = 0;
  double median_mre = 0;
  uint64_t seed = 0;
};

// Summary CSV: `method,eps,d,dataset,mean_mre,median_mre,seed`.
void WriteSummary(const std::vector<SummaryRow>& rows,
                  const std::string& path);

void WriteTextFile(const std::string& text, const std::string& path);

}  // namespace fmdp

#endif  // FMDP_IO_HPP
