#pragma once
// Ratio reports: the record produced by every inequality check.  A check
// evaluates LHS / (bound RHS) per corpus entry and parameter point; the
// report keeps every row plus the aggregates the pass criteria look at:
// all ratios finite, max ratio stable when the corpus doubles, and the
// per-parameter spread of maxima bounded (uniformity in the swept value).

#include <string>
#include <vector>

#include "uniscale/common.hpp"

namespace uniscale {

struct RatioRow {
  std::string entry;   // corpus entry name
  std::string sweep;   // swept-parameter value this row belongs to ("j=-2")
  std::string params;  // remaining parameter tuple
  double ratio = 0.0;
};

struct RatioReport {
  std::string check_id;
  std::string params;  // check-level parameters ("p=2 q=1 L=2")
  std::vector<RatioRow> rows;

  double max_ratio = 0.0;
  double doubled_max_ratio = 0.0;  // same check on the doubled corpus
  double spread = 1.0;             // max/min of per-sweep-value maxima
  bool finite = true;
  bool uniform = true;             // spread within the configured limit
  bool stable = true;              // doubled max < 2x base max
  bool pass = false;
  std::string note;

  void add(const std::string& entry, const std::string& sweep, const std::string& params,
           double ratio);
  // Recompute max/spread/finite from rows; pass stays with the caller, which
  // also knows the doubled-corpus value.
  void finalize(double spread_limit);
};

// Ratio with the report conventions: 0/0 is a vacuous zero row, x/0 is +inf
// (trips the finite flag).
double guarded_ratio(double num, double den);

// params: one line per report; rows stream into the CSV variant.
std::string reports_to_json(const std::vector<RatioReport>& reports);
std::string reports_to_csv(const std::vector<RatioReport>& reports);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace uniscale
