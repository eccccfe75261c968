#include "uniscale/report.hpp"

#include <cmath>
#include <fstream>
#include <map>

#include <json.hpp>

#include "uniscale/io.hpp"

namespace uniscale {

double guarded_ratio(double num, double den) {
  if (den == 0.0) return num == 0.0 ? 0.0 : HUGE_VAL;
  return num / den;
}

void RatioReport::add(const std::string& entry, const std::string& sweep,
                      const std::string& row_params, double ratio) {
  rows.push_back(RatioRow{entry, sweep, row_params, ratio});
}

void RatioReport::finalize(double spread_limit) {
  max_ratio = 0.0;
  finite = true;
  std::map<std::string, double> sweep_max;
  for (const auto& r : rows) {
    if (!std::isfinite(r.ratio) || r.ratio < 0.0) finite = false;
    max_ratio = std::max(max_ratio, r.ratio);
    auto& m = sweep_max[r.sweep];
    m = std::max(m, r.ratio);
  }
  double hi = 0.0, lo = 0.0;
  bool any = false;
  for (const auto& [key, m] : sweep_max) {
    if (m <= 0.0) continue;  // all-zero groups carry no uniformity signal
    if (!any) {
      hi = lo = m;
      any = true;
    } else {
      hi = std::max(hi, m);
      lo = std::min(lo, m);
    }
  }
  spread = any ? hi / lo : 1.0;
  uniform = finite && spread < spread_limit;
}

std::string reports_to_json(const std::vector<RatioReport>& reports) {
  nlohmann::ordered_json root = nlohmann::ordered_json::array();
  for (const auto& rep : reports) {
    nlohmann::ordered_json jr;
    jr["check"] = rep.check_id;
    jr["params"] = rep.params;
    jr["rows"] = rep.rows.size();
    jr["max_ratio"] = fmt17(rep.max_ratio);
    jr["doubled_max_ratio"] = fmt17(rep.doubled_max_ratio);
    jr["spread"] = fmt17(rep.spread);
    jr["finite"] = rep.finite;
    jr["uniform"] = rep.uniform;
    jr["stable"] = rep.stable;
    jr["pass"] = rep.pass;
    if (!rep.note.empty()) jr["note"] = rep.note;
    root.push_back(std::move(jr));
  }
  return root.dump(2) + "\n";
}

std::string reports_to_csv(const std::vector<RatioReport>& reports) {
  std::string out = "check,params,entry,sweep,row_params,ratio\n";
  for (const auto& rep : reports)
    for (const auto& r : rep.rows) {
      out += rep.check_id;
      out += ',';
      out += rep.params;
      out += ',';
      out += r.entry;
      out += ',';
      out += r.sweep;
      out += ',';
      out += r.params;
      out += ',';
      out += fmt17(r.ratio);
      out += '\n';
    }
  return out;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw validation_error("cannot open '" + path + "' for writing");
  os << text;
  if (!os) throw validation_error("failed writing '" + path + "'");
}

}  // namespace uniscale
