#include "uniscale/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace uniscale {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_ufd1(std::ostream& os, const Field& f) {
  os << "UFD1 d=" << f.grid.d << " N=" << f.grid.N << " P=" << f.grid.P << " domain="
     << (f.domain == Domain::physical ? "physical" : "spectral") << "\n";
  for (const auto& z : f.v) os << fmt17(z.real()) << " " << fmt17(z.imag()) << "\n";
}

void write_ufd1_file(const std::string& path, const Field& f) {
  std::ofstream os(path);
  if (!os) throw validation_error("cannot open '" + path + "' for writing");
  write_ufd1(os, f);
  if (!os) throw validation_error("write failed for '" + path + "'");
}

namespace {

long parse_kv(const std::string& tok, const std::string& key) {
  if (tok.rfind(key + "=", 0) != 0)
    throw validation_error("UFD1 header: expected " + key + "=..., got '" + tok + "'");
  const std::string val = tok.substr(key.size() + 1);
  char* end = nullptr;
  long v = std::strtol(val.c_str(), &end, 10);
  if (end == val.c_str() || *end != '\0')
    throw validation_error("UFD1 header: bad integer in '" + tok + "'");
  return v;
}

}  // namespace

Field read_ufd1(std::istream& is) {
  std::string header;
  if (!std::getline(is, header)) throw validation_error("UFD1: empty input");
  std::istringstream hs(header);
  std::string magic, dtok, ntok, ptok, domtok;
  hs >> magic >> dtok >> ntok >> ptok >> domtok;
  if (magic != "UFD1") throw validation_error("UFD1: bad magic '" + magic + "'");
  const int d = static_cast<int>(parse_kv(dtok, "d"));
  const int N = static_cast<int>(parse_kv(ntok, "N"));
  const int P = static_cast<int>(parse_kv(ptok, "P"));
  Domain dom;
  if (domtok == "domain=physical")
    dom = Domain::physical;
  else if (domtok == "domain=spectral")
    dom = Domain::spectral;
  else
    throw validation_error("UFD1 header: bad domain token '" + domtok + "'");

  Field f(GridSpec(d, N, P), dom);
  std::string line;
  std::size_t count = 0;
  while (std::getline(is, line)) {
    // allow trailing blank lines only
    if (line.empty()) {
      std::string rest;
      while (std::getline(is, rest))
        if (!rest.empty()) throw validation_error("UFD1: blank line inside data block");
      break;
    }
    if (count >= f.size()) throw validation_error("UFD1: more samples than N^d");
    std::istringstream ls(line);
    double re, im;
    if (!(ls >> re >> im)) throw validation_error("UFD1: malformed sample line '" + line + "'");
    std::string extra;
    if (ls >> extra) throw validation_error("UFD1: trailing tokens on sample line");
    f.v[count++] = cplx(re, im);
  }
  if (count != f.size())
    throw validation_error("UFD1: expected " + std::to_string(f.size()) + " samples, got " +
                           std::to_string(count));
  return f;
}

Field read_ufd1_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw validation_error("cannot open '" + path + "'");
  return read_ufd1(is);
}

}  // namespace uniscale
