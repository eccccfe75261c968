#pragma once
// UFD1 field files: a one-line header
//     UFD1 d=<d> N=<N> P=<P> domain=<physical|spectral>
// followed by exactly N^d lines of "<re> <im>" in row-major order, printed
// with 17 significant digits so write/read round-trips bit-exactly.

#include <iosfwd>
#include <string>

#include "uniscale/grid.hpp"

namespace uniscale {

void write_ufd1(std::ostream& os, const Field& f);
void write_ufd1_file(const std::string& path, const Field& f);

Field read_ufd1(std::istream& is);
Field read_ufd1_file(const std::string& path);

// 17-significant-digit formatting used for all numeric report output.
std::string fmt17(double x);

}  // namespace uniscale
