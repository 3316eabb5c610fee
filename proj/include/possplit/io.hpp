#pragma once

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>

#include "errors.hpp"
#include "state.hpp"

namespace possplit {

// 17 significant digits: enough for exact double round-trips, so identical
// runs produce byte-identical files.
inline std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Writes through a temp file and renames, so readers never observe a
// half-written output.
inline void atomic_write(const std::filesystem::path& path, std::string_view content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw UsageError("cannot open output file " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw UsageError("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

// Grid functions serialize as rows `x,Re(u),Im(u)`.
inline std::string grid_csv(const GridFunction& u) {
  std::string out;
  for (int r = 0; r < u.size(); ++r) {
    out += fmt17(u.grid().point(r));
    out += ',';
    out += fmt17(u[r].real());
    out += ',';
    out += fmt17(u[r].imag());
    out += '\n';
  }
  return out;
}

}  // namespace possplit
