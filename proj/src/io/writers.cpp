#include "activech/io/writers.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "activech/error.hpp"

namespace activech::io {

namespace fs = std::filesystem;

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw IoError("write failed: " + tmp);
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot rename " + tmp + " to " + path);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void ensure_directory(const std::string& path) {
  std::error_code ec;
  fs::create_directories(path, ec);
  if (ec || !fs::is_directory(path)) throw IoError("cannot create directory " + path);
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string diagnostics_csv(const std::vector<fem::DiagnosticRow>& rows, int mode_lmax) {
  std::string out = "t,mass,energy,q_h";
  for (int l = 0; l <= mode_lmax; ++l) out += ",mode_" + std::to_string(l);
  out += '\n';
  for (const auto& r : rows) {
    out += format_double(r.t) + ',' + format_double(r.mass) + ',' + format_double(r.energy) + ',';
    if (r.q_h) out += format_double(*r.q_h);
    for (int l = 0; l <= mode_lmax; ++l) {
      out += ',';
      if (static_cast<std::size_t>(l) < r.modes.size()) out += format_double(r.modes[l]);
    }
    out += '\n';
  }
  return out;
}

std::string vtk_snapshot(const fem::NodalField& phi, const fem::NodalField& mu, double t) {
  const auto& m = phi.mesh();
  if (mu.mesh_ptr() != phi.mesh_ptr()) throw IoError("vtk snapshot: phi and mu on different meshes");
  std::ostringstream os;
  os << "# vtk DataFile Version 3.0\n";
  os << "activech t=" << format_double(t) << '\n';
  os << "ASCII\nDATASET STRUCTURED_POINTS\n";
  os << "DIMENSIONS " << m.nodes_along(0) << ' ' << m.nodes_along(1) << " 1\n";
  os << "ORIGIN 0 0 0\n";
  os << "SPACING " << format_double(m.spacing(0)) << ' '
     << format_double(m.dim() == 2 ? m.spacing(1) : 1.0) << " 1\n";
  os << "POINT_DATA " << m.node_count() << '\n';
  for (const auto* f : {&phi, &mu}) {
    os << "SCALARS " << (f == &phi ? "phi" : "mu") << " double 1\nLOOKUP_TABLE default\n";
    for (std::size_t i = 0; i < f->size(); ++i) os << format_double((*f)[i]) << '\n';
  }
  return os.str();
}

std::string convergence_csv(const analysis::ConvergenceTable& table) {
  std::string out = "epsilon,h,error,eoc,q_h,failure\n";
  for (const auto& r : table.rows) {
    out += format_double(r.epsilon) + ',' + format_double(r.h) + ',';
    if (r.error) out += format_double(*r.error);
    out += ',';
    if (r.eoc) out += format_double(*r.eoc);
    out += ',';
    if (r.q_h) out += format_double(*r.q_h);
    out += ',';
    if (r.failure) {
      std::string f = *r.failure;
      for (char& c : f)
        if (c == ',' || c == '\n') c = ' ';
      out += f;
    }
    out += '\n';
  }
  return out;
}

std::string convergence_dat(const analysis::ConvergenceTable& table) {
  std::string out = "# epsilon error (q_ref = " + format_double(table.q_reference) + ")\n";
  for (const auto& r : table.rows)
    if (r.error) out += format_double(r.epsilon) + ' ' + format_double(*r.error) + '\n';
  return out;
}

std::string modes_csv(const analysis::ModeSeries& series) {
  std::size_t width = 0;
  for (const auto& a : series.amplitudes) width = std::max(width, a.size());
  std::string out = "t";
  for (std::size_t l = 0; l < width; ++l) out += ",A" + std::to_string(l);
  out += '\n';
  for (std::size_t k = 0; k < series.times.size(); ++k) {
    out += format_double(series.times[k]);
    for (std::size_t l = 0; l < width; ++l) {
      out += ',';
      if (l < series.amplitudes[k].size()) out += format_double(series.amplitudes[k][l]);
    }
    out += '\n';
  }
  return out;
}

std::string snapshot_name(long step) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "snap_%06ld.vtk", step);
  return buf;
}

}  // namespace activech::io
