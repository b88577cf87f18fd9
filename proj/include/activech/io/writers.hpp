#pragma once

#include <string>
#include <vector>

#include "activech/analysis/convergence.hpp"
#include "activech/analysis/modes.hpp"
#include "activech/fem/field.hpp"
#include "activech/fem/simulation.hpp"

namespace activech::io {

/// Writes `content` to `path.tmp` and renames it over `path`; IoError with
/// the path on failure.
void write_file_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);
/// Creates the directory (and parents); IoError on failure.
void ensure_directory(const std::string& path);

/// Shortest text that reads back as the same double ("nan", "inf" for the
/// non-finite values).
std::string format_double(double v);

/// `t,mass,energy,q_h,mode_0,...,mode_lmax`; q_h is empty where not
/// tracked, mode columns appear when mode_lmax >= 0.
std::string diagnostics_csv(const std::vector<fem::DiagnosticRow>& rows, int mode_lmax);

/// Legacy ASCII VTK, STRUCTURED_POINTS over the node lattice, point scalars
/// `phi` and `mu`.
std::string vtk_snapshot(const fem::NodalField& phi, const fem::NodalField& mu, double t);

/// `epsilon,h,error,eoc` (missing values empty) with `q_h` and `failure`
/// columns appended.
std::string convergence_csv(const analysis::ConvergenceTable& table);
/// Two columns `epsilon error` for a log-log plot; failed rows skipped.
std::string convergence_dat(const analysis::ConvergenceTable& table);

/// `t,A0,A1,...`
std::string modes_csv(const analysis::ModeSeries& series);

std::string snapshot_name(long step);

}  // namespace activech::io
