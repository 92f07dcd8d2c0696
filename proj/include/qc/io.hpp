#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "qc/base_matrix.hpp"
#include "qc/binary_matrix.hpp"
#include "qc/codec.hpp"
#include "qc/dispersion.hpp"

namespace qc {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Base-matrix text format: header "q c n rows cols", then rows of
/// whitespace-separated discrete logs with -1 for the zero element.
void write_base_matrix(std::ostream& os, const BaseMatrix& w);
BaseMatrix read_base_matrix(std::istream& is);

/// Exponent-grid format: header "L rows cols", then rows of
/// space-separated exponents with -1 for a ZM. Round trips bit-exactly.
void write_grid(std::ostream& os, const CpmArray& h);
CpmArray read_grid(std::istream& is);

/// alist interchange format: "N M", "max_col_wt max_row_wt", the N column
/// weights, the M row weights, then N column index lines and M row index
/// lines (1-based, 0-padded to the maximum weight).
void write_alist(std::ostream& os, const BinaryMatrix& m);
BinaryMatrix read_alist(std::istream& is);

/// Simulation CSV, one row per SNR point with a mandatory header:
/// ebno_db,frames,bit_errors,frame_errors,ber,bler,avg_iters.
/// Reports carrying several iteration caps get an extra `iters` column and
/// one row per (point, cap) pair.
void write_sim_csv(std::ostream& os, const SimReport& report);

void save_grid(const std::string& path, const CpmArray& h);
CpmArray load_grid(const std::string& path);
void save_base_matrix(const std::string& path, const BaseMatrix& w);
BaseMatrix load_base_matrix(const std::string& path);
void save_alist(const std::string& path, const BinaryMatrix& m);
BinaryMatrix load_alist(const std::string& path);
void save_sim_csv(const std::string& path, const SimReport& report);

}  // namespace qc
