#pragma once

#include <string>
#include <utility>

#include "distwave/spectral.hpp"

namespace distwave {

/// spectrum.csv: one row per frequency node with the header
/// xi,rho,rho_tilde,re_m,im_m,re_a,im_a; 17 significant digits.
void write_spectrum_csv(const SpectralTable& t, const std::string& path);

/// phi_matrix.bin: 16-byte header (magic "DWPH", u32 rows, u32 cols, u32
/// reserved), then row-major little-endian float64, row = x index.
void write_phi_matrix(const SpectralTable& t, const std::string& path);
Mat read_phi_matrix(const std::string& path);

/// Two-column CSV (coordinate,value) for real grid functions.
void write_real_csv(const Vec& coord, const Vec& values, const std::string& path,
                    const std::string& coord_name = "x", const std::string& value_name = "value");

/// Three-column CSV (coordinate,re,im) for complex grid functions.
void write_complex_csv(const Vec& coord, const CVec& values, const std::string& path,
                       const std::string& coord_name = "x");

std::pair<Vec, Vec> read_real_csv(const std::string& path);

} // namespace distwave
