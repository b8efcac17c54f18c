#pragma once

// On-disk formats, all host-independent:
//   images   "rimg v1 H W\n"      + H*W little-endian float64, row-major
//   k-space  "kdat v1 M\n"        + M (re, im) little-endian float64 pairs
//   patterns "pattern v1 H W M\n" + M text lines "row col"
// plus 8-bit PGM rendering (linear [0,1] -> [0,255], round half up, clipped)
// and locale-independent number formatting for the CSV outputs.

#include <string>

#include "sgtv/admm.hpp"
#include "sgtv/grid.hpp"
#include "sgtv/mri.hpp"

namespace sgtv {

void write_image(const Image& v, const std::string& path);
Image read_image(const std::string& path);

void write_kspace(const KSpaceData& d, const std::string& path);
KSpaceData read_kspace(const std::string& path);

void write_pattern(const SamplingPattern& p, const std::string& path);
SamplingPattern read_pattern(const std::string& path);

void write_pgm(const Image& v, const std::string& path);

// Shortest-round-trip general format, 12 significant digits, '.' decimal
// separator regardless of locale; infinities print as "inf"/"-inf".
std::string format_double(double x);

// CSV rows: iteration, objective, primal_residual, dual_residual, rho.
void write_diagnostics_csv(const AdmmDiagnostics& diag, const std::string& path);

}  // namespace sgtv
