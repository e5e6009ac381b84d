#pragma once
// Field binary serialization with a JSON sidecar.
//
// Layout (little-endian):
//   bytes 0..7   magic "BNLSFLD1"
//   u32          dim
//   u32          n (per axis)
//   f64          L
//   u8           representation (0 = physical, 1 = fourier)
//   then n^dim complex values, interleaved re/im f64, row-major.
// The sidecar <path>.json records the header, the four quadratic norms, and
// the payload digest so artifacts are self-describing.

#include <string>

#include "bnls/field.hpp"

namespace bnls {

void save_field(const Field& u, const std::string& path);

Field load_field(const std::string& path);

}  // namespace bnls
