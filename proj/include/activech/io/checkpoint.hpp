#pragma once

#include <string>

#include "activech/fem/field.hpp"

namespace activech::io {

/// Binary state dump, little-endian:
///   0  char[8]  magic "ACHCKPT1"
///   8  u16      format version (1)
///   10 u16      corner lumping (0 tensor, 1 incident area)
///   12 u32      dim
///   16 u64      cells n1
///   24 u64      cells n2 (0 in 1D)
///   32 f64      t
///   40 u64      step
///   48 f64      L1
///   56 f64      L2
/// followed by phi and mu, one f64 per node each.
inline constexpr std::size_t kCheckpointHeaderBytes = 64;

std::string encode_checkpoint(const fem::SimState& state);
/// Rebuilds the mesh from the header. IoError on a malformed buffer.
fem::SimState decode_checkpoint(const std::string& bytes);

void write_checkpoint(const std::string& path, const fem::SimState& state);
fem::SimState read_checkpoint(const std::string& path);

}  // namespace activech::io
