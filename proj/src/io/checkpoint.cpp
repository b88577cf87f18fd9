#include "activech/io/checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <cstring>

#include "activech/error.hpp"
#include "activech/io/writers.hpp"

namespace activech::io {

namespace {

constexpr char kMagic[8] = {'A', 'C', 'H', 'C', 'K', 'P', 'T', '1'};

template <typename T>
void put(std::string& out, T v) {
  static_assert(std::is_trivially_copyable_v<T>);
  unsigned char b[sizeof(T)];
  std::memcpy(b, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big)
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(b[i], b[sizeof(T) - 1 - i]);
  out.append(reinterpret_cast<const char*>(b), sizeof(T));
}

template <typename T>
T get(const std::string& in, std::size_t& pos) {
  if (pos + sizeof(T) > in.size()) throw IoError("checkpoint: truncated data");
  unsigned char b[sizeof(T)];
  std::memcpy(b, in.data() + pos, sizeof(T));
  if constexpr (std::endian::native == std::endian::big)
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(b[i], b[sizeof(T) - 1 - i]);
  pos += sizeof(T);
  T v;
  std::memcpy(&v, b, sizeof(T));
  return v;
}

}  // namespace

std::string encode_checkpoint(const fem::SimState& state) {
  const auto& m = state.phi.mesh();
  std::string out(kMagic, sizeof kMagic);
  put<std::uint16_t>(out, 1);
  put<std::uint16_t>(out, m.corner_lumping() == fem::CornerLumping::tensor ? 0 : 1);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(m.dim()));
  put<std::uint64_t>(out, static_cast<std::uint64_t>(m.cells(0)));
  put<std::uint64_t>(out, m.dim() == 2 ? static_cast<std::uint64_t>(m.cells(1)) : 0);
  put<double>(out, state.t);
  put<std::uint64_t>(out, static_cast<std::uint64_t>(state.step));
  put<double>(out, m.length(0));
  put<double>(out, m.dim() == 2 ? m.length(1) : 0.0);
  for (const auto* f : {&state.phi, &state.mu})
    for (std::size_t i = 0; i < f->size(); ++i) put<double>(out, (*f)[i]);
  return out;
}

fem::SimState decode_checkpoint(const std::string& bytes) {
  if (bytes.size() < kCheckpointHeaderBytes || std::memcmp(bytes.data(), kMagic, sizeof kMagic) != 0)
    throw IoError("checkpoint: bad magic");
  std::size_t pos = sizeof kMagic;
  const auto version = get<std::uint16_t>(bytes, pos);
  if (version != 1) throw IoError("checkpoint: unsupported version " + std::to_string(version));
  const auto corners = get<std::uint16_t>(bytes, pos);
  const auto dim = get<std::uint32_t>(bytes, pos);
  const auto n1 = get<std::uint64_t>(bytes, pos);
  const auto n2 = get<std::uint64_t>(bytes, pos);
  const auto t = get<double>(bytes, pos);
  const auto step = get<std::uint64_t>(bytes, pos);
  const auto l1 = get<double>(bytes, pos);
  const auto l2 = get<double>(bytes, pos);
  if ((dim != 1 && dim != 2) || corners > 1 || n1 == 0 || (dim == 2 && n2 == 0))
    throw IoError("checkpoint: malformed header");

  // h is recovered from L1 / n1; a 2D mesh must reproduce n2 with it.
  const double h = l1 / static_cast<double>(n1);
  auto mesh = std::make_shared<fem::StructuredMesh>(fem::StructuredMesh::build(
      static_cast<int>(dim), {l1, dim == 2 ? l2 : l1}, h,
      corners == 0 ? fem::CornerLumping::tensor : fem::CornerLumping::incident_area));
  if (static_cast<std::uint64_t>(mesh->cells(0)) != n1 ||
      (dim == 2 && static_cast<std::uint64_t>(mesh->cells(1)) != n2))
    throw IoError("checkpoint: lattice does not match the header");

  const auto n = static_cast<Eigen::Index>(mesh->node_count());
  if (bytes.size() != kCheckpointHeaderBytes + 2 * static_cast<std::size_t>(n) * sizeof(double))
    throw IoError("checkpoint: payload size does not match the lattice");
  Eigen::VectorXd phi(n), mu(n);
  for (Eigen::Index i = 0; i < n; ++i) phi[i] = get<double>(bytes, pos);
  for (Eigen::Index i = 0; i < n; ++i) mu[i] = get<double>(bytes, pos);

  fem::SimState s;
  s.phi = fem::NodalField(mesh, std::move(phi));
  s.mu = fem::NodalField(mesh, std::move(mu));
  s.t = t;
  s.step = static_cast<long>(step);
  return s;
}

void write_checkpoint(const std::string& path, const fem::SimState& state) {
  write_file_atomic(path, encode_checkpoint(state));
}

fem::SimState read_checkpoint(const std::string& path) {
  try {
    return decode_checkpoint(read_file(path));
  } catch (const IoError& e) {
    throw IoError(path + ": " + e.what());
  } catch (const ConfigError& e) {
    throw IoError(path + ": " + e.what());
  }
}

}  // namespace activech::io
