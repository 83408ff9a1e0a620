#include "hww/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace hww {

static_assert(std::endian::native == std::endian::little, "snapshot I/O assumes a little-endian host");

namespace {
template <class T>
void put(std::ofstream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}
template <class T>
T get(std::ifstream& is) {
  T v;
  if (!is.read(reinterpret_cast<char*>(&v), sizeof v)) throw Error("snapshot truncated");
  return v;
}
}  // namespace

void save_snapshot(const std::string& path, const WaveState& s, const Params& p) {
  require_compatible(s.W, s.Q);
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Error("cannot open " + path + " for writing");
  os.write("VWAV", 4);
  put<std::uint32_t>(os, kSnapshotVersion);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(s.W.N()));
  put<double>(os, s.W.space().L());
  put<double>(os, p.g);
  put<double>(os, p.c);
  put<double>(os, s.t);
  for (const Field* f : {&s.W, &s.Q})
    for (Eigen::Index i = 0; i < f->coeffs().size(); ++i) {
      put<double>(os, f->coeffs()(i).real());
      put<double>(os, f->coeffs()(i).imag());
    }
  if (!os) throw Error("write failed for " + path);
}

Snapshot load_snapshot(const std::string& path, const SpectralOptions& opt) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open " + path);
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, "VWAV", 4) != 0) throw Error("bad snapshot magic in " + path);
  const auto version = get<std::uint32_t>(is);
  if (version != kSnapshotVersion) throw Error("unsupported snapshot version " + std::to_string(version));
  const auto N = get<std::uint32_t>(is);
  Domain d;
  d.N = static_cast<int>(N);
  d.L = get<double>(is);
  Snapshot snap;
  snap.params.g = get<double>(is);
  snap.params.c = get<double>(is);
  const double t = get<double>(is);
  const SpacePtr sp = Space::make(d, opt);
  snap.state = zero_state(sp);
  snap.state.t = t;
  for (Field* f : {&snap.state.W, &snap.state.Q})
    for (Eigen::Index i = 0; i < f->coeffs().size(); ++i) {
      const double re = get<double>(is), im = get<double>(is);
      f->coeffs()(i) = cplx(re, im);
    }
  return snap;
}

}  // namespace hww
