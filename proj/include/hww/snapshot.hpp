// Binary state snapshots. Little-endian layout:
//   "VWAV" | u32 version | u32 N | f64 L, g, c, t | N complex W coeffs | N complex Q coeffs
// with coefficients in ascending wavenumber order.
#pragma once

#include <string>

#include "hww/wavestate.hpp"

namespace hww {

inline constexpr unsigned kSnapshotVersion = 1;

struct Snapshot {
  WaveState state;
  Params params;
};

void save_snapshot(const std::string& path, const WaveState& s, const Params& p);
// the returned state lives on a freshly made Space with default pad and options
Snapshot load_snapshot(const std::string& path, const SpectralOptions& opt = {});

}  // namespace hww
