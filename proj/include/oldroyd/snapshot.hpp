#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "oldroyd/field.hpp"

namespace oldroyd {

// Field snapshot file:
//
//   OLDROYD2D-SNAPSHOT 1
//   n=<int>
//   L=<double>
//   dealias_fraction=<double>
//   representation=real|spectral
//   components=<name>,<name>,...
//   endianness=little
//   t=<double>
//   end_header
//   <payload>
//
// The payload holds each component in turn as little-endian IEEE-754 binary64
// values in row-major order (row index = x1 index). Real components have n*n
// values; spectral components store the n x (n/2+1) half spectrum as
// interleaved (re, im) pairs.
struct Snapshot {
  GridSpec grid;
  double t = 0.0;
  std::vector<std::string> names;
  std::vector<ScalarField> components;

  const ScalarField& component(const std::string& name) const;
};

void write_snapshot(const std::filesystem::path& path, const Snapshot& snap,
                    Representation rep = Representation::real);
Snapshot read_snapshot(const std::filesystem::path& path);

}  // namespace oldroyd
