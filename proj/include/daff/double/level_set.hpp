#pragma once

#include <optional>
#include <string>
#include <vector>

#include "daff/double/double_affine.hpp"

namespace daff::dbl {

// g00 + gy.y + gz.z + y^T gyz z + sigma.c = value
struct LevelRow {
  Scalar g00;
  Vec gy, gz;
  Mat gyz;  // n1 x n2
  Vec sigma;
  Scalar value;

  Scalar eval(const DoublePoint& p) const;  // left side minus value
};

enum class Verdict { Subbundle, NotSubbundle, Undecided };

struct Classification {
  Verdict verdict;
  std::string reason;
  // For NotSubbundle: a point of a side projection's affine closure that is
  // missing from the projection (only one of y, z set), or a pair (y, z) in
  // the product of the projections with empty preimage.
  std::optional<Vec> y, z;
};

std::string to_string(Verdict v);

Classification classify_level_set(const DecomposedDouble& d, const std::vector<LevelRow>& rows);

}  // namespace daff::dbl
