#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "piq/image.hpp"

namespace piq {

// 64-bit DCT perceptual hash of one image.
struct PHash64 {
  std::uint64_t bits = 0;
  std::string image_id;
};

// image_id -> dense group id. Groups are the connected components of the
// "Hamming distance <= threshold" graph, numbered by each component's
// lexicographically smallest member id.
struct GroupAssignment {
  std::unordered_map<std::string, int> group_of;
  int threshold = 0;
};

// BT.601 luma, bilinear resize to 32x32, orthonormal 2-D DCT-II, top-left
// 8x8 coefficient block (DC included), median binarization: bit i is set
// iff coefficient i (row-major) exceeds the median of the 64, packed from
// the low bit. Throws TooSmall below 8x8.
PHash64 phash(const Raster& image, std::string image_id = {});

int hamming(std::uint64_t a, std::uint64_t b);
int hamming(const PHash64& a, const PHash64& b);

// Union-find over all pairs within the threshold. Singletons keep their own
// group. Pairwise O(n^2); fine at desk scale.
GroupAssignment group_hashes(const std::vector<PHash64>& hashes, int threshold);

// Same contract, but candidate pairs come from a 4x16-bit banded multi-index
// (per-band multi-probe at radius threshold/4) before exact verification.
// Produces identical groups to group_hashes.
GroupAssignment group_hashes_banded(const std::vector<PHash64>& hashes, int threshold);

}  // namespace piq
