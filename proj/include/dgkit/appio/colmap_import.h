#ifndef DGKIT_APPIO_COLMAP_IMPORT_H_
#define DGKIT_APPIO_COLMAP_IMPORT_H_

#include <string>
#include <utility>
#include <vector>

#include "dgkit/appio/formats.h"

namespace dgkit {

// Reads verified image pairs from a COLMAP SQLite database and returns them
// as match records keyed by image name. Pairs come from the
// two_view_geometries table (inlier count = number of verified matches);
// databases without it fall back to the raw matches table. Pairs with fewer
// than `min_inliers` matches are skipped. Image names containing whitespace
// are rejected since they cannot be written to the text formats.
// Throws UsageError when the database cannot be read.
std::vector<PairRecord> ImportColmapMatches(const std::string& database_path,
                                            int min_inliers = 1);

// COLMAP packs an unordered image-id pair into a single integer.
inline constexpr long long kColmapMaxImageId = 2147483647;
inline long long ColmapPairId(long long image_id1, long long image_id2) {
  if (image_id1 > image_id2) std::swap(image_id1, image_id2);
  return kColmapMaxImageId * image_id1 + image_id2;
}

}  // namespace dgkit

#endif  // DGKIT_APPIO_COLMAP_IMPORT_H_
