#pragma once

#include <vector>

namespace ernoma {

struct UserPair {
  int near_index;  // index into the input distance list
  int far_index;
  double near_distance;
  double far_distance;
};

// Location-based pairing: sort the distances in descending order (ties broken
// by ascending original index), then repeatedly pair the first (farthest) and
// last (nearest) remaining entries. Requires an even, positive user count.
std::vector<UserPair> pair_users(const std::vector<double>& distances);

}  // namespace ernoma
