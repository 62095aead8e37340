#include "ernoma/user_pairing.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ernoma {

std::vector<UserPair> pair_users(const std::vector<double>& distances) {
  const int k = static_cast<int>(distances.size());
  if (k < 2 || k % 2 != 0)
    throw std::invalid_argument("K must be an even positive integer");
  for (double d : distances)
    if (!(d > 0.0)) throw std::domain_error("distances must be positive");

  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    if (distances[i] != distances[j]) return distances[i] > distances[j];
    return i < j;
  });

  std::vector<UserPair> pairs;
  pairs.reserve(k / 2);
  int lo = 0, hi = k - 1;
  while (lo < hi) {
    const int far = order[lo++];
    const int near = order[hi--];
    pairs.push_back({near, far, distances[near], distances[far]});
  }
  return pairs;
}

}  // namespace ernoma
