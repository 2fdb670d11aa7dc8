#include "tsmatch/synthetic.hpp"

#include <string>

namespace tsmatch {

Dataset random_walk_dataset(int count, Eigen::Index length, std::uint64_t seed) {
  if (count < 1 || length < 1) raise(Errc::invalid_argument, "need count >= 1 and length >= 1");
  Dataset ds;
  ds.source = "random-walk(seed=" + std::to_string(seed) + ")";
  GaussianSource gauss(seed);
  for (int i = 0; i < count; ++i) {
    Sequence s;
    s.id = i;
    s.values.resize(length);
    Scalar level = 0;
    for (Eigen::Index t = 0; t < length; ++t) {
      level += gauss();
      s.values[t] = level;
    }
    ds.sequences.push_back(std::move(s));
  }
  return ds;
}

}  // namespace tsmatch
