#pragma once

#include "tsmatch/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>

namespace tsmatch {

enum class DatasetFormat { ucr_whitespace, csv };

/// One sequence per non-empty line; '#' lines are comments. When `labeled`
/// is set the first token of each line is kept as the sequence label.
Dataset load_dataset(const std::string& path, DatasetFormat format, bool labeled = false);

/// Stream variant of load_dataset; `source` is recorded on the Dataset.
Dataset parse_dataset(std::istream& in, DatasetFormat format, bool labeled,
                      const std::string& source);

/// S[i:j) as a fresh vector. Bounds-checked; 0 <= i < j <= Len[S].
Vector slice(const Sequence& s, Eigen::Index i, Eigen::Index j);

enum class NormalizeMethod { zscore, minmax };

/// zscore: mean 0, population std 1 (all zeros for constant input).
/// minmax: min -> 0, max -> 1 (all zeros for constant input).
Vector normalize(VecRef values, NormalizeMethod method);

Scalar population_std(VecRef values);

/// Order- and content-sensitive hash of every sequence; used to pair an
/// index file with the dataset it was built from.
std::uint64_t fingerprint(const Dataset& ds);

}  // namespace tsmatch
