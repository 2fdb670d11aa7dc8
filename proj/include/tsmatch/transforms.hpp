#pragma once

#include "tsmatch/types.hpp"

namespace tsmatch {

enum class TransformId { identity, paa, dft, dct, haar };

std::string to_string(TransformId id);
TransformId transform_from_string(const std::string& name);

/// Output of a dimensionality-reduction transform. Coords are stored in the
/// transform's natural units (PAA keeps plain frame means, DFT keeps plain
/// orthonormal coefficients); the scaling that makes reduced-space Euclidean
/// a lower bound of true Euclidean lives in lb_embedding.
struct ReducedVector {
  Vector coords;
  TransformId transform_id = TransformId::identity;
  Eigen::Index source_len = 0;
};

struct TransformSpec {
  TransformId id = TransformId::identity;
  Eigen::Index param = 0;  // N for paa, k for dft/dct/haar, ignored for identity

  Eigen::Index output_dim(Eigen::Index n) const;
};

/// Frame means over N equal frames. N must divide the input length.
ReducedVector paa(VecRef values, Eigen::Index n_frames);

/// First k complex coefficients of the orthonormal DFT (factor 1/sqrt(n)),
/// interleaved (re, im), so 2k reals. k <= floor(n/2)+1.
ReducedVector dft(VecRef values, Eigen::Index k);

/// First k coefficients of the orthonormal DCT-II. k <= n.
ReducedVector dct(VecRef values, Eigen::Index k);

/// First k coefficients of the orthonormal Haar transform in coarse-to-fine
/// order. n must be a power of two, k <= n.
ReducedVector haar(VecRef values, Eigen::Index k);

ReducedVector identity_transform(VecRef values);

ReducedVector apply_transform(VecRef values, const TransformSpec& spec);

/// Coords rescaled so that plain Euclidean distance between two embeddings
/// lower-bounds the true Euclidean distance of the source windows:
/// PAA multiplies by sqrt(n/N); DFT weights coefficient j by the square root
/// of its conjugate-symmetry multiplicity (1 for DC and the Nyquist term of
/// even n, 2 otherwise) so the full-k embedding reproduces ED exactly;
/// DCT/Haar/identity are already orthonormal.
Vector lb_embedding(const ReducedVector& r);

struct ApcaSegment {
  Scalar mean = 0;
  Eigen::Index end = 0;  // inclusive 0-based end offset
};

struct ApcaRepresentation {
  std::vector<ApcaSegment> segments;
  Eigen::Index source_len = 0;
};

/// Piecewise-constant approximation with exactly M variable-length segments.
/// Exact SSE-minimizing dynamic program when n*M <= 65536, Haar-guided
/// heuristic beyond that.
ApcaRepresentation apca(VecRef values, Eigen::Index m_segments);

Vector reconstruct(const ReducedVector& r);
Vector reconstruct(const ApcaRepresentation& r);

}  // namespace tsmatch
