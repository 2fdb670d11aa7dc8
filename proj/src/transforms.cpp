#include "tsmatch/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

namespace tsmatch {

namespace {

constexpr Scalar kPi = std::numbers::pi_v<Scalar>;

void check_nonempty(VecRef values, const char* op) {
  if (values.size() == 0) {
    raise(Errc::empty_input, std::string(op) + " of empty input");
  }
}

bool is_pow2(Eigen::Index n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

std::string to_string(TransformId id) {
  switch (id) {
    case TransformId::identity: return "identity";
    case TransformId::paa: return "paa";
    case TransformId::dft: return "dft";
    case TransformId::dct: return "dct";
    case TransformId::haar: return "haar";
  }
  return "unknown";
}

TransformId transform_from_string(const std::string& name) {
  if (name == "identity") return TransformId::identity;
  if (name == "paa") return TransformId::paa;
  if (name == "dft") return TransformId::dft;
  if (name == "dct") return TransformId::dct;
  if (name == "haar") return TransformId::haar;
  raise(Errc::invalid_argument, "unknown transform '" + name + "'");
}

Eigen::Index TransformSpec::output_dim(Eigen::Index n) const {
  switch (id) {
    case TransformId::identity: return n;
    case TransformId::paa: return param;
    case TransformId::dft: return 2 * param;
    case TransformId::dct: return param;
    case TransformId::haar: return param;
  }
  return 0;
}

ReducedVector paa(VecRef values, Eigen::Index n_frames) {
  check_nonempty(values, "paa");
  const Eigen::Index n = values.size();
  if (n_frames < 1 || n_frames > n || n % n_frames != 0) {
    raise(Errc::frame_mismatch, std::to_string(n_frames) + " frames do not divide length " +
                                    std::to_string(n));
  }
  const Eigen::Index w = n / n_frames;
  Vector out(n_frames);
  for (Eigen::Index f = 0; f < n_frames; ++f) {
    out[f] = values.segment(f * w, w).mean();
  }
  return {std::move(out), TransformId::paa, n};
}

ReducedVector dft(VecRef values, Eigen::Index k) {
  check_nonempty(values, "dft");
  const Eigen::Index n = values.size();
  if (k < 1 || k > n / 2 + 1) {
    raise(Errc::too_many_coefficients,
          "dft keeps at most floor(n/2)+1 = " + std::to_string(n / 2 + 1) + " coefficients, got " +
              std::to_string(k));
  }
  const Scalar scale = Scalar(1) / std::sqrt(static_cast<Scalar>(n));
  Vector out(2 * k);
  for (Eigen::Index j = 0; j < k; ++j) {
    Scalar re = 0;
    Scalar im = 0;
    for (Eigen::Index t = 0; t < n; ++t) {
      const Scalar angle = Scalar(-2) * kPi * static_cast<Scalar>(j) * static_cast<Scalar>(t) /
                           static_cast<Scalar>(n);
      re += values[t] * std::cos(angle);
      im += values[t] * std::sin(angle);
    }
    out[2 * j] = scale * re;
    out[2 * j + 1] = scale * im;
  }
  return {std::move(out), TransformId::dft, n};
}

ReducedVector dct(VecRef values, Eigen::Index k) {
  check_nonempty(values, "dct");
  const Eigen::Index n = values.size();
  if (k < 1 || k > n) {
    raise(Errc::too_many_coefficients,
          "dct keeps at most n = " + std::to_string(n) + " coefficients, got " + std::to_string(k));
  }
  const Scalar s0 = std::sqrt(Scalar(1) / static_cast<Scalar>(n));
  const Scalar sj = std::sqrt(Scalar(2) / static_cast<Scalar>(n));
  Vector out(k);
  for (Eigen::Index j = 0; j < k; ++j) {
    Scalar acc = 0;
    for (Eigen::Index t = 0; t < n; ++t) {
      acc += values[t] * std::cos(kPi * static_cast<Scalar>(2 * t + 1) * static_cast<Scalar>(j) /
                                  static_cast<Scalar>(2 * n));
    }
    out[j] = acc * (j == 0 ? s0 : sj);
  }
  return {std::move(out), TransformId::dct, n};
}

namespace {

// In-place orthonormal Haar decomposition of buf[0..n), coarse coefficients first.
void haar_forward(Vector& buf) {
  const Scalar inv_sqrt2 = Scalar(1) / std::numbers::sqrt2_v<Scalar>;
  Vector tmp(buf.size());
  for (Eigen::Index len = buf.size(); len > 1; len /= 2) {
    const Eigen::Index half = len / 2;
    for (Eigen::Index i = 0; i < half; ++i) {
      tmp[i] = (buf[2 * i] + buf[2 * i + 1]) * inv_sqrt2;
      tmp[half + i] = (buf[2 * i] - buf[2 * i + 1]) * inv_sqrt2;
    }
    buf.head(len) = tmp.head(len);
  }
}

void haar_inverse(Vector& buf) {
  const Scalar inv_sqrt2 = Scalar(1) / std::numbers::sqrt2_v<Scalar>;
  Vector tmp(buf.size());
  for (Eigen::Index len = 2; len <= buf.size(); len *= 2) {
    const Eigen::Index half = len / 2;
    for (Eigen::Index i = 0; i < half; ++i) {
      tmp[2 * i] = (buf[i] + buf[half + i]) * inv_sqrt2;
      tmp[2 * i + 1] = (buf[i] - buf[half + i]) * inv_sqrt2;
    }
    buf.head(len) = tmp.head(len);
  }
}

}  // namespace

ReducedVector haar(VecRef values, Eigen::Index k) {
  check_nonempty(values, "haar");
  const Eigen::Index n = values.size();
  if (!is_pow2(n)) {
    raise(Errc::not_power_of_two, "haar input length " + std::to_string(n));
  }
  if (k < 1 || k > n) {
    raise(Errc::too_many_coefficients,
          "haar keeps at most n = " + std::to_string(n) + " coefficients, got " +
              std::to_string(k));
  }
  Vector buf = values;
  haar_forward(buf);
  return {buf.head(k), TransformId::haar, n};
}

ReducedVector identity_transform(VecRef values) {
  check_nonempty(values, "identity");
  return {values, TransformId::identity, values.size()};
}

ReducedVector apply_transform(VecRef values, const TransformSpec& spec) {
  switch (spec.id) {
    case TransformId::identity: return identity_transform(values);
    case TransformId::paa: return paa(values, spec.param);
    case TransformId::dft: return dft(values, spec.param);
    case TransformId::dct: return dct(values, spec.param);
    case TransformId::haar: return haar(values, spec.param);
  }
  raise(Errc::invalid_argument, "bad transform id");
}

Vector lb_embedding(const ReducedVector& r) {
  switch (r.transform_id) {
    case TransformId::identity:
    case TransformId::dct:
    case TransformId::haar:
      return r.coords;
    case TransformId::paa: {
      const auto n_frames = r.coords.size();
      return r.coords * std::sqrt(static_cast<Scalar>(r.source_len) / static_cast<Scalar>(n_frames));
    }
    case TransformId::dft: {
      const Eigen::Index k = r.coords.size() / 2;
      const Eigen::Index n = r.source_len;
      Vector out(2 * k);
      for (Eigen::Index j = 0; j < k; ++j) {
        const bool self_conjugate = j == 0 || (n % 2 == 0 && j == n / 2);
        const Scalar w = self_conjugate ? Scalar(1) : std::numbers::sqrt2_v<Scalar>;
        out[2 * j] = w * r.coords[2 * j];
        out[2 * j + 1] = w * r.coords[2 * j + 1];
      }
      return out;
    }
  }
  raise(Errc::invalid_argument, "bad transform id");
}

namespace {

struct SegmentStats {
  // prefix[i] = sum of values[0..i), prefix_sq likewise for squares
  std::vector<Scalar> prefix, prefix_sq;

  explicit SegmentStats(VecRef values)
      : prefix(static_cast<std::size_t>(values.size()) + 1, 0),
        prefix_sq(static_cast<std::size_t>(values.size()) + 1, 0) {
    for (Eigen::Index i = 0; i < values.size(); ++i) {
      prefix[static_cast<std::size_t>(i) + 1] = prefix[static_cast<std::size_t>(i)] + values[i];
      prefix_sq[static_cast<std::size_t>(i) + 1] =
          prefix_sq[static_cast<std::size_t>(i)] + values[i] * values[i];
    }
  }

  Scalar sum(Eigen::Index first, Eigen::Index last) const {  // inclusive range
    return prefix[static_cast<std::size_t>(last) + 1] - prefix[static_cast<std::size_t>(first)];
  }

  Scalar mean(Eigen::Index first, Eigen::Index last) const {
    return sum(first, last) / static_cast<Scalar>(last - first + 1);
  }

  Scalar sse(Eigen::Index first, Eigen::Index last) const {
    const Scalar s = sum(first, last);
    const Scalar sq = prefix_sq[static_cast<std::size_t>(last) + 1] -
                      prefix_sq[static_cast<std::size_t>(first)];
    const Scalar len = static_cast<Scalar>(last - first + 1);
    return std::max(Scalar(0), sq - s * s / len);
  }
};

ApcaRepresentation apca_exact(VecRef values, Eigen::Index m, const SegmentStats& stats) {
  const Eigen::Index n = values.size();
  const auto un = static_cast<std::size_t>(n);
  const auto um = static_cast<std::size_t>(m);
  constexpr Scalar inf = std::numeric_limits<Scalar>::infinity();

  // dp[seg][j]: min SSE of values[0..j] split into seg+1 segments
  std::vector<std::vector<Scalar>> dp(um, std::vector<Scalar>(un, inf));
  std::vector<std::vector<Eigen::Index>> split(um, std::vector<Eigen::Index>(un, 0));
  for (Eigen::Index j = 0; j < n; ++j) dp[0][static_cast<std::size_t>(j)] = stats.sse(0, j);
  for (std::size_t seg = 1; seg < um; ++seg) {
    for (Eigen::Index j = static_cast<Eigen::Index>(seg); j < n; ++j) {
      Scalar best = inf;
      Eigen::Index best_start = 0;
      for (Eigen::Index start = static_cast<Eigen::Index>(seg); start <= j; ++start) {
        const Scalar cost =
            dp[seg - 1][static_cast<std::size_t>(start) - 1] + stats.sse(start, j);
        if (cost < best) {
          best = cost;
          best_start = start;
        }
      }
      dp[seg][static_cast<std::size_t>(j)] = best;
      split[seg][static_cast<std::size_t>(j)] = best_start;
    }
  }

  ApcaRepresentation out;
  out.source_len = n;
  out.segments.resize(um);
  Eigen::Index end = n - 1;
  for (std::size_t seg = um; seg-- > 0;) {
    const Eigen::Index start = seg == 0 ? 0 : split[seg][static_cast<std::size_t>(end)];
    out.segments[seg] = {stats.mean(start, end), end};
    end = start - 1;
  }
  return out;
}

ApcaRepresentation apca_heuristic(VecRef values, Eigen::Index m, const SegmentStats& stats) {
  const Eigen::Index n = values.size();

  Eigen::Index padded = 1;
  while (padded < n) padded *= 2;
  Vector buf(padded);
  buf.head(n) = values;
  buf.tail(padded - n).setConstant(values[n - 1]);

  haar_forward(buf);
  // keep the m largest-magnitude coefficients
  std::vector<Eigen::Index> order(static_cast<std::size_t>(padded));
  for (Eigen::Index i = 0; i < padded; ++i) order[static_cast<std::size_t>(i)] = i;
  std::nth_element(order.begin(), order.begin() + std::min(m, padded) - 1, order.end(),
                   [&](Eigen::Index a, Eigen::Index b) {
                     return std::abs(buf[a]) > std::abs(buf[b]);
                   });
  Vector kept = Vector::Zero(padded);
  for (Eigen::Index i = 0; i < std::min(m, padded); ++i) {
    kept[order[static_cast<std::size_t>(i)]] = buf[order[static_cast<std::size_t>(i)]];
  }
  haar_inverse(kept);

  // runs of equal reconstructed values become the initial segmentation
  std::vector<Eigen::Index> ends;
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    if (kept[i] != kept[i + 1]) ends.push_back(i);
  }
  ends.push_back(n - 1);

  auto seg_start = [&](std::size_t i) {
    return i == 0 ? Eigen::Index(0) : ends[i - 1] + 1;
  };

  while (static_cast<Eigen::Index>(ends.size()) > m) {
    // merge the adjacent pair whose union has the smallest SSE increase
    std::size_t best = 0;
    Scalar best_cost = std::numeric_limits<Scalar>::infinity();
    for (std::size_t i = 0; i + 1 < ends.size(); ++i) {
      const Scalar cost = stats.sse(seg_start(i), ends[i + 1]) -
                          stats.sse(seg_start(i), ends[i]) -
                          stats.sse(ends[i] + 1, ends[i + 1]);
      if (cost < best_cost) {
        best_cost = cost;
        best = i;
      }
    }
    ends.erase(ends.begin() + static_cast<std::ptrdiff_t>(best));
  }

  while (static_cast<Eigen::Index>(ends.size()) < m) {
    // split the worst segment at its best split point
    std::size_t worst = ends.size();
    Scalar worst_sse = -1;
    for (std::size_t i = 0; i < ends.size(); ++i) {
      if (ends[i] == seg_start(i)) continue;  // length 1, nothing to split
      const Scalar s = stats.sse(seg_start(i), ends[i]);
      if (s > worst_sse) {
        worst_sse = s;
        worst = i;
      }
    }
    if (worst == ends.size()) break;  // all segments length 1, m > n was rejected earlier
    const Eigen::Index lo = seg_start(worst);
    const Eigen::Index hi = ends[worst];
    Eigen::Index best_cut = lo;
    Scalar best_cost = std::numeric_limits<Scalar>::infinity();
    for (Eigen::Index cut = lo; cut < hi; ++cut) {
      const Scalar cost = stats.sse(lo, cut) + stats.sse(cut + 1, hi);
      if (cost < best_cost) {
        best_cost = cost;
        best_cut = cut;
      }
    }
    ends.insert(ends.begin() + static_cast<std::ptrdiff_t>(worst), best_cut);
  }

  ApcaRepresentation out;
  out.source_len = n;
  out.segments.reserve(ends.size());
  for (std::size_t i = 0; i < ends.size(); ++i) {
    out.segments.push_back({stats.mean(seg_start(i), ends[i]), ends[i]});
  }
  return out;
}

}  // namespace

ApcaRepresentation apca(VecRef values, Eigen::Index m_segments) {
  check_nonempty(values, "apca");
  const Eigen::Index n = values.size();
  if (m_segments < 1 || m_segments > n) {
    raise(Errc::too_many_segments,
          "segment count " + std::to_string(m_segments) + " outside [1, " + std::to_string(n) + "]");
  }
  SegmentStats stats(values);
  if (n * m_segments <= 65536) return apca_exact(values, m_segments, stats);
  return apca_heuristic(values, m_segments, stats);
}

Vector reconstruct(const ReducedVector& r) {
  const Eigen::Index n = r.source_len;
  switch (r.transform_id) {
    case TransformId::identity:
      return r.coords;
    case TransformId::paa: {
      const Eigen::Index n_frames = r.coords.size();
      const Eigen::Index w = n / n_frames;
      Vector out(n);
      for (Eigen::Index f = 0; f < n_frames; ++f) out.segment(f * w, w).setConstant(r.coords[f]);
      return out;
    }
    case TransformId::dft: {
      const Eigen::Index k = r.coords.size() / 2;
      std::vector<std::complex<Scalar>> spectrum(static_cast<std::size_t>(n));
      for (Eigen::Index j = 0; j < k; ++j) {
        const std::complex<Scalar> c(r.coords[2 * j], r.coords[2 * j + 1]);
        spectrum[static_cast<std::size_t>(j)] = c;
        if (j > 0 && n - j != j) spectrum[static_cast<std::size_t>(n - j)] = std::conj(c);
      }
      const Scalar scale = Scalar(1) / std::sqrt(static_cast<Scalar>(n));
      Vector out(n);
      for (Eigen::Index t = 0; t < n; ++t) {
        std::complex<Scalar> acc = 0;
        for (Eigen::Index j = 0; j < n; ++j) {
          const Scalar angle = Scalar(2) * kPi * static_cast<Scalar>(j) * static_cast<Scalar>(t) /
                               static_cast<Scalar>(n);
          acc += spectrum[static_cast<std::size_t>(j)] *
                 std::complex<Scalar>(std::cos(angle), std::sin(angle));
        }
        out[t] = scale * acc.real();
      }
      return out;
    }
    case TransformId::dct: {
      const Eigen::Index k = r.coords.size();
      const Scalar s0 = std::sqrt(Scalar(1) / static_cast<Scalar>(n));
      const Scalar sj = std::sqrt(Scalar(2) / static_cast<Scalar>(n));
      Vector out(n);
      for (Eigen::Index t = 0; t < n; ++t) {
        Scalar acc = 0;
        for (Eigen::Index j = 0; j < k; ++j) {
          acc += (j == 0 ? s0 : sj) * r.coords[j] *
                 std::cos(kPi * static_cast<Scalar>(2 * t + 1) * static_cast<Scalar>(j) /
                          static_cast<Scalar>(2 * n));
        }
        out[t] = acc;
      }
      return out;
    }
    case TransformId::haar: {
      Vector buf = Vector::Zero(n);
      buf.head(r.coords.size()) = r.coords;
      haar_inverse(buf);
      return buf;
    }
  }
  raise(Errc::invalid_argument, "bad transform id");
}

Vector reconstruct(const ApcaRepresentation& r) {
  Vector out(r.source_len);
  Eigen::Index start = 0;
  for (const auto& seg : r.segments) {
    out.segment(start, seg.end - start + 1).setConstant(seg.mean);
    start = seg.end + 1;
  }
  return out;
}

}  // namespace tsmatch
