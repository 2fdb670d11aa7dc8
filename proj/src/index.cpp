#include "tsmatch/index.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <span>

#include "tsmatch/windowing.hpp"

namespace tsmatch {

Scalar mindist(VecRef point, const Mbr& m) {
  if (point.size() != m.low.size()) {
    raise(Errc::dimension_mismatch, "point dimension " + std::to_string(point.size()) +
                                        " vs box dimension " + std::to_string(m.low.size()));
  }
  Scalar acc = 0;
  for (Eigen::Index d = 0; d < point.size(); ++d) {
    Scalar gap = 0;
    if (point[d] < m.low[d]) gap = m.low[d] - point[d];
    else if (point[d] > m.high[d]) gap = point[d] - m.high[d];
    acc += gap * gap;
  }
  return std::sqrt(acc);
}

namespace {

Scalar box_mindist(VecRef point, const Vector& low, const Vector& high) {
  Scalar acc = 0;
  for (Eigen::Index d = 0; d < point.size(); ++d) {
    Scalar gap = 0;
    if (point[d] < low[d]) gap = low[d] - point[d];
    else if (point[d] > high[d]) gap = point[d] - high[d];
    acc += gap * gap;
  }
  return std::sqrt(acc);
}

}  // namespace

std::vector<Mbr> build_mbrs(const std::vector<std::pair<IndexEntry, Vector>>& vectors,
                            Eigen::Index pack_count) {
  if (vectors.empty()) raise(Errc::empty_input, "no vectors to pack");
  if (pack_count < 1) raise(Errc::invalid_argument, "pack count below 1");
  const Eigen::Index dim = vectors.front().second.size();
  std::vector<Mbr> out;
  out.reserve((vectors.size() + static_cast<std::size_t>(pack_count) - 1) /
              static_cast<std::size_t>(pack_count));
  for (std::size_t i = 0; i < vectors.size(); i += static_cast<std::size_t>(pack_count)) {
    const std::size_t last = std::min(vectors.size(), i + static_cast<std::size_t>(pack_count));
    Mbr m;
    m.low = vectors[i].second;
    m.high = vectors[i].second;
    for (std::size_t j = i; j < last; ++j) {
      if (vectors[j].second.size() != dim) {
        raise(Errc::dimension_mismatch, "mixed vector dimensions");
      }
      m.low = m.low.cwiseMin(vectors[j].second);
      m.high = m.high.cwiseMax(vectors[j].second);
      m.entries.push_back(vectors[j].first);
    }
    out.push_back(std::move(m));
  }
  return out;
}

std::string to_string(WindowingKind kind) {
  switch (kind) {
    case WindowingKind::sliding: return "sliding";
    case WindowingKind::disjoint: return "disjoint";
    case WindowingKind::j_sliding: return "jsliding";
  }
  return "unknown";
}

WindowingKind windowing_from_string(const std::string& name) {
  if (name == "sliding") return WindowingKind::sliding;
  if (name == "disjoint") return WindowingKind::disjoint;
  if (name == "jsliding" || name == "j_sliding") return WindowingKind::j_sliding;
  raise(Errc::invalid_argument, "unknown windowing kind '" + name + "'");
}

std::size_t SubsequenceIndex::entry_count() const {
  std::size_t n = 0;
  for (const auto& m : mbrs) n += m.entries.size();
  return n;
}

namespace {

// Sort-tile-recursive ordering: stable-sort by center along each dimension
// in turn, tiling into slabs sized so the leaves come out balanced.
void str_tile(std::span<std::uint32_t> ids, const std::vector<Vector>& centers,
              std::size_t fanout, Eigen::Index d, Eigen::Index dims) {
  std::stable_sort(ids.begin(), ids.end(), [&](std::uint32_t a, std::uint32_t b) {
    return centers[a][d] < centers[b][d];
  });
  if (d + 1 >= dims || ids.size() <= fanout) return;
  const std::size_t pages = (ids.size() + fanout - 1) / fanout;
  const auto slabs = static_cast<std::size_t>(std::ceil(
      std::pow(static_cast<double>(pages), 1.0 / static_cast<double>(dims - d))));
  const std::size_t slab_len = ((pages + slabs - 1) / slabs) * fanout;
  for (std::size_t off = 0; off < ids.size(); off += slab_len) {
    const std::size_t len = std::min(slab_len, ids.size() - off);
    str_tile(ids.subspan(off, len), centers, fanout, d + 1, dims);
  }
}

void build_tree(SubsequenceIndex& idx) {
  idx.nodes.clear();
  if (idx.mbrs.empty()) return;
  const auto fanout = static_cast<std::size_t>(std::max<Eigen::Index>(2, idx.config.tree_fanout));
  const Eigen::Index dims = idx.dim();

  // leaf level packs the MBRs themselves
  std::vector<Vector> centers(idx.mbrs.size());
  std::vector<std::uint32_t> order(idx.mbrs.size());
  for (std::size_t i = 0; i < idx.mbrs.size(); ++i) {
    centers[i] = (idx.mbrs[i].low + idx.mbrs[i].high) / 2;
    order[i] = static_cast<std::uint32_t>(i);
  }
  str_tile(std::span(order), centers, fanout, 0, dims);

  std::vector<std::uint32_t> level;
  for (std::size_t i = 0; i < order.size(); i += fanout) {
    const std::size_t last = std::min(order.size(), i + fanout);
    TreeNode node;
    node.low = idx.mbrs[order[i]].low;
    node.high = idx.mbrs[order[i]].high;
    for (std::size_t j = i; j < last; ++j) {
      node.low = node.low.cwiseMin(idx.mbrs[order[j]].low);
      node.high = node.high.cwiseMax(idx.mbrs[order[j]].high);
      node.mbr_ids.push_back(order[j]);
    }
    level.push_back(static_cast<std::uint32_t>(idx.nodes.size()));
    idx.nodes.push_back(std::move(node));
  }

  while (level.size() > 1) {
    std::vector<Vector> node_centers(idx.nodes.size());
    for (std::uint32_t id : level) {
      node_centers[id] = (idx.nodes[id].low + idx.nodes[id].high) / 2;
    }
    str_tile(std::span(level), node_centers, fanout, 0, dims);
    std::vector<std::uint32_t> parents;
    for (std::size_t i = 0; i < level.size(); i += fanout) {
      const std::size_t last = std::min(level.size(), i + fanout);
      TreeNode node;
      node.low = idx.nodes[level[i]].low;
      node.high = idx.nodes[level[i]].high;
      for (std::size_t j = i; j < last; ++j) {
        node.low = node.low.cwiseMin(idx.nodes[level[j]].low);
        node.high = node.high.cwiseMax(idx.nodes[level[j]].high);
        node.children.push_back(level[j]);
      }
      parents.push_back(static_cast<std::uint32_t>(idx.nodes.size()));
      idx.nodes.push_back(std::move(node));
    }
    level = std::move(parents);
  }
}

std::vector<Window> windows_for(const Sequence& s, const IndexConfig& config) {
  switch (config.kind) {
    case WindowingKind::sliding: return sliding_windows(s, config.window);
    case WindowingKind::disjoint: return disjoint_windows(s, config.window);
    case WindowingKind::j_sliding:
      return j_sliding_windows(s, config.window, config.sliding_factor);
  }
  raise(Errc::invalid_argument, "bad windowing kind");
}

void check_query_vector(const SubsequenceIndex& idx, const ReducedVector& q) {
  if (q.transform_id != idx.config.transform.id) {
    raise(Errc::transform_mismatch, "query transformed with " + to_string(q.transform_id) +
                                        ", index built with " +
                                        to_string(idx.config.transform.id));
  }
  if (q.coords.size() != idx.dim() || q.source_len != idx.config.window) {
    raise(Errc::dimension_mismatch,
          "query vector dimension " + std::to_string(q.coords.size()) + " vs index dimension " +
              std::to_string(idx.dim()));
  }
}

}  // namespace

SubsequenceIndex build_index(const Dataset& ds, const IndexConfig& config) {
  SubsequenceIndex idx;
  idx.config = config;
  idx.dataset_fingerprint = fingerprint(ds);
  for (const auto& s : ds.sequences) {
    if (s.length() < config.window) {
      idx.skipped.push_back(s.id);
      continue;
    }
    std::vector<std::pair<IndexEntry, Vector>> vectors;
    for (const Window& w : windows_for(s, config)) {
      const ReducedVector rv =
          apply_transform(s.values.segment(w.start, w.length), config.transform);
      vectors.emplace_back(IndexEntry{w.sequence_id, w.start}, lb_embedding(rv));
    }
    auto mbrs = build_mbrs(vectors, config.pack_count);
    idx.mbrs.insert(idx.mbrs.end(), std::make_move_iterator(mbrs.begin()),
                    std::make_move_iterator(mbrs.end()));
  }
  if (idx.mbrs.empty()) {
    raise(Errc::no_indexable_sequence,
          "every sequence is shorter than the window " + std::to_string(config.window));
  }
  build_tree(idx);
  return idx;
}

std::vector<IndexEntry> range_search(const SubsequenceIndex& idx, const ReducedVector& q,
                                     Scalar radius, bool use_tree) {
  check_query_vector(idx, q);
  const Vector point = lb_embedding(q);
  // kBoundSlack keeps rounding noise in the embeddings from dismissing a
  // box whose true mindist is exactly at the radius
  const Scalar cutoff = radius + kBoundSlack;
  std::vector<IndexEntry> out;
  if (!use_tree || idx.nodes.empty()) {
    for (const auto& m : idx.mbrs) {
      if (box_mindist(point, m.low, m.high) <= cutoff) {
        out.insert(out.end(), m.entries.begin(), m.entries.end());
      }
    }
  } else {
    std::vector<std::uint32_t> stack = {static_cast<std::uint32_t>(idx.nodes.size() - 1)};
    while (!stack.empty()) {
      const TreeNode& node = idx.nodes[stack.back()];
      stack.pop_back();
      if (box_mindist(point, node.low, node.high) > cutoff) continue;
      if (node.leaf()) {
        for (std::uint32_t mid : node.mbr_ids) {
          const Mbr& m = idx.mbrs[mid];
          if (box_mindist(point, m.low, m.high) <= cutoff) {
            out.insert(out.end(), m.entries.begin(), m.entries.end());
          }
        }
      } else {
        stack.insert(stack.end(), node.children.begin(), node.children.end());
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

MbrScan::MbrScan(const SubsequenceIndex& idx, Vector embedded_query)
    : idx_(&idx), q_(std::move(embedded_query)) {
  if (q_.size() != idx.dim()) {
    raise(Errc::dimension_mismatch, "query dimension " + std::to_string(q_.size()) +
                                        " vs index dimension " + std::to_string(idx.dim()));
  }
  if (!idx.nodes.empty()) {
    const auto root = static_cast<std::uint32_t>(idx.nodes.size() - 1);
    heap_.push({box_mindist(q_, idx.nodes[root].low, idx.nodes[root].high), true, root});
  }
}

std::optional<MbrScan::Batch> MbrScan::next() {
  while (!heap_.empty()) {
    const QueueItem top = heap_.top();
    heap_.pop();
    if (!top.is_node) return Batch{top.dist, &idx_->mbrs[top.id]};
    const TreeNode& node = idx_->nodes[top.id];
    if (node.leaf()) {
      for (std::uint32_t mid : node.mbr_ids) {
        const Mbr& m = idx_->mbrs[mid];
        heap_.push({box_mindist(q_, m.low, m.high), false, mid});
      }
    } else {
      for (std::uint32_t child : node.children) {
        heap_.push({box_mindist(q_, idx_->nodes[child].low, idx_->nodes[child].high), true, child});
      }
    }
  }
  return std::nullopt;
}

Scalar MbrScan::frontier() const {
  if (heap_.empty()) return std::numeric_limits<Scalar>::infinity();
  return heap_.top().dist;
}

std::vector<IndexEntry> knn_mbr_scan(const SubsequenceIndex& idx, const ReducedVector& q,
                                     Eigen::Index k) {
  if (k < 1) raise(Errc::invalid_argument, "k below 1");
  check_query_vector(idx, q);
  MbrScan scan(idx, lb_embedding(q));
  std::vector<IndexEntry> out;
  while (out.size() < static_cast<std::size_t>(k)) {
    const auto batch = scan.next();
    if (!batch) break;
    out.insert(out.end(), batch->mbr->entries.begin(), batch->mbr->entries.end());
  }
  if (out.size() > static_cast<std::size_t>(k)) out.resize(static_cast<std::size_t>(k));
  return out;
}

namespace {

void put_bytes(std::ostream& os, const void* data, std::size_t n) {
  os.write(static_cast<const char*>(data), static_cast<std::streamsize>(n));
}

template <typename T>
void put_le(std::ostream& os, T value) {
  static_assert(std::is_integral_v<T>);
  unsigned char buf[sizeof(T)];
  auto u = static_cast<std::make_unsigned_t<T>>(value);
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    buf[i] = static_cast<unsigned char>(u & 0xff);
    u = static_cast<std::make_unsigned_t<T>>(u >> 8);
  }
  put_bytes(os, buf, sizeof(T));
}

void put_f64(std::ostream& os, double value) { put_le(os, std::bit_cast<std::uint64_t>(value)); }

template <typename T>
T get_le(std::istream& is) {
  static_assert(std::is_integral_v<T>);
  unsigned char buf[sizeof(T)];
  is.read(reinterpret_cast<char*>(buf), sizeof(T));
  if (!is) raise(Errc::parse_error, "truncated index file");
  std::make_unsigned_t<T> u = 0;
  for (std::size_t i = sizeof(T); i-- > 0;) {
    u = static_cast<std::make_unsigned_t<T>>((u << 8) | buf[i]);
  }
  return static_cast<T>(u);
}

double get_f64(std::istream& is) { return std::bit_cast<double>(get_le<std::uint64_t>(is)); }

constexpr char kMagic[4] = {'T', 'S', 'I', 'X'};
constexpr std::uint32_t kVersion = 1;

}  // namespace

void save_index(const SubsequenceIndex& idx, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) raise(Errc::io_error, "cannot open '" + path + "' for writing");
  put_bytes(os, kMagic, 4);
  put_le<std::uint32_t>(os, kVersion);
  put_le<std::uint8_t>(os, static_cast<std::uint8_t>(idx.config.kind));
  put_le<std::uint8_t>(os, static_cast<std::uint8_t>(idx.config.transform.id));
  put_le<std::int64_t>(os, idx.config.window);
  put_le<std::int64_t>(os, idx.config.sliding_factor);
  put_le<std::int64_t>(os, idx.config.transform.param);
  put_le<std::int64_t>(os, idx.config.pack_count);
  put_le<std::int64_t>(os, idx.config.tree_fanout);
  put_le<std::uint64_t>(os, idx.dataset_fingerprint);
  put_le<std::uint32_t>(os, static_cast<std::uint32_t>(idx.skipped.size()));
  for (int id : idx.skipped) put_le<std::int32_t>(os, id);
  put_le<std::int64_t>(os, idx.dim());
  put_le<std::uint64_t>(os, idx.mbrs.size());
  for (const auto& m : idx.mbrs) {
    for (Eigen::Index d = 0; d < m.low.size(); ++d) put_f64(os, m.low[d]);
    for (Eigen::Index d = 0; d < m.high.size(); ++d) put_f64(os, m.high[d]);
    put_le<std::uint64_t>(os, m.entries.size());
    for (const auto& e : m.entries) {
      put_le<std::int32_t>(os, e.sequence_id);
      put_le<std::int64_t>(os, e.start);
    }
  }
  if (!os) raise(Errc::io_error, "write to '" + path + "' failed");
}

SubsequenceIndex load_index(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) raise(Errc::file_not_found, "'" + path + "'");
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0) {
    raise(Errc::parse_error, "'" + path + "' is not an index file");
  }
  const auto version = get_le<std::uint32_t>(is);
  if (version != kVersion) {
    raise(Errc::parse_error, "unsupported index version " + std::to_string(version));
  }
  SubsequenceIndex idx;
  idx.config.kind = static_cast<WindowingKind>(get_le<std::uint8_t>(is));
  idx.config.transform.id = static_cast<TransformId>(get_le<std::uint8_t>(is));
  idx.config.window = get_le<std::int64_t>(is);
  idx.config.sliding_factor = get_le<std::int64_t>(is);
  idx.config.transform.param = get_le<std::int64_t>(is);
  idx.config.pack_count = get_le<std::int64_t>(is);
  idx.config.tree_fanout = get_le<std::int64_t>(is);
  idx.dataset_fingerprint = get_le<std::uint64_t>(is);
  const auto skipped = get_le<std::uint32_t>(is);
  idx.skipped.reserve(skipped);
  for (std::uint32_t i = 0; i < skipped; ++i) idx.skipped.push_back(get_le<std::int32_t>(is));
  const auto dim = get_le<std::int64_t>(is);
  const auto mbr_count = get_le<std::uint64_t>(is);
  idx.mbrs.reserve(mbr_count);
  for (std::uint64_t i = 0; i < mbr_count; ++i) {
    Mbr m;
    m.low.resize(dim);
    m.high.resize(dim);
    for (Eigen::Index d = 0; d < dim; ++d) m.low[d] = get_f64(is);
    for (Eigen::Index d = 0; d < dim; ++d) m.high[d] = get_f64(is);
    const auto entries = get_le<std::uint64_t>(is);
    m.entries.reserve(entries);
    for (std::uint64_t j = 0; j < entries; ++j) {
      const auto sid = get_le<std::int32_t>(is);
      const auto start = get_le<std::int64_t>(is);
      m.entries.push_back(IndexEntry{sid, start});
    }
    idx.mbrs.push_back(std::move(m));
  }
  build_tree(idx);
  return idx;
}

}  // namespace tsmatch
