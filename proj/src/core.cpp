#include "tsmatch/core.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace tsmatch {

const char* to_string(Errc code) {
  switch (code) {
    case Errc::file_not_found: return "FileNotFound";
    case Errc::parse_error: return "ParseError";
    case Errc::empty_dataset: return "EmptyDataset";
    case Errc::out_of_bounds: return "OutOfBounds";
    case Errc::window_too_long: return "WindowTooLong";
    case Errc::invalid_sliding_factor: return "InvalidSlidingFactor";
    case Errc::frame_mismatch: return "FrameMismatch";
    case Errc::too_many_coefficients: return "TooManyCoefficients";
    case Errc::not_power_of_two: return "NotPowerOfTwo";
    case Errc::too_many_segments: return "TooManySegments";
    case Errc::length_mismatch: return "LengthMismatch";
    case Errc::invalid_p: return "InvalidP";
    case Errc::empty_input: return "EmptyInput";
    case Errc::infeasible_constraint: return "InfeasibleConstraint";
    case Errc::transform_mismatch: return "TransformMismatch";
    case Errc::bound_violation: return "BoundViolation";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::no_indexable_sequence: return "NoIndexableSequence";
    case Errc::query_too_long: return "QueryTooLong";
    case Errc::query_shorter_than_window: return "QueryShorterThanWindow";
    case Errc::index_config_mismatch: return "IndexConfigMismatch";
    case Errc::window_too_large_for_query: return "WindowTooLargeForQuery";
    case Errc::not_enough_placements: return "NotEnoughPlacements";
    case Errc::too_many_clusters: return "TooManyClusters";
    case Errc::unknown_flag: return "UnknownFlag";
    case Errc::conflicting_options: return "ConflictingOptions";
    case Errc::missing_required: return "MissingRequired";
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::io_error: return "IoError";
  }
  return "UnknownError";
}

namespace {

struct Token {
  std::string text;
  long column;  // 1-based position of the token's first character
};

std::vector<Token> tokenize(const std::string& line, DatasetFormat format) {
  std::vector<Token> tokens;
  if (format == DatasetFormat::csv) {
    long col = 1;
    std::size_t begin = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == ',') {
        std::string field = line.substr(begin, i - begin);
        // trim surrounding blanks
        std::size_t a = field.find_first_not_of(" \t");
        std::size_t b = field.find_last_not_of(" \t");
        if (a != std::string::npos)
          tokens.push_back({field.substr(a, b - a + 1), col + static_cast<long>(a)});
        begin = i + 1;
        col = static_cast<long>(i) + 2;
      }
    }
    return tokens;
  }
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    if (i >= line.size()) break;
    std::size_t begin = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    tokens.push_back({line.substr(begin, i - begin), static_cast<long>(begin) + 1});
  }
  return tokens;
}

Scalar parse_value(const Token& tok, long line_no) {
  const char* first = tok.text.data();
  const char* last = first + tok.text.size();
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last)
    throw Error(Errc::parse_error, "malformed numeric token '" + tok.text + "'", line_no,
                tok.column);
  if (!std::isfinite(value))
    throw Error(Errc::parse_error, "non-finite value '" + tok.text + "'", line_no, tok.column);
  return value;
}

}  // namespace

Dataset parse_dataset(std::istream& in, DatasetFormat format, bool labeled,
                      const std::string& source) {
  Dataset ds;
  ds.source = source;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == '#') continue;

    auto tokens = tokenize(line, format);
    if (tokens.empty()) continue;

    Sequence seq;
    seq.id = static_cast<int>(ds.sequences.size());
    std::size_t value_begin = 0;
    if (labeled) {
      seq.label = tokens[0].text;
      value_begin = 1;
    }
    if (tokens.size() <= value_begin)
      throw Error(Errc::parse_error, "line has a label but no values", line_no,
                  tokens[0].column);

    seq.values.resize(static_cast<Eigen::Index>(tokens.size() - value_begin));
    for (std::size_t t = value_begin; t < tokens.size(); ++t)
      seq.values[static_cast<Eigen::Index>(t - value_begin)] = parse_value(tokens[t], line_no);
    ds.sequences.push_back(std::move(seq));
  }
  if (ds.sequences.empty()) raise(Errc::empty_dataset, "no sequences in " + source);
  return ds;
}

Dataset load_dataset(const std::string& path, DatasetFormat format, bool labeled) {
  std::ifstream in(path);
  if (!in) raise(Errc::file_not_found, path);
  return parse_dataset(in, format, labeled, path);
}

Vector slice(const Sequence& s, Eigen::Index i, Eigen::Index j) {
  if (i < 0 || i >= j || j > s.length())
    raise(Errc::out_of_bounds, "slice [" + std::to_string(i) + ", " + std::to_string(j) +
                                   ") of sequence of length " + std::to_string(s.length()));
  return s.values.segment(i, j - i);
}

Scalar population_std(VecRef values) {
  if (values.size() == 0) raise(Errc::empty_input, "population_std of empty input");
  const Scalar mean = values.mean();
  return std::sqrt((values.array() - mean).square().sum() / static_cast<Scalar>(values.size()));
}

Vector normalize(VecRef values, NormalizeMethod method) {
  if (values.size() == 0) raise(Errc::empty_input, "normalize of empty input");
  if (method == NormalizeMethod::zscore) {
    const Scalar mean = values.mean();
    const Scalar std = population_std(values);
    if (std == 0.0) return Vector::Zero(values.size());
    return (values.array() - mean) / std;
  }
  const Scalar lo = values.minCoeff();
  const Scalar hi = values.maxCoeff();
  if (hi == lo) return Vector::Zero(values.size());
  return (values.array() - lo) / (hi - lo);
}

std::uint64_t fingerprint(const Dataset& ds) {
  // FNV-1a over the raw value bytes plus lengths; stable across runs.
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](const void* data, std::size_t n) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= bytes[i];
      h *= 1099511628211ull;
    }
  };
  const std::uint64_t count = ds.sequences.size();
  mix(&count, sizeof(count));
  for (const auto& seq : ds.sequences) {
    const std::uint64_t len = static_cast<std::uint64_t>(seq.length());
    mix(&len, sizeof(len));
    mix(seq.values.data(), sizeof(Scalar) * static_cast<std::size_t>(seq.length()));
  }
  return h;
}

}  // namespace tsmatch
