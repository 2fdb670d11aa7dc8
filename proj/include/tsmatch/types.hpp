#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tsmatch {

using Scalar = double;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
// Binds to whole vectors and to contiguous segments without copying.
using VecRef = Eigen::Ref<const Eigen::VectorXd>;

// Slack for comparisons against computed lower bounds. Reductions over the
// same values can round differently depending on operand alignment, so a
// computed bound may sit a few ulps above the true distance; filters must
// not dismiss on that margin. tlb() tolerates the same excess.
inline constexpr Scalar kBoundSlack = 1e-9;

enum class Errc {
  file_not_found,
  parse_error,
  empty_dataset,
  out_of_bounds,
  window_too_long,
  invalid_sliding_factor,
  frame_mismatch,
  too_many_coefficients,
  not_power_of_two,
  too_many_segments,
  length_mismatch,
  invalid_p,
  empty_input,
  infeasible_constraint,
  transform_mismatch,
  bound_violation,
  dimension_mismatch,
  no_indexable_sequence,
  query_too_long,
  query_shorter_than_window,
  index_config_mismatch,
  window_too_large_for_query,
  not_enough_placements,
  too_many_clusters,
  unknown_flag,
  conflicting_options,
  missing_required,
  invalid_argument,
  io_error,
};

const char* to_string(Errc code);

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}
  Error(Errc code, const std::string& what, long line, long column)
      : Error(code, what + " (line " + std::to_string(line) + ", column " +
                        std::to_string(column) + ")") {
    line_ = line;
    column_ = column;
  }

  Errc code() const { return code_; }
  long line() const { return line_; }
  long column() const { return column_; }

private:
  Errc code_;
  long line_ = -1;
  long column_ = -1;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) { throw Error(code, what); }

struct Sequence {
  int id = 0;
  std::string label;  // empty when the source carries no label
  Vector values;

  Eigen::Index length() const { return values.size(); }
};

struct Window {
  int sequence_id = 0;
  Eigen::Index start = 0;
  Eigen::Index length = 0;

  friend bool operator==(const Window&, const Window&) = default;
};

struct Dataset {
  std::vector<Sequence> sequences;
  std::string source = "inline";

  const Sequence& at(int id) const {
    if (id < 0 || id >= static_cast<int>(sequences.size()))
      raise(Errc::out_of_bounds, "no sequence with id " + std::to_string(id));
    return sequences[static_cast<std::size_t>(id)];
  }
  std::size_t size() const { return sequences.size(); }
  bool empty() const { return sequences.empty(); }
};

}  // namespace tsmatch
