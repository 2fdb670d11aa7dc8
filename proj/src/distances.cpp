#include "tsmatch/distances.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "tsmatch/core.hpp"

namespace tsmatch {

namespace {

constexpr Scalar kInf = std::numeric_limits<Scalar>::infinity();

Scalar sq(Scalar v) { return v * v; }

struct CellLegality {
  DtwConstraintKind kind;
  Eigen::Index r;
  Eigen::Index n, m;

  bool operator()(Eigen::Index i, Eigen::Index j) const {
    switch (kind) {
      case DtwConstraintKind::none:
        return true;
      case DtwConstraintKind::sakoe_chiba:
        return std::abs(i - j) <= r;
      case DtwConstraintKind::itakura:
        return j <= 2 * i && i <= 2 * j && (n - 1 - i) <= 2 * (n - 1 - j) &&
               (n - 1 - j) <= 2 * (n - 1 - i);
    }
    return false;
  }
};

CellLegality check_dtw_inputs(VecRef x, VecRef y, const DtwConstraint& c) {
  if (x.size() == 0 || y.size() == 0) raise(Errc::empty_input, "dtw of empty input");
  if (c.kind == DtwConstraintKind::sakoe_chiba && c.r < std::abs(x.size() - y.size())) {
    raise(Errc::infeasible_constraint,
          "band half-width " + std::to_string(c.r) + " below length gap " +
              std::to_string(std::abs(x.size() - y.size())));
  }
  if (c.kind == DtwConstraintKind::itakura && x.size() != y.size()) {
    raise(Errc::infeasible_constraint, "itakura constraint needs equal lengths");
  }
  return {c.kind, c.r, x.size(), y.size()};
}

}  // namespace

Scalar lp_norm(VecRef x, VecRef y, Scalar p) {
  if (x.size() != y.size()) {
    raise(Errc::length_mismatch, "lp_norm over lengths " + std::to_string(x.size()) + " and " +
                                     std::to_string(y.size()));
  }
  if (!(p >= 1)) raise(Errc::invalid_p, "p = " + std::to_string(p) + " below 1");
  if (p == 2) return (x - y).norm();
  if (p == 1) return (x - y).cwiseAbs().sum();
  return std::pow((x - y).cwiseAbs().array().pow(p).sum(), Scalar(1) / p);
}

Scalar dtw(VecRef x, VecRef y, const DtwConstraint& c) {
  const auto legal = check_dtw_inputs(x, y, c);
  const Eigen::Index n = x.size();
  const Eigen::Index m = y.size();

  // rows are accumulation-matrix rows with a virtual top-left origin:
  // row[j] = A(i, j) over x[0..i) vs y[0..j), A(0,0) = 0
  std::vector<Scalar> prev(static_cast<std::size_t>(m) + 1, kInf);
  std::vector<Scalar> cur(static_cast<std::size_t>(m) + 1, kInf);
  prev[0] = 0;
  for (Eigen::Index i = 1; i <= n; ++i) {
    std::fill(cur.begin(), cur.end(), kInf);
    Eigen::Index lo = 1;
    Eigen::Index hi = m;
    if (c.kind == DtwConstraintKind::sakoe_chiba) {
      lo = std::max<Eigen::Index>(1, i - c.r);
      hi = std::min<Eigen::Index>(m, i + c.r);
    }
    for (Eigen::Index j = lo; j <= hi; ++j) {
      if (!legal(i - 1, j - 1)) continue;
      const Scalar best = std::min({prev[static_cast<std::size_t>(j) - 1],
                                    prev[static_cast<std::size_t>(j)],
                                    cur[static_cast<std::size_t>(j) - 1]});
      if (best == kInf) continue;
      cur[static_cast<std::size_t>(j)] = best + sq(x[i - 1] - y[j - 1]);
    }
    std::swap(prev, cur);
  }
  const Scalar total = prev[static_cast<std::size_t>(m)];
  if (total == kInf) raise(Errc::infeasible_constraint, "no legal warping path");
  return std::sqrt(total);
}

DtwAlignment dtw_path(VecRef x, VecRef y, const DtwConstraint& c) {
  const auto legal = check_dtw_inputs(x, y, c);
  const Eigen::Index n = x.size();
  const Eigen::Index m = y.size();
  Matrix acc = Matrix::Constant(n + 1, m + 1, kInf);
  acc(0, 0) = 0;
  for (Eigen::Index i = 1; i <= n; ++i) {
    for (Eigen::Index j = 1; j <= m; ++j) {
      if (!legal(i - 1, j - 1)) continue;
      const Scalar best = std::min({acc(i - 1, j - 1), acc(i - 1, j), acc(i, j - 1)});
      if (best == kInf) continue;
      acc(i, j) = best + sq(x[i - 1] - y[j - 1]);
    }
  }
  if (acc(n, m) == kInf) raise(Errc::infeasible_constraint, "no legal warping path");

  DtwAlignment out;
  out.distance = std::sqrt(acc(n, m));
  Eigen::Index i = n;
  Eigen::Index j = m;
  while (i >= 1 && j >= 1) {
    out.path.emplace_back(i - 1, j - 1);
    const Scalar diag = acc(i - 1, j - 1);
    const Scalar up = acc(i - 1, j);
    const Scalar left = acc(i, j - 1);
    if (diag <= up && diag <= left) {
      --i;
      --j;
    } else if (up <= left) {
      --i;
    } else {
      --j;
    }
  }
  std::reverse(out.path.begin(), out.path.end());
  return out;
}

Scalar erp(VecRef x, VecRef y, Scalar g) {
  const Eigen::Index n = x.size();
  const Eigen::Index m = y.size();
  std::vector<Scalar> prev(static_cast<std::size_t>(m) + 1, 0);
  std::vector<Scalar> cur(static_cast<std::size_t>(m) + 1, 0);
  for (Eigen::Index j = 1; j <= m; ++j) {
    prev[static_cast<std::size_t>(j)] = prev[static_cast<std::size_t>(j) - 1] + std::abs(y[j - 1] - g);
  }
  for (Eigen::Index i = 1; i <= n; ++i) {
    cur[0] = prev[0] + std::abs(x[i - 1] - g);
    for (Eigen::Index j = 1; j <= m; ++j) {
      const Scalar sub = prev[static_cast<std::size_t>(j) - 1] + std::abs(x[i - 1] - y[j - 1]);
      const Scalar del = prev[static_cast<std::size_t>(j)] + std::abs(x[i - 1] - g);
      const Scalar ins = cur[static_cast<std::size_t>(j) - 1] + std::abs(y[j - 1] - g);
      cur[static_cast<std::size_t>(j)] = std::min({sub, del, ins});
    }
    std::swap(prev, cur);
  }
  return prev[static_cast<std::size_t>(m)];
}

Scalar edr(VecRef x, VecRef y, Scalar tol) {
  const Eigen::Index n = x.size();
  const Eigen::Index m = y.size();
  std::vector<Scalar> prev(static_cast<std::size_t>(m) + 1, 0);
  std::vector<Scalar> cur(static_cast<std::size_t>(m) + 1, 0);
  for (Eigen::Index j = 0; j <= m; ++j) prev[static_cast<std::size_t>(j)] = static_cast<Scalar>(j);
  for (Eigen::Index i = 1; i <= n; ++i) {
    cur[0] = static_cast<Scalar>(i);
    for (Eigen::Index j = 1; j <= m; ++j) {
      const Scalar subcost = std::abs(x[i - 1] - y[j - 1]) <= tol ? 0 : 1;
      cur[static_cast<std::size_t>(j)] =
          std::min({prev[static_cast<std::size_t>(j) - 1] + subcost,
                    prev[static_cast<std::size_t>(j)] + 1,
                    cur[static_cast<std::size_t>(j) - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[static_cast<std::size_t>(m)];
}

Scalar edr_default_tolerance(VecRef x, VecRef y) {
  Vector both(x.size() + y.size());
  both.head(x.size()) = x;
  both.tail(y.size()) = y;
  if (both.size() == 0) return 0;
  return Scalar(0.25) * population_std(both);
}

std::string to_string(DistanceKind kind) {
  switch (kind) {
    case DistanceKind::l1: return "l1";
    case DistanceKind::l2: return "l2";
    case DistanceKind::dtw: return "dtw";
    case DistanceKind::erp: return "erp";
    case DistanceKind::edr: return "edr";
  }
  return "unknown";
}

Scalar DistanceSpec::evaluate(VecRef x, VecRef y) const {
  switch (kind) {
    case DistanceKind::l1: return lp_norm(x, y, 1);
    case DistanceKind::l2: return lp_norm(x, y, 2);
    case DistanceKind::dtw: return dtw(x, y, constraint);
    case DistanceKind::erp: return erp(x, y, erp_gap.value_or(0));
    case DistanceKind::edr: return edr(x, y, edr_tol ? *edr_tol : edr_default_tolerance(x, y));
  }
  raise(Errc::invalid_argument, "bad distance kind");
}

}  // namespace tsmatch
