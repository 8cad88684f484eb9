#include "sensorplace/placement.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sensorplace/errors.hpp"
#include "sensorplace/gram.hpp"

namespace sensorplace {

namespace {

constexpr double kTieTolerance = 1.0e-12;

Index position_of(const NormalizedFrf& full, Index node) {
  const auto it = std::find(full.rows.begin(), full.rows.end(), node);
  require(it != full.rows.end(), ErrorCode::InvalidParameter,
          "node " + std::to_string(node) + " is not a row of the normalized FRF");
  return static_cast<Index>(it - full.rows.begin());
}

void check_budget(const NormalizedFrf& full, Index budget) {
  const Index rows = static_cast<Index>(full.rows.size());
  require(full.h_bar.rows() == rows, ErrorCode::DimensionMismatch,
          "normalized FRF rows do not match its row list");
  require(budget >= 1 && budget <= rows, ErrorCode::BudgetOutOfRange,
          "budget " + std::to_string(budget) + " outside [1, " + std::to_string(rows) + "]");
}

double offdiag_energy(const ComplexMatrix& g) {
  return std::max(g.squaredNorm() - g.diagonal().squaredNorm(), 0.0);
}

/// Index into `scores` of the winner: the smallest node among candidates
/// within the tie tolerance of the minimum. `candidates` is sorted by node.
std::size_t pick_best(const std::vector<double>& scores) {
  const double best = *std::min_element(scores.begin(), scores.end());
  const double cutoff = best + kTieTolerance * std::abs(best);
  for (std::size_t k = 0; k < scores.size(); ++k)
    if (scores[k] <= cutoff) return k;
  return 0;
}

/// Remaining row positions ordered by node index.
IndexList positions_by_node(const NormalizedFrf& full) {
  IndexList pos = iota_indices(static_cast<Index>(full.rows.size()));
  std::sort(pos.begin(), pos.end(), [&](Index a, Index b) { return full.rows[a] < full.rows[b]; });
  return pos;
}

}  // namespace

double selection_objective(const NormalizedFrf& full, const IndexList& nodes) {
  require(!nodes.empty(), ErrorCode::InvalidParameter, "empty sensor set");
  ComplexMatrix sub(static_cast<Index>(nodes.size()), full.h_bar.cols());
  for (std::size_t k = 0; k < nodes.size(); ++k)
    sub.row(static_cast<Index>(k)) = full.h_bar.row(position_of(full, nodes[k]));
  return std::sqrt(offdiag_energy(sub.adjoint() * sub));
}

SensorSet greedy_select(const NormalizedFrf& full, Index budget) {
  check_budget(full, budget);
  const Index n = full.h_bar.cols();

  SensorSet out;
  out.omega = full.omega;
  out.budget = budget;

  IndexList remaining = positions_by_node(full);
  ComplexMatrix g = ComplexMatrix::Zero(n, n);
  double energy = 0.0;
  std::vector<double> scores;

  for (Index step = 0; step < budget; ++step) {
    scores.assign(remaining.size(), 0.0);
    const Index count = static_cast<Index>(remaining.size());
    // ||G + u u^H||_off^2 with u = conj(row):
    //   E + 2 (u^H G u - sum_a G_aa |u_a|^2) + (sum |u_a|^2)^2 - sum |u_a|^4
#pragma omp parallel for schedule(static)
    for (Index k = 0; k < count; ++k) {
      const ComplexVector u = full.h_bar.row(remaining[static_cast<std::size_t>(k)]).adjoint();
      const RealVector mag2 = u.cwiseAbs2();
      const double quadratic = u.dot(g * u).real();
      const double diag_part = g.diagonal().real().dot(mag2);
      const double s = mag2.sum();
      const double quartic = s * s - mag2.squaredNorm();
      scores[static_cast<std::size_t>(k)] = energy + 2.0 * (quadratic - diag_part) + quartic;
    }

    const std::size_t best = pick_best(scores);
    const Index pos = remaining[best];
    const ComplexVector u = full.h_bar.row(pos).adjoint();
    g.noalias() += u * u.adjoint();
    energy = offdiag_energy(g);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));

    out.selected.push_back(full.rows[pos]);
    out.history.push_back({full.rows[pos], std::sqrt(energy)});
  }
  out.objective = out.history.back().objective;
  return out;
}

SensorSet greedy_select_serial(const NormalizedFrf& full, Index budget) {
  check_budget(full, budget);

  SensorSet out;
  out.omega = full.omega;
  out.budget = budget;

  IndexList remaining = positions_by_node(full);
  IndexList chosen;
  std::vector<double> scores;
  for (Index step = 0; step < budget; ++step) {
    scores.assign(remaining.size(), 0.0);
    for (std::size_t k = 0; k < remaining.size(); ++k) {
      IndexList trial = chosen;
      trial.push_back(full.rows[remaining[k]]);
      const double obj = selection_objective(full, trial);
      scores[k] = obj * obj;
    }
    const std::size_t best = pick_best(scores);
    chosen.push_back(full.rows[remaining[best]]);
    remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
    out.history.push_back({chosen.back(), selection_objective(full, chosen)});
  }
  out.selected = chosen;
  out.objective = out.history.back().objective;
  return out;
}

SensorSet exhaustive_select(const NormalizedFrf& full, Index budget,
                            std::uint64_t max_combinations) {
  check_budget(full, budget);
  const Index rows = static_cast<Index>(full.rows.size());

  // C(rows, budget) with an early exit once the guard is exceeded.
  std::uint64_t combos = 1;
  for (Index k = 1; k <= budget; ++k) {
    combos = combos * static_cast<std::uint64_t>(rows - budget + k) / static_cast<std::uint64_t>(k);
    require(combos <= max_combinations, ErrorCode::CombinatorialGuard,
            "exhaustive search over C(" + std::to_string(rows) + ", " + std::to_string(budget) +
                ") subsets exceeds the guard of " + std::to_string(max_combinations));
  }

  IndexList nodes(full.rows.begin(), full.rows.end());
  std::sort(nodes.begin(), nodes.end());

  // Lexicographic enumeration of index combinations into `nodes`.
  std::vector<Index> pick(static_cast<std::size_t>(budget));
  std::iota(pick.begin(), pick.end(), Index{0});
  IndexList trial(pick.size());
  IndexList best_set;
  double best = std::numeric_limits<double>::infinity();
  while (true) {
    for (std::size_t k = 0; k < pick.size(); ++k) trial[k] = nodes[static_cast<std::size_t>(pick[k])];
    const double obj = selection_objective(full, trial);
    if (best_set.empty() || obj < best - kTieTolerance * best) {
      best = obj;
      best_set = trial;
    }
    Index k = budget - 1;
    while (k >= 0 && pick[static_cast<std::size_t>(k)] == rows - budget + k) --k;
    if (k < 0) break;
    ++pick[static_cast<std::size_t>(k)];
    for (Index j = k + 1; j < budget; ++j)
      pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
  }

  SensorSet out;
  out.selected = best_set;
  out.omega = full.omega;
  out.budget = budget;
  out.objective = best;
  return out;
}

IndexList nodal_indices(const ModalData& modal, Index p) {
  require(p >= 0 && p < modal.size(), ErrorCode::InvalidParameter,
          "mode index " + std::to_string(p) + " out of range");
  const auto phi = modal.mode_shapes.col(p);
  const Index n = phi.size();
  const double peak = phi.cwiseAbs().maxCoeff();

  IndexList out;
  if (std::abs(phi(0)) < 0.1 * peak) out.push_back(0);
  for (Index i = 0; i + 1 < n; ++i) {
    if (phi(i) * phi(i + 1) < 0.0) {
      const Index node = std::abs(phi(i + 1)) < std::abs(phi(i)) ? i + 1 : i;
      if (out.empty() || out.back() != node) out.push_back(node);
    }
  }
  if (std::abs(phi(n - 1)) < 0.1 * peak && (out.empty() || out.back() != n - 1))
    out.push_back(n - 1);
  return out;
}

namespace {

IndexList antinodal_order(const ModalData& modal, Index p, const AntinodalOptions& options,
                          Index limit) {
  require(p >= 0 && p < modal.size(), ErrorCode::InvalidParameter,
          "mode index " + std::to_string(p) + " out of range");
  const RealVector mag = modal.mode_shapes.col(p).cwiseAbs();
  const Index n = mag.size();
  const Index spacing = std::max<Index>(options.min_spacing.value_or(n / (2 * (p + 1))), 1);

  IndexList candidates;
  for (Index i = 0; i < n; ++i) {
    const bool left = i == 0 || mag(i) >= mag(i - 1);
    const bool right = i == n - 1 || mag(i) >= mag(i + 1);
    if (!options.local_extrema_only || (left && right)) candidates.push_back(i);
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](Index a, Index b) { return mag(a) > mag(b); });

  IndexList picked;
  for (Index c : candidates) {
    if (static_cast<Index>(picked.size()) >= limit) break;
    const bool clear = std::all_of(picked.begin(), picked.end(),
                                   [&](Index s) { return std::abs(s - c) >= spacing; });
    if (clear) picked.push_back(c);
  }
  return picked;
}

}  // namespace

Index antinodal_capacity(const ModalData& modal, Index p, const AntinodalOptions& options) {
  return static_cast<Index>(antinodal_order(modal, p, options, modal.size()).size());
}

SensorSet antinodal_select(const ModalData& modal, Index p, Index budget,
                           const AntinodalOptions& options) {
  require(budget >= 1 && budget <= modal.size(), ErrorCode::BudgetOutOfRange,
          "budget " + std::to_string(budget) + " outside [1, " + std::to_string(modal.size()) + "]");
  IndexList picked = antinodal_order(modal, p, options, budget);
  require(static_cast<Index>(picked.size()) == budget, ErrorCode::InsufficientExtrema,
          "mode " + std::to_string(p) + " offers only " + std::to_string(picked.size()) +
              " anti-nodal candidates for a budget of " + std::to_string(budget));
  SensorSet out;
  out.selected = std::move(picked);
  out.budget = budget;
  return out;
}

}  // namespace sensorplace
