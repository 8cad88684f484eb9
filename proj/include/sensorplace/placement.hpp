#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "sensorplace/frf.hpp"
#include "sensorplace/linalg.hpp"
#include "sensorplace/modal_model.hpp"

namespace sensorplace {

struct SelectionStep {
  Index chosen = 0;
  /// ||G_S - diag(G_S)||_F after adding `chosen`.
  double objective = 0.0;
};

struct SensorSet {
  IndexList selected;
  /// One entry per greedy iteration; empty for selectors without iterations.
  std::vector<SelectionStep> history;
  std::optional<double> omega;
  Index budget = 0;
  /// Final selection objective; NaN when the selector had no FRF to score.
  double objective = std::numeric_limits<double>::quiet_NaN();
};

/// Off-diagonal Frobenius norm of G_S = H_S^H H_S, where H_S holds the rows
/// `nodes` of the fully normalized matrix. Column norms are those of the full
/// matrix, so diag(G_S) is generally not 1.
double selection_objective(const NormalizedFrf& full, const IndexList& nodes);

/// Greedy row selection minimizing the off-diagonal Gram energy.
///
/// Each iteration scores every remaining row with a rank-one update of G_S
/// (candidates scored in parallel). Objectives within a relative 1e-12 of the
/// best are treated as ties and resolved toward the smallest node index.
SensorSet greedy_select(const NormalizedFrf& full, Index budget);

/// Reference implementation of greedy_select: re-assembles G_{S+i} from
/// scratch for every candidate on a single thread.
SensorSet greedy_select_serial(const NormalizedFrf& full, Index budget);

/// Global minimizer of the greedy objective by enumeration. Ties go to the
/// lexicographically smallest index set.
SensorSet exhaustive_select(const NormalizedFrf& full, Index budget,
                            std::uint64_t max_combinations = 1'000'000);

/// Nodes nearest to the sign changes of mode p (chain ordering assumed),
/// plus the end nodes when |phi| there is below 10% of max |phi_p|.
IndexList nodal_indices(const ModalData& modal, Index p);

struct AntinodalOptions {
  /// Minimum |i - j| between picks; defaults to floor(N / (2 (p + 1))).
  std::optional<Index> min_spacing;
  /// Restrict candidates to local maxima of |phi_p| along the node ordering.
  bool local_extrema_only = true;
};

/// Baseline layout: largest |phi_p| entries in descending order under the
/// spacing rule.
SensorSet antinodal_select(const ModalData& modal, Index p, Index budget,
                           const AntinodalOptions& options = {});

/// Number of picks antinodal_select can make for mode p under `options`.
Index antinodal_capacity(const ModalData& modal, Index p,
                         const AntinodalOptions& options = {});

}  // namespace sensorplace
