#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "sensorplace/errors.hpp"
#include "sensorplace/gram.hpp"
#include "sensorplace/placement.hpp"

using namespace sensorplace;

namespace {

struct Chain {
  Index n;
  MechanicalSystem system;
  ModalData modal;
  explicit Chain(Index n_) : n(n_), system(build_chain({n_, 2.0, 2.0e6, 1.0e-4, 1.0e-3})), modal(solve_modes(system)) {}
  NormalizedFrf full(double omega) const {
    return normalize_columns(frf_direct(system, iota_indices(n), iota_indices(n), omega));
  }
};

}  // namespace

TEST_CASE("selection objective matches the triple-loop oracle") {
  Chain c(50);
  const NormalizedFrf f = c.full(0.95 * c.modal.natural_freqs(4));
  for (const IndexList& s : {IndexList{3}, IndexList{0, 49}, IndexList{9, 19, 30, 40, 12}})
    CHECK(selection_objective(f, s) == doctest::Approx(oracle::offdiag_energy(f.h_bar, s)).epsilon(1e-12));
}

TEST_CASE("greedy with M = N selects everything") {
  Chain c(12);
  const NormalizedFrf f = c.full(0.95 * c.modal.natural_freqs(4));
  const SensorSet s = greedy_select(f, 12);
  IndexList sorted = s.selected;
  std::sort(sorted.begin(), sorted.end());
  CHECK(sorted == iota_indices(12));
  CHECK(s.history.size() == 12);
  CHECK(s.objective == doctest::Approx(gram_norms(gram(f)).offdiag_frobenius).epsilon(1e-12));
}

TEST_CASE("greedy: first step is the best single row, history is consistent") {
  Chain c(50);
  const NormalizedFrf f = c.full(0.95 * c.modal.natural_freqs(4));
  const SensorSet s = greedy_select(f, 20);
  REQUIRE(s.history.size() == 20);
  double best = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < 50; ++i) best = std::min(best, oracle::offdiag_energy(f.h_bar, {i}));
  CHECK(s.history[0].objective == doctest::Approx(best).epsilon(1e-12));
  for (std::size_t k = 0; k < s.history.size(); ++k) {
    CHECK(s.history[k].chosen == s.selected[k]);
    const IndexList prefix(s.selected.begin(), s.selected.begin() + static_cast<std::ptrdiff_t>(k + 1));
    CHECK(s.history[k].objective == doctest::Approx(oracle::offdiag_energy(f.h_bar, prefix)).epsilon(1e-10));
  }
  std::set<Index> unique(s.selected.begin(), s.selected.end());
  CHECK(unique.size() == 20);
  CHECK(s.omega.has_value());
}

TEST_CASE("parallel greedy equals the serial reference") {
  Chain c(50);
  for (double factor : {0.5, 0.95, 1.0, 1.7}) {
    const NormalizedFrf f = c.full(factor * c.modal.natural_freqs(4));
    const SensorSet a = greedy_select(f, 20);
    const SensorSet b = greedy_select_serial(f, 20);
    CHECK(a.selected == b.selected);
    CHECK(a.objective == doctest::Approx(b.objective).epsilon(1e-10));
  }
  IrregularParams p;
  p.seed = 3;
  const MechanicalSystem s = build_irregular(p);
  const ModalData m = solve_modes(s);
  const NormalizedFrf f = normalize_columns(frf_direct(s, iota_indices(50), iota_indices(50), 0.93 * m.natural_freqs(2)));
  CHECK(greedy_select(f, 16).selected == greedy_select_serial(f, 16).selected);
}

TEST_CASE("global scaling of H does not change the selection") {
  Chain c(50);
  const double w = 0.95 * c.modal.natural_freqs(4);
  FrfMatrix h = frf_direct(c.system, iota_indices(50), iota_indices(50), w);
  const SensorSet a = greedy_select(normalize_columns(h), 10);
  h.values *= Complex(0.0, 7.5);
  const SensorSet b = greedy_select(normalize_columns(h), 10);
  CHECK(a.selected == b.selected);
}

TEST_CASE("exhaustive search matches a recursive enumeration") {
  Chain c(8);
  for (double factor : {0.8, 1.3, 2.5}) {
    const NormalizedFrf f = c.full(factor * c.modal.natural_freqs(1));
    for (Index m : {1, 2, 3, 4}) {
      const SensorSet e = exhaustive_select(f, m);
      const auto [best, set] = oracle::brute_best(f.h_bar, m);
      CHECK(e.objective == doctest::Approx(best).epsilon(1e-12));
      CHECK(oracle::offdiag_energy(f.h_bar, e.selected) == doctest::Approx(best).epsilon(1e-12));
      CHECK(greedy_select(f, m).objective >= e.objective * (1 - 1e-12));
    }
    CHECK(exhaustive_select(f, 8).selected == iota_indices(8));
  }
}

TEST_CASE("exhaustive ties go to the lexicographically smallest set") {
  // Symmetric chain: {i} and {N-1-i} score the same.
  Chain c(8);
  const NormalizedFrf f = c.full(0.9 * c.modal.natural_freqs(2));
  const SensorSet e = exhaustive_select(f, 1);
  CHECK(e.selected[0] < 4);
}

TEST_CASE("selection errors") {
  Chain c(50);
  const NormalizedFrf f = c.full(300.0);
  auto code_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Io;
  };
  CHECK(code_of([&] { greedy_select(f, 0); }) == ErrorCode::BudgetOutOfRange);
  CHECK(code_of([&] { greedy_select(f, 51); }) == ErrorCode::BudgetOutOfRange);
  CHECK(code_of([&] { exhaustive_select(f, 10); }) == ErrorCode::CombinatorialGuard);
  CHECK(code_of([&] { antinodal_select(c.modal, 0, 2); }) == ErrorCode::InsufficientExtrema);
}

TEST_CASE("nodal indices of chain modes") {
  Chain c(50);
  CHECK(nodal_indices(c.modal, 0) == IndexList{0, 49});
  CHECK(nodal_indices(c.modal, 4) == oracle::chain_nodes(50, 5));
  CHECK(nodal_indices(c.modal, 4) == IndexList{9, 19, 30, 40});
  ModalData flipped = c.modal;
  flipped.mode_shapes.col(4) *= -1.0;
  CHECK(nodal_indices(flipped, 4) == nodal_indices(c.modal, 4));
}

TEST_CASE("anti-nodal baseline") {
  Chain c(50);
  const SensorSet first = antinodal_select(c.modal, 0, 1);
  CHECK((first.selected[0] == 24 || first.selected[0] == 25));

  const SensorSet s = antinodal_select(c.modal, 4, 4);
  const auto extrema = oracle::chain_extrema(50, 5);
  for (Index node : s.selected) {
    double d = 1e9;
    for (double e : extrema) d = std::min(d, std::abs(static_cast<double>(node) - e));
    CHECK(d <= 1.0);
  }
  for (std::size_t a = 0; a < s.selected.size(); ++a)
    for (std::size_t b = a + 1; b < s.selected.size(); ++b) CHECK(std::abs(s.selected[a] - s.selected[b]) >= 5);
  CHECK(antinodal_capacity(c.modal, 4) == 5);

  AntinodalOptions loose;
  loose.min_spacing = 1;
  loose.local_extrema_only = false;
  CHECK(antinodal_capacity(c.modal, 4, loose) == 50);
  CHECK(antinodal_select(c.modal, 4, 16, loose).selected.size() == 16);

  const NormalizedFrf f = c.full(0.95 * c.modal.natural_freqs(4));
  const SensorSet anti = antinodal_select(c.modal, 4, 5);
  CHECK(selection_objective(f, anti.selected) > greedy_select(f, 5).objective);
}
