#pragma once

#include <cstdint>
#include <vector>

#include "lsv/induced.hpp"
#include "lsv/potential.hpp"

namespace lsv {

enum class InitialLaw { uniform_unit, uniform_y };

struct OrbitEnsembleConfig {
  double alpha = 0.8;
  std::int64_t n_steps = 1000000;
  int n_orbits = 64;
  std::uint64_t seed = 1;
  InitialLaw initial_law = InitialLaw::uniform_unit;
  std::int64_t burn_in = 1000;

  void validate() const;
};

/// Iterates below this value are lifted to it; hits are counted.
inline constexpr double kOrbitFloor = 1e-300;

struct OrbitFlags {
  std::int64_t floor_hits = 0;
  /// Steps where the left branch returned its argument unchanged in floating point.
  std::int64_t stagnations = 0;
};

struct EnsembleStats {
  double mean = 0.0;
  double std_error = 0.0;
  double median = 0.0;
  std::vector<double> per_orbit;
};

EnsembleStats summarize(const std::vector<double>& per_orbit);

/// Everything one ensemble run measures. `checkpoints` are step counts (after burn-in) at which
/// the running averages are recorded; n_steps is always the last one.
struct EnsembleRun {
  std::vector<std::int64_t> checkpoints;
  /// [checkpoint] -> stats of (1/n) sum phi(f^i x)
  std::vector<EnsembleStats> birkhoff;
  /// [checkpoint] -> stats of the fraction of time in [0, radius)
  std::vector<EnsembleStats> occupation;
  /// Per-cell time fractions over a uniform partition of [0,1] at n_steps (empty if cells == 0).
  std::vector<EnsembleStats> cells;
  OrbitFlags flags;
};

/// One pass over all orbits. Each orbit draws from its own mt19937_64 seeded with
/// (seed, orbit index); orbits run concurrently and are reduced in index order, so the
/// result does not depend on the thread count.
EnsembleRun run_ensemble(const OrbitEnsembleConfig& cfg, const Potential& phi, double radius, int cells = 0,
                         std::vector<std::int64_t> checkpoints = {}, Exec exec = Exec::parallel);

EnsembleStats birkhoff_average(const OrbitEnsembleConfig& cfg, const Potential& phi, Exec exec = Exec::parallel);
EnsembleStats occupation_near_zero(const OrbitEnsembleConfig& cfg, double radius, Exec exec = Exec::parallel);

struct EsslimRow {
  double alpha = 0.0;
  std::int64_t n = 0;
  double mean = 0.0;
  double median = 0.0;
  double std_error = 0.0;
  double quotient_mean = 0.0;    // (mean - phi(0)) / (alpha - 1)
  double quotient_median = 0.0;  // (median - phi(0)) / (alpha - 1)
};

/// Centred, (alpha - 1)-rescaled Birkhoff averages for each alpha and each n in the schedule.
std::vector<EsslimRow> esslim_demo(const Potential& phi, const std::vector<double>& alphas,
                                   const std::vector<std::int64_t>& n_schedule, int n_orbits, std::uint64_t seed,
                                   Exec exec = Exec::parallel);

/// One orbit of the induced map F = f^tau on Y, started uniformly in Y. The induced system is
/// uniformly expanding, so the orbit equidistributes w.r.t. nu~ after a short transient.
struct InducedSample {
  std::vector<double> points;       // F^i(x_0), i = 1..returns
  std::vector<std::int64_t> taus;   // tau(F^{i-1} x_0)
  bool capped = false;              // stopped early by the step cap
};

InducedSample sample_induced(double alpha, std::int64_t returns, std::uint64_t seed, std::int64_t cap = 1000000000);

/// Return times only.
std::vector<std::int64_t> sample_return_times(double alpha, std::int64_t returns, std::uint64_t seed,
                                              std::int64_t cap = 1000000000);

}  // namespace lsv
