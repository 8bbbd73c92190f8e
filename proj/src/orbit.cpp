#include "lsv/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "lsv/errors.hpp"
#include "lsv/numerics.hpp"

namespace lsv {

void OrbitEnsembleConfig::validate() const {
  MapParams::lsv(alpha);
  if (n_steps < 1 || n_orbits < 1) throw DomainError("orbit ensemble: n_steps and n_orbits must be >= 1");
  if (burn_in < 0) throw DomainError("orbit ensemble: burn_in must be >= 0");
}

EnsembleStats summarize(const std::vector<double>& per_orbit) {
  EnsembleStats s;
  s.per_orbit = per_orbit;
  const auto n = per_orbit.size();
  if (n == 0) return s;
  CompensatedSum sum;
  for (double v : per_orbit) sum.add(v);
  s.mean = sum.value() / static_cast<double>(n);
  CompensatedSum ss;
  for (double v : per_orbit) ss.add((v - s.mean) * (v - s.mean));
  s.std_error = n > 1 ? std::sqrt(ss.value() / static_cast<double>(n - 1) / static_cast<double>(n)) : 0.0;
  std::vector<double> sorted = per_orbit;
  std::sort(sorted.begin(), sorted.end());
  s.median = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  return s;
}

namespace {

std::mt19937_64 orbit_rng(std::uint64_t seed, int orbit) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(orbit)};
  return std::mt19937_64(seq);
}

double initial_point(std::mt19937_64& rng, InitialLaw law) {
  const double u = std::generate_canonical<double, 64>(rng);
  return law == InitialLaw::uniform_y ? 0.5 + 0.5 * u : u;
}

struct Stepper {
  double alpha, b;
  OrbitFlags flags;

  double operator()(double x) {
    double y;
    if (x <= 0.5) {
      y = std::fma(b * std::pow(x, alpha), x, x);
      if (y == x) ++flags.stagnations;
      if (y > 1.0) y = 1.0;
    } else {
      y = 2.0 * x - 1.0;
    }
    if (y < kOrbitFloor) {
      y = kOrbitFloor;
      ++flags.floor_hits;
    }
    return y;
  }
};

}  // namespace

EnsembleRun run_ensemble(const OrbitEnsembleConfig& cfg, const Potential& phi, double radius, int cells,
                         std::vector<std::int64_t> checkpoints, Exec exec) {
  cfg.validate();
  if (!(radius > 0.0 && radius <= 1.0)) throw DomainError("run_ensemble: radius must lie in (0,1]");
  std::sort(checkpoints.begin(), checkpoints.end());
  checkpoints.erase(std::remove_if(checkpoints.begin(), checkpoints.end(),
                                   [&](std::int64_t c) { return c < 1 || c >= cfg.n_steps; }),
                    checkpoints.end());
  checkpoints.erase(std::unique(checkpoints.begin(), checkpoints.end()), checkpoints.end());
  checkpoints.push_back(cfg.n_steps);
  const std::size_t nc = checkpoints.size();
  const auto no = static_cast<std::size_t>(cfg.n_orbits);
  const MapParams p = MapParams::lsv(cfg.alpha);

  std::vector<double> avg(no * nc), occ(no * nc);
  std::vector<double> cell_frac(cells > 0 ? no * static_cast<std::size_t>(cells) : 0);
  std::vector<OrbitFlags> flags(no);

  auto one = [&](std::size_t o) {
    auto rng = orbit_rng(cfg.seed, static_cast<int>(o));
    Stepper step{p.alpha, p.b_alpha, {}};
    double x = initial_point(rng, cfg.initial_law);
    for (std::int64_t i = 0; i < cfg.burn_in; ++i) x = step(x);
    CompensatedSum sum;
    std::int64_t inside = 0;
    std::vector<std::int64_t> counts(static_cast<std::size_t>(std::max(cells, 0)), 0);
    std::size_t next = 0;
    for (std::int64_t i = 1; i <= cfg.n_steps; ++i) {
      sum.add(phi.centered(x));
      if (x < radius) ++inside;
      if (cells > 0) ++counts[std::min(static_cast<std::size_t>(x * cells), counts.size() - 1)];
      x = step(x);
      if (i == checkpoints[next]) {
        const double n = static_cast<double>(i);
        avg[o * nc + next] = phi.value_at_zero() + sum.value() / n;
        occ[o * nc + next] = static_cast<double>(inside) / n;
        ++next;
      }
    }
    for (int c = 0; c < cells; ++c)
      cell_frac[o * static_cast<std::size_t>(cells) + static_cast<std::size_t>(c)] =
          static_cast<double>(counts[static_cast<std::size_t>(c)]) / static_cast<double>(cfg.n_steps);
    flags[o] = step.flags;
  };

  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t o = 0; o < no; ++o) one(o);
  } else {
    for (std::size_t o = 0; o < no; ++o) one(o);
  }

  EnsembleRun run;
  run.checkpoints = checkpoints;
  std::vector<double> col(no);
  for (std::size_t c = 0; c < nc; ++c) {
    for (std::size_t o = 0; o < no; ++o) col[o] = avg[o * nc + c];
    run.birkhoff.push_back(summarize(col));
    for (std::size_t o = 0; o < no; ++o) col[o] = occ[o * nc + c];
    run.occupation.push_back(summarize(col));
  }
  for (int c = 0; c < cells; ++c) {
    for (std::size_t o = 0; o < no; ++o) col[o] = cell_frac[o * static_cast<std::size_t>(cells) + static_cast<std::size_t>(c)];
    run.cells.push_back(summarize(col));
  }
  for (const auto& f : flags) {
    run.flags.floor_hits += f.floor_hits;
    run.flags.stagnations += f.stagnations;
  }
  return run;
}

EnsembleStats birkhoff_average(const OrbitEnsembleConfig& cfg, const Potential& phi, Exec exec) {
  return run_ensemble(cfg, phi, 1.0, 0, {}, exec).birkhoff.back();
}

EnsembleStats occupation_near_zero(const OrbitEnsembleConfig& cfg, double radius, Exec exec) {
  return run_ensemble(cfg, Potential::constant(0.0), radius, 0, {}, exec).occupation.back();
}

std::vector<EsslimRow> esslim_demo(const Potential& phi, const std::vector<double>& alphas,
                                   const std::vector<std::int64_t>& n_schedule, int n_orbits, std::uint64_t seed,
                                   Exec exec) {
  if (n_schedule.empty()) throw DomainError("esslim_demo: empty schedule");
  std::vector<EsslimRow> rows;
  const std::int64_t n_max = *std::max_element(n_schedule.begin(), n_schedule.end());
  for (double a : alphas) {
    if (!(a < 1.0)) throw DomainError("esslim_demo: alphas must lie below 1");
    OrbitEnsembleConfig cfg;
    cfg.alpha = a;
    cfg.n_steps = n_max;
    cfg.n_orbits = n_orbits;
    cfg.seed = seed;
    const EnsembleRun run = run_ensemble(cfg, phi, 1.0, 0, n_schedule, exec);
    for (std::size_t c = 0; c < run.checkpoints.size(); ++c) {
      const auto& st = run.birkhoff[c];
      EsslimRow r;
      r.alpha = a;
      r.n = run.checkpoints[c];
      r.mean = st.mean;
      r.median = st.median;
      r.std_error = st.std_error;
      r.quotient_mean = (st.mean - phi.value_at_zero()) / (a - 1.0);
      r.quotient_median = (st.median - phi.value_at_zero()) / (a - 1.0);
      rows.push_back(r);
    }
  }
  return rows;
}

InducedSample sample_induced(double alpha, std::int64_t returns, std::uint64_t seed, std::int64_t cap) {
  if (returns < 1) throw DomainError("sample_induced: returns must be >= 1");
  const MapParams p = MapParams::lsv(alpha);
  auto rng = orbit_rng(seed, 0);
  Stepper step{p.alpha, p.b_alpha, {}};
  double x = initial_point(rng, InitialLaw::uniform_y);
  InducedSample out;
  out.points.reserve(static_cast<std::size_t>(returns));
  out.taus.reserve(static_cast<std::size_t>(returns));
  std::int64_t total = 0;
  while (static_cast<std::int64_t>(out.taus.size()) < returns) {
    std::int64_t k = 0;
    do {
      x = step(x);
      ++k;
    } while (x < 0.5 && total + k < cap);
    total += k;
    if (x < 0.5) {
      out.capped = true;
      break;
    }
    out.taus.push_back(k);
    out.points.push_back(x);
  }
  return out;
}

std::vector<std::int64_t> sample_return_times(double alpha, std::int64_t returns, std::uint64_t seed, std::int64_t cap) {
  return sample_induced(alpha, returns, seed, cap).taus;
}

}  // namespace lsv
