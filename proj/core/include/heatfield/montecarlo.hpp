#pragma once

// Monte Carlo oracle: Brownian paths, Feynman-Kac weights and exact
// event-driven simulation of branching Brownian motion.
//
// Reproducibility: replica r of a run seeded with s uses the streams
// derived in rng.hpp, so results are bit-identical for any worker count.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <vector>

#include "heatfield/fertility.hpp"
#include "heatfield/grid.hpp"
#include "heatfield/rng.hpp"
#include "heatfield/statistics.hpp"

namespace heatfield::mc {

using stats::Estimate;

struct BranchingConfig {
    double gamma = 1.0;
    FertilityDistribution fertility = FertilityDistribution::binary(0.5);
    SpacePoint x0 = SpacePoint{0.0};
    /// Live-particle cap; exceeding it raises PopulationExplosion.
    std::size_t max_particles = 1'000'000;

    /// Throws InvalidArgument on gamma <= 0 or a zero cap.
    void validate() const;
};

enum class EventKind { Death, Branch };

struct BranchingEvent {
    double time = 0.0;
    EventKind kind = EventKind::Death;
    std::uint64_t parent = 0;
    std::vector<std::uint64_t> children;
    SpacePoint position;
};

struct PopulationSnapshot {
    double time = 0.0;
    std::vector<std::uint64_t> ids;
    std::vector<SpacePoint> positions;

    std::size_t size() const noexcept { return ids.size(); }
};

struct EventLog {
    std::vector<BranchingEvent> events;
    PopulationSnapshot final_population;
    std::vector<double> sample_times;
    /// N_t at each requested sample time.
    std::vector<std::size_t> counts;
};

struct McOptions {
    /// Worker threads; 0 selects std::thread::hardware_concurrency().
    unsigned workers = 0;
};

/// Brownian path from x0 on n_steps + 1 uniform times in [0, t].
std::vector<SpacePoint> sample_brownian_path(const SpacePoint& x0, double t, std::size_t n_steps,
                                             RngSeed seed);

/// Mean over replicas of u(B_t) exp(-sum_k v(B_{t_k}) dt) with left-endpoint
/// Riemann sums over n_steps steps; B_0 = x (d = 1).
Estimate feynman_kac_estimate(const SampledFunction& u, const std::function<double(double)>& v,
                              double t, const SpacePoint& x, std::size_t replicas,
                              std::size_t n_steps, RngSeed seed, McOptions options = {});

/// One exact realisation up to `horizon`. Sample times must be sorted and
/// lie in [0, horizon]. Throws PopulationExplosion past the cap.
EventLog simulate_branching(const BranchingConfig& config, double horizon,
                            std::span<const double> sample_times, RngSeed seed);

struct ExtinctionEstimate {
    double p_hat = 0.0;
    double std_error = 0.0;
    std::size_t replicas = 0;
    /// Replicas stopped at the particle cap (counted as not extinct).
    std::size_t capped = 0;
};

/// Fraction of replicas with N_horizon = 0.
ExtinctionEstimate estimate_extinction(const BranchingConfig& config, double horizon,
                                       std::size_t replicas, RngSeed seed, McOptions options = {});

/// Fraction extinct by each of the sorted `times`, from one set of replicas.
std::vector<ExtinctionEstimate> estimate_extinction_curve(const BranchingConfig& config,
                                                          std::span<const double> times,
                                                          std::size_t replicas, RngSeed seed,
                                                          McOptions options = {});

/// Monte Carlo mean of theta^{N_t} (0^0 = 1).
Estimate estimate_generating_function(const BranchingConfig& config, double theta, double t,
                                      std::size_t replicas, RngSeed seed, McOptions options = {});

/// Monte Carlo mean of prod_i phi(Y_t^i) over particles alive at t (empty
/// product = 1); phi is interpolated linearly and clamped at the grid edges.
Estimate estimate_mckean_product(const BranchingConfig& config, const SampledFunction& phi,
                                 double t, std::size_t replicas, RngSeed seed,
                                 McOptions options = {});

/// Time of the first clock event of the root particle, per replica.
std::vector<double> sample_first_event_times(const BranchingConfig& config, std::size_t replicas,
                                             RngSeed seed, McOptions options = {});

/// Offspring count of every branch/death event across replicas, each run to
/// `horizon`; used for goodness-of-fit checks of the fertility law.
std::vector<std::size_t> sample_offspring_counts(const BranchingConfig& config, double horizon,
                                                 std::size_t replicas, RngSeed seed,
                                                 McOptions options = {});

}  // namespace heatfield::mc
