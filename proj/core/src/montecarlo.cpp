#include "heatfield/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <mutex>
#include <queue>
#include <thread>
#include <utility>

#include "heatfield/errors.hpp"

namespace heatfield::mc {

using detail::fail;
using detail::require;

void BranchingConfig::validate() const {
    require(std::isfinite(gamma) && gamma > 0.0, ErrorCode::InvalidArgument,
            "clock rate gamma must be positive");
    require(max_particles > 0, ErrorCode::InvalidArgument, "max_particles must be positive");
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

unsigned resolve_workers(McOptions options, std::size_t replicas) {
    unsigned w = options.workers ? options.workers : std::thread::hardware_concurrency();
    if (w == 0) w = 1;
    return static_cast<unsigned>(std::min<std::size_t>(w, std::max<std::size_t>(replicas, 1)));
}

// Runs body(r) for r in [0, n) on a small thread pool; results land at
// index r. The exception of the lowest failing replica is rethrown.
template <typename T, typename Body>
std::vector<T> run_replicas(std::size_t n, McOptions options, Body&& body) {
    std::vector<T> out(n);
    const unsigned workers = resolve_workers(options, n);
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::size_t error_index = n;
    std::exception_ptr error;

    auto work = [&] {
        for (;;) {
            const std::size_t r = next.fetch_add(1);
            if (r >= n) return;
            try {
                out[r] = body(r);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (r < error_index) {
                    error_index = r;
                    error = std::current_exception();
                }
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
    }
    if (error) std::rethrow_exception(error);
    return out;
}

SpacePoint displaced(const SpacePoint& from, double dt, RngStream& rng) {
    SpacePoint p = from;
    const double sd = std::sqrt(dt);
    for (std::size_t k = 0; k < p.dim(); ++k) p[k] += sd * rng.normal();
    return p;
}

struct Particle {
    std::uint64_t id = 0;
    double birth_time = 0.0;
    SpacePoint birth_position;
};

enum class Outcome { Horizon, Extinct, Capped, Stopped };

struct RunOptions {
    bool track_space = true;
    bool record_events = false;
    bool record_offspring = false;
    std::size_t max_events = std::numeric_limits<std::size_t>::max();
};

struct RunResult {
    Outcome outcome = Outcome::Horizon;
    double stop_time = kInf;
    std::vector<std::size_t> counts;
    std::vector<BranchingEvent> events;
    std::vector<std::size_t> offspring;
    double first_event_time = kInf;
    std::size_t live = 0;
};

// Event-driven simulation of one replica. Every particle gets an Exp(gamma)
// lifetime on birth; positions are only materialised at events (and at the
// horizon), using exact Gaussian increments over the elapsed time.
class BranchingRun {
public:
    BranchingRun(const BranchingConfig& config, std::uint64_t replica_seed, RunOptions options)
        : config_(config),
          options_(options),
          clock_(derive_seed(replica_seed, 0)),
          space_(derive_seed(replica_seed, 1)),
          offspring_(config.fertility.probabilities().begin(),
                     config.fertility.probabilities().end()) {}

    RunResult run(double horizon, std::span<const double> sample_times) {
        RunResult result;
        spawn(0.0, config_.x0);
        std::size_t next_sample = 0;
        std::size_t processed = 0;

        while (!heap_.empty()) {
            const auto [death_time, slot] = heap_.top();
            if (death_time > horizon) break;
            while (next_sample < sample_times.size() && sample_times[next_sample] < death_time) {
                result.counts.push_back(live_);
                ++next_sample;
            }
            heap_.pop();

            Particle parent = std::move(slots_[slot]);
            free_.push_back(slot);
            is_free_[slot] = true;
            --live_;
            const SpacePoint where = options_.track_space
                                         ? displaced(parent.birth_position,
                                                     death_time - parent.birth_time, space_)
                                         : parent.birth_position;
            const auto k = static_cast<std::size_t>(clock_.draw(offspring_));
            if (processed == 0) result.first_event_time = death_time;
            if (options_.record_offspring) result.offspring.push_back(k);

            BranchingEvent event;
            if (options_.record_events) {
                event.time = death_time;
                event.kind = k == 0 ? EventKind::Death : EventKind::Branch;
                event.parent = parent.id;
                event.position = where;
            }
            for (std::size_t c = 0; c < k; ++c) {
                const std::uint64_t id = spawn(death_time, where);
                if (options_.record_events) event.children.push_back(id);
            }
            if (options_.record_events) result.events.push_back(std::move(event));

            if (live_ > config_.max_particles) {
                result.outcome = Outcome::Capped;
                result.stop_time = death_time;
                result.live = live_;
                return result;
            }
            if (live_ == 0) {
                result.outcome = Outcome::Extinct;
                result.stop_time = death_time;
                break;
            }
            if (++processed >= options_.max_events) {
                result.outcome = Outcome::Stopped;
                result.stop_time = death_time;
                result.live = live_;
                return result;
            }
        }
        while (next_sample < sample_times.size()) {
            result.counts.push_back(live_);
            ++next_sample;
        }
        result.live = live_;
        return result;
    }

    // Live particles in id order, moved to `time` by exact Gaussian increments.
    PopulationSnapshot snapshot(double time) {
        PopulationSnapshot snap;
        snap.time = time;
        std::vector<const Particle*> alive;
        alive.reserve(live_);
        for (std::size_t s = 0; s < slots_.size(); ++s)
            if (!is_free_[s]) alive.push_back(&slots_[s]);
        std::sort(alive.begin(), alive.end(),
                  [](const Particle* a, const Particle* b) { return a->id < b->id; });
        for (const Particle* p : alive) {
            snap.ids.push_back(p->id);
            snap.positions.push_back(options_.track_space
                                         ? displaced(p->birth_position, time - p->birth_time, space_)
                                         : p->birth_position);
        }
        return snap;
    }

private:
    std::uint64_t spawn(double t, const SpacePoint& where) {
        const double death = t + clock_.exponential(config_.gamma);
        std::size_t slot;
        if (!free_.empty()) {
            slot = free_.back();
            free_.pop_back();
        } else {
            slot = slots_.size();
            slots_.emplace_back();
            is_free_.push_back(false);
        }
        is_free_[slot] = false;
        slots_[slot] = Particle{next_id_, t, where};
        heap_.emplace(death, slot);
        ++live_;
        return next_id_++;
    }

    using HeapEntry = std::pair<double, std::size_t>;

    const BranchingConfig& config_;
    RunOptions options_;
    RngStream clock_;
    RngStream space_;
    std::discrete_distribution<int> offspring_;
    std::vector<Particle> slots_;
    std::vector<bool> is_free_;
    std::vector<std::size_t> free_;
    std::priority_queue<HeapEntry, std::vector<HeapEntry>, std::greater<>> heap_;
    std::size_t live_ = 0;
    std::uint64_t next_id_ = 0;
};

void validate_run(const BranchingConfig& config, double horizon) {
    config.validate();
    require(std::isfinite(horizon) && horizon >= 0.0, ErrorCode::InvalidArgument,
            "horizon must be finite and >= 0");
}

void validate_replicas(std::size_t replicas) {
    require(replicas > 0, ErrorCode::InvalidArgument, "need at least one replica");
}

[[noreturn]] void explode(const RunResult& r) {
    fail(ErrorCode::PopulationExplosion,
         "live particle count exceeded the cap at t = " + std::to_string(r.stop_time));
}

}  // namespace

std::vector<SpacePoint> sample_brownian_path(const SpacePoint& x0, double t, std::size_t n_steps,
                                             RngSeed seed) {
    require(std::isfinite(t) && t > 0.0, ErrorCode::NonPositiveTime, "path duration must be > 0");
    require(n_steps >= 1, ErrorCode::InvalidArgument, "path needs at least one step");
    RngStream rng(derive_seed(seed.value, 0));
    const double dt = t / static_cast<double>(n_steps);
    std::vector<SpacePoint> path;
    path.reserve(n_steps + 1);
    path.push_back(x0);
    for (std::size_t k = 0; k < n_steps; ++k) path.push_back(displaced(path.back(), dt, rng));
    return path;
}

Estimate feynman_kac_estimate(const SampledFunction& u, const std::function<double(double)>& v,
                              double t, const SpacePoint& x, std::size_t replicas,
                              std::size_t n_steps, RngSeed seed, McOptions options) {
    require(std::isfinite(t) && t > 0.0, ErrorCode::NonPositiveTime, "duration must be > 0");
    require(x.dim() == 1, ErrorCode::DimensionMismatch, "Feynman-Kac estimator is one-dimensional");
    require(n_steps >= 1, ErrorCode::InvalidArgument, "need at least one time step");
    validate_replicas(replicas);
    const double dt = t / static_cast<double>(n_steps);
    const double sd = std::sqrt(dt);
    const auto weights = run_replicas<double>(replicas, options, [&](std::size_t r) {
        RngStream rng(derive_seed(seed.value, r));
        double pos = x[0];
        double exponent = 0.0;
        for (std::size_t k = 0; k < n_steps; ++k) {
            exponent += v(pos) * dt;
            pos += sd * rng.normal();
        }
        return u.interpolate(pos) * std::exp(-exponent);
    });
    return stats::mean_estimate(weights);
}

EventLog simulate_branching(const BranchingConfig& config, double horizon,
                            std::span<const double> sample_times, RngSeed seed) {
    validate_run(config, horizon);
    require(std::is_sorted(sample_times.begin(), sample_times.end()), ErrorCode::InvalidArgument,
            "sample times must be sorted");
    require(sample_times.empty() || (sample_times.front() >= 0.0 && sample_times.back() <= horizon),
            ErrorCode::InvalidArgument, "sample times must lie in [0, horizon]");

    BranchingRun run(config, derive_seed(seed.value, 0), RunOptions{.track_space = true, .record_events = true});
    RunResult r = run.run(horizon, sample_times);
    if (r.outcome == Outcome::Capped) explode(r);

    EventLog log;
    log.events = std::move(r.events);
    log.sample_times.assign(sample_times.begin(), sample_times.end());
    log.counts = std::move(r.counts);
    log.final_population = run.snapshot(horizon);
    return log;
}

std::vector<ExtinctionEstimate> estimate_extinction_curve(const BranchingConfig& config,
                                                          std::span<const double> times,
                                                          std::size_t replicas, RngSeed seed,
                                                          McOptions options) {
    require(!times.empty() && std::is_sorted(times.begin(), times.end()) && times.front() >= 0.0,
            ErrorCode::InvalidArgument, "extinction times must be sorted and non-negative");
    validate_run(config, times.back());
    validate_replicas(replicas);

    struct ReplicaOutcome {
        double extinction_time = kInf;
        bool capped = false;
    };
    const auto outcomes = run_replicas<ReplicaOutcome>(replicas, options, [&](std::size_t r) {
        BranchingRun run(config, derive_seed(seed.value, r), RunOptions{.track_space = false});
        const RunResult res = run.run(times.back(), {});
        if (res.outcome == Outcome::Extinct) return ReplicaOutcome{res.stop_time, false};
        return ReplicaOutcome{kInf, res.outcome == Outcome::Capped};
    });

    std::size_t capped = 0;
    for (const auto& o : outcomes) capped += o.capped ? 1 : 0;
    std::vector<ExtinctionEstimate> curve;
    curve.reserve(times.size());
    for (double t : times) {
        std::size_t extinct = 0;
        for (const auto& o : outcomes) extinct += o.extinction_time <= t ? 1 : 0;
        const auto est = stats::binomial_estimate(extinct, replicas);
        curve.push_back({est.value, est.std_error, replicas, capped});
    }
    return curve;
}

ExtinctionEstimate estimate_extinction(const BranchingConfig& config, double horizon,
                                       std::size_t replicas, RngSeed seed, McOptions options) {
    const double times[] = {horizon};
    return estimate_extinction_curve(config, times, replicas, seed, options).front();
}

Estimate estimate_generating_function(const BranchingConfig& config, double theta, double t,
                                      std::size_t replicas, RngSeed seed, McOptions options) {
    validate_run(config, t);
    validate_replicas(replicas);
    require(theta >= 0.0 && theta <= 1.0, ErrorCode::InvalidArgument, "theta must lie in [0,1]");
    const auto values = run_replicas<double>(replicas, options, [&](std::size_t r) {
        BranchingRun run(config, derive_seed(seed.value, r), RunOptions{.track_space = false});
        const RunResult res = run.run(t, {});
        if (res.outcome == Outcome::Capped) explode(res);
        return std::pow(theta, static_cast<double>(res.live));
    });
    return stats::mean_estimate(values);
}

Estimate estimate_mckean_product(const BranchingConfig& config, const SampledFunction& phi,
                                 double t, std::size_t replicas, RngSeed seed,
                                 McOptions options) {
    validate_run(config, t);
    validate_replicas(replicas);
    require(config.x0.dim() == 1, ErrorCode::DimensionMismatch,
            "McKean product needs a one-dimensional start point");
    for (double v : phi.values())
        require(v >= 0.0 && v <= 1.0, ErrorCode::InvalidArgument, "phi must take values in [0,1]");
    const auto values = run_replicas<double>(replicas, options, [&](std::size_t r) {
        BranchingRun run(config, derive_seed(seed.value, r), RunOptions{.track_space = true});
        const RunResult res = run.run(t, {});
        if (res.outcome == Outcome::Capped) explode(res);
        const PopulationSnapshot snap = run.snapshot(t);
        double product = 1.0;
        for (const auto& p : snap.positions) product *= phi.interpolate(p[0]);
        return product;
    });
    return stats::mean_estimate(values);
}

std::vector<double> sample_first_event_times(const BranchingConfig& config, std::size_t replicas,
                                             RngSeed seed, McOptions options) {
    config.validate();
    validate_replicas(replicas);
    return run_replicas<double>(replicas, options, [&](std::size_t r) {
        BranchingRun run(config, derive_seed(seed.value, r), RunOptions{.track_space = false, .max_events = 1});
        return run.run(kInf, {}).first_event_time;
    });
}

std::vector<std::size_t> sample_offspring_counts(const BranchingConfig& config, double horizon,
                                                 std::size_t replicas, RngSeed seed,
                                                 McOptions options) {
    validate_run(config, horizon);
    validate_replicas(replicas);
    const auto per_replica =
        run_replicas<std::vector<std::size_t>>(replicas, options, [&](std::size_t r) {
            BranchingRun run(config, derive_seed(seed.value, r),
                             RunOptions{.track_space = false, .record_offspring = true});
            RunResult res = run.run(horizon, {});
            if (res.outcome == Outcome::Capped) explode(res);
            return std::move(res.offspring);
        });
    std::vector<std::size_t> all;
    for (const auto& v : per_replica) all.insert(all.end(), v.begin(), v.end());
    return all;
}

}  // namespace heatfield::mc
