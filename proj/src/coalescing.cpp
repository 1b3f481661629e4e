#include "walklab/coalescing.hpp"

#include <algorithm>
#include <cmath>

#include "walklab/error.hpp"
#include "walklab/hitting.hpp"
#include "walklab/rng.hpp"

namespace walklab {

int KillSchedule::level_at(std::int64_t t) const {
    for (const Epoch& e : epochs)
        if (t >= e.start && (e.end < 0 || t < e.end)) return e.level;
    return 0;
}

KillSchedule build_epoch_schedule(std::int64_t t_mix, double t_hit, int n) {
    if (t_mix < 1 || t_hit < 1.0 || n < 2)
        throw Error("invalid_argument", "epoch schedule needs t_mix >= 1, t_hit >= 1, n >= 2");

    KillSchedule sched;
    // dyadic blocks 1, 2, 4, ... while a full block still leaves particles
    // over; the remainder forms A_m
    sched.block_of.resize(n);
    int remaining = n;
    int block = 0;
    int first = 0;
    while ((std::int64_t{1} << block) < remaining) {
        const int size = 1 << block;
        for (int i = 0; i < size; ++i) sched.block_of[first + i] = block;
        sched.block_size.push_back(size);
        first += size;
        remaining -= size;
        ++block;
    }
    for (int i = 0; i < remaining; ++i) sched.block_of[first + i] = block;
    sched.block_size.push_back(remaining);
    sched.m = block;

    // epoch #infinity, then #m down to #1, then the unbounded epoch #0
    const std::int64_t t_m = 1 + static_cast<std::int64_t>(std::ceil(2.0 * static_cast<double>(t_mix)));
    std::int64_t cursor = t_m;
    sched.epochs.push_back({0, cursor, -1});
    const double ln5 = std::log(5.0);
    for (int j = sched.m; j >= 1; --j) {
        const double scale = 16.0 * ln5 / std::pow(2.0, j);
        const std::int64_t duration = 1 + static_cast<std::int64_t>(std::ceil(scale * t_hit));
        sched.epochs.push_back({cursor, cursor + duration, j});
        cursor += duration;
    }
    sched.epochs.push_back({cursor, -1, 0});
    sched.bounded_horizon = cursor;
    return sched;
}

namespace {

// cumulative kernel rows for inverse-CDF stepping
struct RowSampler {
    std::vector<Vec> cumulative;

    explicit RowSampler(const Chain& c) {
        cumulative.resize(c.n);
        for (int x = 0; x < c.n; ++x) {
            Vec row(c.n);
            double acc = 0.0;
            for (int y = 0; y < c.n; ++y) {
                acc += c.kernel(x, y);
                row[y] = acc;
            }
            row[c.n - 1] = 1.0;  // guard against rounding
            cumulative[x] = std::move(row);
        }
    }

    int step(int from, double u) const {
        const Vec& row = cumulative[from];
        const auto it = std::upper_bound(row.begin(), row.end(), u);
        return static_cast<int>(std::min<std::ptrdiff_t>(it - row.begin(),
                                                         static_cast<std::ptrdiff_t>(row.size()) - 1));
    }
};

struct KilledRun {
    std::int64_t tau_unrestricted = -1;
    std::int64_t tau_restricted = -1;
};

// Shared engine: n walkers from distinct starts, simultaneous moves, kill
// scan after each tick. When a schedule is given, the restricted process is
// driven on the same trajectories; its victims must meet a particle that
// still survives in the unrestricted process and the pair must be allowed.
KilledRun run_killed_process(const Chain& c, const KillSchedule* sched, std::uint64_t seed,
                             std::int64_t cap) {
    const int n = c.n;
    const RowSampler sampler(c);

    std::vector<SplitMix64> streams;
    streams.reserve(n);
    for (int a = 0; a < n; ++a) streams.emplace_back(split_seed(seed, static_cast<std::uint64_t>(a)));

    std::vector<int> pos(n);
    for (int a = 0; a < n; ++a) pos[a] = a;
    std::vector<char> alive_u(n, 1);
    std::vector<char> alive_r(n, sched ? 1 : 0);
    int count_u = n;

    std::vector<int> head(n, -1);  // per-site chain of occupants, index-ordered
    std::vector<int> next_at(n, -1);
    std::vector<int> touched;
    touched.reserve(n);

    KilledRun run;
    if (count_u == 1) run.tau_unrestricted = 0;

    for (std::int64_t t = 1; t <= cap; ++t) {
        // simultaneous moves; dead-in-both particles no longer matter
        touched.clear();
        for (int a = 0; a < n; ++a) {
            if (!alive_u[a] && !(sched && alive_r[a])) continue;
            const int p = sampler.step(pos[a], streams[a].uniform());
            pos[a] = p;
            if (head[p] < 0) touched.push_back(p);
            // append keeping increasing particle order (scan is in order a)
            if (head[p] < 0) {
                head[p] = a;
            } else {
                int q = head[p];
                while (next_at[q] >= 0) q = next_at[q];
                next_at[q] = a;
            }
            next_at[a] = -1;
        }

        // unrestricted: at each site the lowest-index surviving particle kills
        // the rest
        for (const int site : touched) {
            int killer = -1;
            for (int a = head[site]; a >= 0; a = next_at[a]) {
                if (!alive_u[a]) continue;
                if (killer < 0) {
                    killer = a;
                } else {
                    alive_u[a] = 0;
                    --count_u;
                }
            }
        }

        // restricted: victims must share a site with an unrestricted survivor
        // and the ordered pair must be allowed at time t
        if (sched && run.tau_restricted < 0) {
            for (const int site : touched) {
                int survivor_u = -1;
                for (int a = head[site]; a >= 0; a = next_at[a]) {
                    if (alive_u[a]) {
                        survivor_u = a;
                        break;
                    }
                }
                if (survivor_u < 0) continue;
                for (int a = next_at[survivor_u]; a >= 0; a = next_at[a])
                    if (alive_r[a] && sched->allows(survivor_u, a, t)) alive_r[a] = 0;
            }
        }

        if (run.tau_unrestricted < 0 && count_u == 1) run.tau_unrestricted = t;

        if (sched && run.tau_restricted < 0) {
            // restricted coalescence: all surviving particles co-located
            int site = -1;
            bool single = true;
            for (int a = 0; a < n && single; ++a) {
                if (!alive_r[a]) continue;
                if (site < 0)
                    site = pos[a];
                else if (pos[a] != site)
                    single = false;
            }
            if (single) run.tau_restricted = t;
        }

        for (const int site : touched) head[site] = -1;

        const bool done_u = run.tau_unrestricted >= 0;
        const bool done_r = !sched || run.tau_restricted >= 0;
        if (done_u && done_r) return run;
    }

    if (run.tau_unrestricted < 0)
        throw Error("horizon_exceeded",
                    "coalescence did not finish within " + std::to_string(cap) + " steps");
    return run;  // restricted side exceeded the cap; reported as unresolved
}

} // namespace

std::int64_t simulate_coalescence(const Chain& c, std::uint64_t seed, std::int64_t horizon_cap) {
    return run_killed_process(c, nullptr, seed, horizon_cap).tau_unrestricted;
}

CoalescenceEstimate estimate_tcoal(const Chain& c, int replicas, std::uint64_t seed,
                                   std::int64_t horizon_cap) {
    if (replicas < 1) throw Error("invalid_argument", "need at least one replica");

    CoalescenceEstimate est;
    est.replicas = replicas;
    est.seed = seed;

    std::vector<double> samples;
    samples.reserve(replicas);
    for (int r = 0; r < replicas; ++r) {
        try {
            samples.push_back(static_cast<double>(
                simulate_coalescence(c, split_seed(seed, static_cast<std::uint64_t>(r)), horizon_cap)));
        } catch (const Error& e) {
            if (e.code() != "horizon_exceeded") throw;
            ++est.horizon_exceeded_count;
        }
    }
    if (samples.empty()) throw Error("horizon_exceeded", "every replica exceeded the cap");

    double mean = 0.0;
    for (double s : samples) mean += s;
    mean /= static_cast<double>(samples.size());
    est.mean = mean;
    if (samples.size() > 1) {
        double ss = 0.0;
        for (double s : samples) ss += (s - mean) * (s - mean);
        const double var = ss / static_cast<double>(samples.size() - 1);
        est.stderr_ = std::sqrt(var / static_cast<double>(samples.size()));
    } else {
        est.degenerate_sample = true;
    }
    est.t_hit = hitting_times(c).t_hit;
    est.ratio_to_thit = est.mean / est.t_hit;
    return est;
}

CoupledCoalescence simulate_with_allowed_killings(const Chain& c, const KillSchedule& sched,
                                                  std::uint64_t seed, std::int64_t horizon_cap) {
    const KilledRun run = run_killed_process(c, &sched, seed, horizon_cap);
    CoupledCoalescence out;
    out.tau_coal = run.tau_unrestricted;
    if (run.tau_restricted >= 0) {
        out.tau_coal_restricted = run.tau_restricted;
        if (*out.tau_coal_restricted < out.tau_coal)
            throw Error("domination_violated", "restricted process coalesced first");
    }
    return out;
}

} // namespace walklab
