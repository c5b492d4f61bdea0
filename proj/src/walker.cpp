#include "hetdiff/walker.hpp"

#include "hetdiff/parallel.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace hetdiff {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

/// Counter-based per-particle stream: the (seed, index) pair is
/// avalanched into a starting state, then advanced by the golden-ratio
/// increment per draw.
struct Stream {
    std::uint64_t state;

    Stream(std::uint64_t seed, std::uint64_t index)
        : state(mix64(seed + kGolden * (index + 1))) {}

    std::uint64_t next() {
        state += kGolden;
        return mix64(state);
    }

    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

/// Inverse-CDF sampler over a tabulated nonnegative profile.
struct ProfileSampler {
    std::vector<double> xs;
    std::vector<double> cdf;
    double mass = 0.0;

    void build(const std::function<double(double)>& f, double lo, double hi, std::size_t n) {
        xs.resize(n + 1);
        cdf.assign(n + 1, 0.0);
        const double h = (hi - lo) / static_cast<double>(n);
        double prev = f(lo);
        if (prev < 0.0) {
            throw std::domain_error("density data must be nonnegative");
        }
        xs[0] = lo;
        for (std::size_t i = 1; i <= n; ++i) {
            xs[i] = lo + static_cast<double>(i) * h;
            const double cur = f(xs[i]);
            if (cur < 0.0) {
                throw std::domain_error("density data must be nonnegative");
            }
            cdf[i] = cdf[i - 1] + 0.5 * (prev + cur) * h;
            prev = cur;
        }
        mass = cdf.back();
        if (!(mass > 0.0)) {
            throw std::domain_error("initial data carries no mass to sample");
        }
    }

    double sample(double u) const {
        const double target = u * mass;
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), target);
        const std::size_t hi = std::min<std::size_t>(cdf.size() - 1,
                                                     static_cast<std::size_t>(it - cdf.begin()));
        const std::size_t lo = hi - 1;
        const double span = cdf[hi] - cdf[lo];
        const double frac = span > 0.0 ? (target - cdf[lo]) / span : 0.5;
        return xs[lo] + frac * (xs[hi] - xs[lo]);
    }
};

} // namespace

WalkRule walk_rule_from_params(const ModelParams& params, double delta) {
    if (!(delta > 0.0)) {
        throw std::domain_error("walk scale delta must be positive");
    }
    WalkRule rule;
    rule.delta = delta;
    rule.eta = std::pow(params.eps(), 1.0 - params.q());
    rule.zeta = params.sigma();
    return rule;
}

Ensemble simulate(const WalkRule& rule, const InitialData& init, std::size_t n_particles,
                  double T, std::uint64_t seed) {
    if (n_particles == 0) {
        throw std::domain_error("need at least one particle");
    }
    if (!(T > 0.0)) {
        throw std::domain_error("horizon must be positive");
    }
    if (!(rule.delta > 0.0 && rule.eta > 0.0 && rule.zeta > 0.0)) {
        throw std::domain_error("walk rule parameters must be positive");
    }
    const double soj_r = 0.5 * rule.delta * rule.delta;
    const double soj_l = 0.5 * rule.zeta * rule.delta * rule.delta;
    if (!(std::min(soj_l, soj_r) < T)) {
        throw std::domain_error("delta too large: no sojourn fits inside the horizon");
    }
    const double jump_r = rule.delta;
    const double jump_l = rule.eta * rule.delta;

    // Initial-position sampling: Dirac needs no draws; Step and Sampled
    // consume a fixed number of uniforms per particle before the
    // direction bits, from profiles truncated far enough that the cut
    // cannot influence the interface region within the horizon.
    const double span_r = 8.0 * std::sqrt(2.0 * T) + 4.0 * rule.delta;
    const double span_l =
        8.0 * std::sqrt(2.0 * rule.diffusivity_left() * T) + 4.0 * jump_l;

    double dirac_x0 = 0.0;
    double step_right = 0.0;
    double step_left = 0.0;
    ProfileSampler sampler;
    double mass = 1.0;
    enum class Kind { dirac, step, sampled } kind;
    if (const auto* d = std::get_if<DiracInit>(&init)) {
        if (!(d->x0 > 0.0)) {
            throw std::domain_error("point mass location must be positive");
        }
        dirac_x0 = d->x0;
        kind = Kind::dirac;
    } else if (const auto* st = std::get_if<StepInit>(&init)) {
        if (st->a < 0.0 || st->b < 0.0 || !(st->a + st->b > 0.0)) {
            throw std::domain_error("step data must be nonnegative with positive total mass");
        }
        step_right = st->a * span_r;
        step_left = st->b * span_l;
        mass = step_right + step_left;
        kind = Kind::step;
    } else {
        const auto& phi = std::get<SampledInit>(init).phi;
        // widen the cut until the profile is negligible there, so decaying
        // data keeps essentially all of its mass; data without outward
        // decay stops at the extension cap
        double lo = -span_l;
        double hi = span_r;
        double peak = 0.0;
        const auto scan = [&phi, &peak](double a, double b) {
            for (int i = 0; i <= 64; ++i) {
                peak = std::max(peak, phi(a + (b - a) * static_cast<double>(i) / 64.0));
            }
        };
        scan(lo, hi);
        for (int round = 0; round < 8 && phi(hi) > 1e-9 * peak; ++round) {
            const double prev = hi;
            hi *= 1.5;
            scan(prev, hi);
        }
        for (int round = 0; round < 8 && phi(lo) > 1e-9 * peak; ++round) {
            const double prev = lo;
            lo *= 1.5;
            scan(lo, prev);
        }
        sampler.build(phi, lo, hi, 8192);
        mass = sampler.mass;
        kind = Kind::sampled;
    }

    Ensemble ens;
    ens.positions.resize(n_particles);
    ens.clocks.resize(n_particles);
    ens.seed = seed;
    ens.horizon = T;
    ens.mass = mass;

    const bool homogeneous = rule.eta == 1.0 && rule.zeta == 1.0;
    std::size_t homogeneous_steps = 0;
    double homogeneous_clock = 0.0;
    if (homogeneous) {
        while (homogeneous_clock + soj_r <= T) {
            homogeneous_clock += soj_r;
            ++homogeneous_steps;
        }
    }

    parallel_for(n_particles, [&](std::size_t p) {
        Stream rng(seed, p);
        double x0 = dirac_x0;
        if (kind == Kind::step) {
            const double side = rng.uniform() * mass;
            const double u = rng.uniform();
            x0 = side < step_right ? u * span_r : -u * span_l;
        } else if (kind == Kind::sampled) {
            x0 = sampler.sample(rng.uniform());
        }

        long long a = 0;
        long long b = 0;
        double clock = 0.0;
        if (homogeneous) {
            std::size_t remaining = homogeneous_steps;
            long long net = 0;
            while (remaining >= 64) {
                net += 2 * std::popcount(rng.next()) - 64;
                remaining -= 64;
            }
            if (remaining > 0) {
                const std::uint64_t word = rng.next() & ((1ULL << remaining) - 1ULL);
                net += 2 * std::popcount(word) - static_cast<long long>(remaining);
            }
            a = net;
            clock = homogeneous_clock;
        } else {
            const double band = rule.interface_band();
            std::uint64_t word = 0;
            int nbits = 0;
            for (;;) {
                const double x =
                    x0 + jump_r * static_cast<double>(a) + jump_l * static_cast<double>(b);
                const bool left = x < -band;
                const double s = left ? soj_l : soj_r;
                if (clock + s > T) {
                    break;
                }
                clock += s;
                if (nbits == 0) {
                    word = rng.next();
                    nbits = 64;
                }
                const bool up = (word & 1ULL) != 0;
                word >>= 1;
                --nbits;
                if (left) {
                    b += up ? 1 : -1;
                } else if (x <= band) {
                    // interface point: the up-jump follows the right branch,
                    // the down-jump the left branch
                    if (up) {
                        a += 1;
                    } else {
                        b -= 1;
                    }
                } else {
                    a += up ? 1 : -1;
                }
            }
        }
        double pos =
            x0 + jump_r * static_cast<double>(a) + jump_l * static_cast<double>(b);
        // report interface-band positions as the interface point itself,
        // stripping the rounding dither of commensurate lattices
        if (pos >= -rule.interface_band() && pos <= rule.interface_band()) {
            pos = 0.0;
        }
        ens.positions[p] = pos;
        ens.clocks[p] = clock;
    });
    return ens;
}

DensityEstimate density(const Ensemble& ens, const std::vector<double>& edges) {
    if (ens.positions.empty()) {
        throw std::domain_error("ensemble is empty");
    }
    if (edges.size() < 2) {
        throw std::domain_error("need at least one bin");
    }
    for (std::size_t i = 1; i < edges.size(); ++i) {
        if (!(edges[i] > edges[i - 1])) {
            throw std::domain_error("bin edges must be strictly increasing");
        }
    }
    std::vector<std::size_t> counts(edges.size() - 1, 0);
    for (double x : ens.positions) {
        if (x < edges.front() || x > edges.back()) {
            continue;
        }
        std::size_t idx;
        if (x == edges.back()) {
            idx = counts.size() - 1;
        } else {
            idx = static_cast<std::size_t>(std::upper_bound(edges.begin(), edges.end(), x) -
                                           edges.begin()) -
                  1;
        }
        ++counts[idx];
    }
    DensityEstimate out;
    out.edges = edges;
    out.values.resize(counts.size());
    const double n = static_cast<double>(ens.positions.size());
    for (std::size_t i = 0; i < counts.size(); ++i) {
        const double w = edges[i + 1] - edges[i];
        out.values[i] = static_cast<double>(counts[i]) * ens.mass / (n * w);
    }
    out.horizon = ens.horizon;
    return out;
}

std::vector<double> uniform_bins(double lo, double hi, std::size_t n) {
    if (n == 0 || !(hi > lo)) {
        throw std::domain_error("bins need a positive count and a nonempty range");
    }
    std::vector<double> edges(n + 1);
    const double h = (hi - lo) / static_cast<double>(n);
    for (std::size_t i = 0; i <= n; ++i) {
        edges[i] = lo + static_cast<double>(i) * h;
    }
    edges.back() = hi;
    return edges;
}

double left_mass_fraction(const Ensemble& ens) {
    if (ens.positions.empty()) {
        throw std::domain_error("ensemble is empty");
    }
    std::size_t count = 0;
    for (double x : ens.positions) {
        if (x < 0.0) {
            ++count;
        }
    }
    return static_cast<double>(count) / static_cast<double>(ens.positions.size());
}

} // namespace hetdiff
