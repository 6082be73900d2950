#pragma once

// non-local Tug-of-War with noise: a fair coin picks which player's direction
// orients the cone, then the position jumps by a mu-distributed increment of
// size >= eps. Episodes stop on leaving the domain and pay F there.

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "fpgame/dpp.hpp"
#include "fpgame/lattice.hpp"
#include "fpgame/measure.hpp"
#include "fpgame/operators.hpp"
#include "fpgame/rng.hpp"

namespace fpgame {

template <std::size_t N>
struct StepRecord {
    Vec<N> position;   // X_n after the move
    Vec<N> increment;  // z_n in cone coordinates (axis e1), |z_n| >= 1
    Vec<N> direction;  // unit direction chosen by the selected player
    int coin = 1;      // 1 selects player I, 2 selects player II
};

template <std::size_t N>
struct Trajectory {
    Vec<N> start{};
    std::vector<StepRecord<N>> steps;
    bool stopped = false;  // left the domain before the step cap
    double payoff = 0.0;
    const Vec<N>& last() const { return steps.empty() ? start : steps.back().position; }
};

// deterministic function of the history; all built-ins are Markovian but the
// interface passes the whole record for the concatenated constructions
template <std::size_t N>
struct Strategy {
    std::string name;
    std::function<Vec<N>(const Trajectory<N>&, const Vec<N>&)> choose;
};

template <std::size_t N>
Strategy<N> constant_strategy(const Vec<N>& dir) {
    const Vec<N> d = normalized(dir);
    return {"const", [d](const Trajectory<N>&, const Vec<N>&) { return d; }};
}

// wraps a state -> unit vector rule (Borel selection is enough, no continuity)
template <std::size_t N>
Strategy<N> pull_strategy(std::function<Vec<N>(const Vec<N>&)> rule, std::string name) {
    return {std::move(name), [rule = std::move(rule)](const Trajectory<N>&, const Vec<N>& x) {
                return rule(x);
            }};
}

template <std::size_t N>
Strategy<N> pull_toward(const Vec<N>& target, std::string name = "pull-toward") {
    return pull_strategy<N>(
        [target](const Vec<N>& x) {
            const Vec<N> d = target - x;
            const double n = norm(d);
            return n > 1e-14 ? (1.0 / n) * d : unit_vec<N>(0);
        },
        std::move(name));
}

template <std::size_t N>
Strategy<N> push_outward(std::string name = "push-outward") {
    return pull_strategy<N>(
        [](const Vec<N>& x) {
            const double n = norm(x);
            return n > 1e-14 ? (1.0 / n) * x : unit_vec<N>(0);
        },
        std::move(name));
}

// picks the sphere-grid direction extremizing the cone average of the given
// field (Markovian). The schedule budget delta/2^{n+1} is recorded for the
// supermartingale diagnostics; the grid argmax is exact so any delta >= 0 is
// honored.
template <std::size_t N, class F>
Strategy<N> greedy_strategy(F field, const Scheme<N>& scheme, double eps, bool maximize,
                            double delta = 1e-3) {
    auto avg = std::make_shared<ConeAverager<N>>(scheme, eps);
    auto sch = std::make_shared<Scheme<N>>(scheme);
    std::string name = maximize ? "greedy-max" : "greedy-min";
    return {std::move(name),
            [avg, sch, field = std::move(field), maximize, delta](const Trajectory<N>&,
                                                                  const Vec<N>& x) {
                (void)delta;
                const auto da = a_epsilon_with(*avg, field, x, *sch);
                return maximize ? da.sup_dir : da.inf_dir;
            }};
}

// one game move; the coin is drawn before the increment so replays are
// bit-exact, and only the selected player's strategy is consulted
template <std::size_t N>
StepRecord<N> step(const Trajectory<N>& history, const Vec<N>& x, const Strategy<N>& sigma_I,
                   const Strategy<N>& sigma_II, Rng& rng, double eps, const ConeSpec& spec,
                   const FractionalKernel& kernel) {
    StepRecord<N> rec;
    rec.coin = rng.coin() ? 1 : 2;
    rec.increment = sample_increment<N>(rng, spec, kernel);
    rec.direction = rec.coin == 1 ? sigma_I.choose(history, x) : sigma_II.choose(history, x);
    rec.position = x + eps * rotation_between<N>(unit_vec<N>(0), rec.direction)
                               .apply(rec.increment);
    return rec;
}

// run to the first exit or the step cap; exterior starts pay F immediately,
// matching the fixed-point equation rather than the >= 1-step game
template <std::size_t N>
Trajectory<N> run_episode(const DirichletProblem<N>& prob, const Vec<N>& x0,
                          const Strategy<N>& sigma_I, const Strategy<N>& sigma_II, Rng& rng,
                          std::size_t max_steps = 1'000'000) {
    Trajectory<N> traj;
    traj.start = x0;
    if (!prob.domain.inside(x0)) {
        traj.stopped = true;
        traj.payoff = prob.datum(x0);
        return traj;
    }
    Vec<N> x = x0;
    for (std::size_t n = 0; n < max_steps; ++n) {
        StepRecord<N> rec =
            step(traj, x, sigma_I, sigma_II, rng, prob.eps, prob.scheme.cone,
                 prob.scheme.kernel);
        x = rec.position;
        traj.steps.push_back(std::move(rec));
        if (!prob.domain.inside(x)) {
            traj.stopped = true;
            break;
        }
    }
    traj.payoff = prob.datum(x);  // at the capped state when not stopped
    return traj;
}

struct ValueEstimate {
    double mean = 0.0;
    double se = 0.0;  // sample std / sqrt(episodes)
    std::size_t episodes = 0;
    double truncation_rate = 0.0;
    double mean_steps = 0.0;
};

// sample mean of payoffs over independently seeded episodes; the reduction
// order is fixed so summaries are bitwise stable
template <std::size_t N>
ValueEstimate estimate_value(const DirichletProblem<N>& prob, const Vec<N>& x0,
                             const Strategy<N>& sigma_I, const Strategy<N>& sigma_II,
                             std::size_t episodes, std::uint64_t seed,
                             std::size_t max_steps = 1'000'000) {
    ValueEstimate est;
    est.episodes = episodes;
    double mean = 0.0, m2 = 0.0, steps = 0.0;
    std::size_t truncated = 0;
    for (std::size_t e = 0; e < episodes; ++e) {
        Rng rng = Rng::stream(seed, e);
        const auto traj = run_episode(prob, x0, sigma_I, sigma_II, rng, max_steps);
        if (!traj.stopped) ++truncated;
        steps += double(traj.steps.size());
        const double d = traj.payoff - mean;
        mean += d / double(e + 1);
        m2 += d * (traj.payoff - mean);
    }
    est.mean = mean;
    est.se = episodes > 1 ? std::sqrt(m2 / double(episodes - 1) / double(episodes)) : 0.0;
    est.truncation_rate = double(truncated) / double(episodes);
    est.mean_steps = steps / double(episodes);
    return est;
}

// ---------------------------------------------------------------------------
// exit-probability experiments

struct ExitVerdict {
    std::string experiment;
    std::string sigma_I;
    std::string sigma_II;
    double bound = 1.0;
    double empirical = 0.0;
    double sigma = 0.0;  // binomial standard error (floored at 1/episodes)
    std::size_t episodes = 0;
    double truncation_rate = 0.0;
    std::string verdict;  // "pass", "fail" or "inconclusive"
};

inline std::string one_sided_verdict(double empirical, double bound, double sigma,
                                     double min_resolution = 0.0) {
    if (sigma > min_resolution && min_resolution > 0.0) return "inconclusive";
    return empirical <= bound + 3.0 * sigma ? "pass" : "fail";
}

// P(event) with a fixed per-episode seed stream
template <std::size_t N, class Event>
ExitVerdict estimate_probability(const DirichletProblem<N>& prob, const Vec<N>& x0,
                                 const Strategy<N>& sigma_I, const Strategy<N>& sigma_II,
                                 std::size_t episodes, std::uint64_t seed, Event&& event,
                                 std::size_t max_steps = 1'000'000) {
    ExitVerdict v;
    v.sigma_I = sigma_I.name;
    v.sigma_II = sigma_II.name;
    v.episodes = episodes;
    std::size_t hits = 0, truncated = 0;
    for (std::size_t e = 0; e < episodes; ++e) {
        Rng rng = Rng::stream(seed, e);
        const auto traj = run_episode(prob, x0, sigma_I, sigma_II, rng, max_steps);
        if (!traj.stopped) ++truncated;
        if (event(traj)) ++hits;
    }
    v.empirical = double(hits) / double(episodes);
    v.sigma = std::max(std::sqrt(v.empirical * (1.0 - v.empirical) / double(episodes)),
                       1.0 / double(episodes));
    v.truncation_rate = double(truncated) / double(episodes);
    return v;
}

// exit bound for the annulus B_R \ B1 with barrier exponent t: starting from
// |x| <= Rtilde, the pull-inward player keeps P(|X_tau| >= R) below this
inline double theta_bound(double t, double Rtilde, double R) {
    const double top = std::exp2(t) - 0.5 * (std::pow(Rtilde, -t) + std::pow(R, -t));
    return top / (std::exp2(t) - std::pow(R, -t));
}

// strategy-free overshoot bound: first exit from B_{delta/k} lands past delta
// with probability at most this
inline double overshoot_bound(double s, double k) { return std::pow(2.0 / (k - 1.0), 2.0 * s); }

// (a) annulus exit: pull-inward sigma_I against each adversary; the bound
// must hold for every adversary since it quantifies over all sigma_II
template <std::size_t N>
std::vector<ExitVerdict> annulus_exit_experiment(const Scheme<N>& scheme, double t,
                                                 double Rtilde, double R, double eps,
                                                 std::size_t episodes, std::uint64_t seed,
                                                 const std::vector<Strategy<N>>& adversaries,
                                                 std::size_t max_steps = 1'000'000) {
    DirichletProblem<N> prob{annulus_domain<N>(1.0, R), radial_power_boundary<N>(t), eps,
                             scheme};
    const Strategy<N> inward = pull_toward<N>(zero_vec<N>(), "pull-inward");
    const Vec<N> x0 = Rtilde * unit_vec<N>(0);
    const double bound = theta_bound(t, Rtilde, R);
    std::vector<ExitVerdict> out;
    for (const auto& adv : adversaries) {
        auto v = estimate_probability(
            prob, x0, inward, adv, episodes, seed,
            [R](const Trajectory<N>& tr) { return norm(tr.last()) >= R; }, max_steps);
        v.experiment = "annulus-exit";
        v.bound = bound;
        v.verdict = v.truncation_rate < 1e-4 ? one_sided_verdict(v.empirical, bound, v.sigma)
                                             : "inconclusive";
        out.push_back(std::move(v));
    }
    return out;
}

// (b) overshoot: free process stopped on leaving B_{delta/k}; every strategy
// pair from the grid must respect the bound
template <std::size_t N>
std::vector<ExitVerdict> overshoot_experiment(const Scheme<N>& scheme, double k, double delta,
                                              double eps, std::size_t episodes,
                                              std::uint64_t seed,
                                              const std::vector<Strategy<N>>& grid,
                                              std::size_t max_steps = 1'000'000) {
    DirichletProblem<N> prob{ball_domain<N>(delta / k), constant_boundary<N>(0.0), eps,
                             scheme};
    const Vec<N> x0 = (0.5 * delta / k) * unit_vec<N>(0);
    const double bound = overshoot_bound(scheme.kernel.order, k);
    std::vector<ExitVerdict> out;
    for (const auto& sI : grid)
        for (const auto& sII : grid) {
            auto v = estimate_probability(
                prob, x0, sI, sII, episodes, seed,
                [delta](const Trajectory<N>& tr) { return norm(tr.last()) >= delta; },
                max_steps);
            v.experiment = "overshoot";
            v.bound = bound;
            v.verdict = v.truncation_rate < 1e-4
                            ? one_sided_verdict(v.empirical, bound, v.sigma)
                            : "inconclusive";
            out.push_back(std::move(v));
        }
    return out;
}

// ---------------------------------------------------------------------------
// concatenated strategy for the external-cone construction: stage i pulls
// toward an exterior ball center until the trajectory first leaves the stage
// radius around the apex, then hands over to the next coarser stage; an
// overshoot past hold_factor times the stage radius freezes the current stage

template <std::size_t N>
struct NotchStage {
    double radius = 0.0;  // crossing threshold delta_i, measured from the apex
    Vec<N> pull_center{};  // exterior ball center the stage pulls toward
};

struct SwitchEvent {
    std::size_t step = 0;
    int from_stage = 0;
    int to_stage = 0;  // -1 marks the terminal crossing past the outermost radius
};

template <std::size_t N>
struct CompositeLog {
    std::vector<SwitchEvent> events;
    std::size_t seen = 0;  // steps processed, resets on a fresh episode
    int stage = 0;         // index into stages, innermost first
    bool frozen = false;
};

// stages ordered innermost (smallest radius) first
template <std::size_t N>
Strategy<N> composite_notch_strategy(const Vec<N>& apex, std::vector<NotchStage<N>> stages,
                                     double hold_factor,
                                     std::shared_ptr<CompositeLog<N>> log) {
    if (stages.empty()) throw std::invalid_argument("composite_notch_strategy: no stages");
    return {"composite-notch",
            [apex, stages = std::move(stages), hold_factor, log](const Trajectory<N>& traj,
                                                                 const Vec<N>&) {
                if (traj.steps.size() < log->seen) {  // new episode
                    log->events.clear();
                    log->seen = 0;
                    log->stage = 0;
                    log->frozen = false;
                }
                for (; log->seen < traj.steps.size(); ++log->seen) {
                    if (log->frozen) continue;
                    const std::size_t i = log->seen;
                    const double d = norm(traj.steps[i].position - apex);
                    while (!log->frozen && log->stage < int(stages.size()) &&
                           d >= stages[std::size_t(log->stage)].radius) {
                        const int from = log->stage;
                        if (d >= hold_factor * stages[std::size_t(from)].radius) {
                            log->frozen = true;
                            log->events.push_back({i + 1, from, from});
                        } else {
                            ++log->stage;
                            const int to = log->stage < int(stages.size()) ? log->stage : -1;
                            log->events.push_back({i + 1, from, to});
                            if (to == -1) log->frozen = true;
                        }
                    }
                }
                const auto& st =
                    stages[std::size_t(std::min(log->stage, int(stages.size()) - 1))];
                const Vec<N> d = st.pull_center - traj.last();
                const double n = norm(d);
                return n > 1e-14 ? (1.0 / n) * d : unit_vec<N>(0);
            }};
}

template <std::size_t N>
struct NotchExperimentResult {
    std::vector<ExitVerdict> verdicts;
    std::vector<NotchStage<N>> stages;
    double theta_bar = 1.0;   // single-stage bound
    double staged_bound = 1.0;  // (theta_bar + a_k)^m from the concatenation
    double mean_switches = 0.0;
};

// (c) ball with an exterior cone notch at the apex: the staged strategy keeps
// trajectories near the apex until exit. The verdict compares against the
// single-stage theta bound; the concatenated product is reported alongside.
template <std::size_t N>
NotchExperimentResult<N> notch_exit_experiment(const Scheme<N>& scheme, double t,
                                               double notch_angle, double delta, double k,
                                               std::size_t m_stages, double eps,
                                               std::size_t episodes, std::uint64_t seed,
                                               const std::vector<Strategy<N>>& adversaries,
                                               std::size_t max_steps = 1'000'000) {
    const Domain<N> dom = notched_ball_domain<N>(1.0, notch_angle);
    const Vec<N> apex = unit_vec<N>(0);
    const Vec<N> axis = -1.0 * unit_vec<N>(0);  // into the notch, toward the center

    // exterior-cone geometry: exterior balls of radius r sit at distance r*d
    // from the apex along the axis; crossing radii shrink by the recursion
    const double d_geo = 1.0 / std::sin(notch_angle);
    const double R_geo = 2.0 * d_geo - 1.0;
    const double shrink = R_geo * R_geo + 0.5 * (R_geo + 1.0);

    NotchExperimentResult<N> res;
    res.theta_bar = theta_bound(t, R_geo, R_geo * R_geo);
    res.staged_bound = std::pow(
        std::min(1.0, res.theta_bar + overshoot_bound(scheme.kernel.order, k)),
        double(m_stages));

    double delta_i = delta / k;
    for (std::size_t i = 0; i < m_stages; ++i) {
        const double r_i = delta_i / shrink;
        res.stages.push_back({delta_i, apex + (r_i * d_geo) * axis});
        delta_i = r_i * d_geo / k;
    }
    std::reverse(res.stages.begin(), res.stages.end());  // innermost first

    // start inside D near the apex: aim between the notch cone and the sphere
    const double mid = 0.5 * (notch_angle + 0.5 * pi);
    Vec<N> slant = std::cos(mid) * axis;
    slant[1] += std::sin(mid);
    const Vec<N> x0 = apex + (0.5 * res.stages.front().radius) * normalized(slant);
    auto log = std::make_shared<CompositeLog<N>>();
    const Strategy<N> composite =
        composite_notch_strategy<N>(apex, res.stages, double(k), log);
    DirichletProblem<N> prob{dom, harmonic_tail_boundary<N>(), eps, scheme};

    for (const auto& adv : adversaries) {
        std::size_t hits = 0, truncated = 0, switches = 0;
        for (std::size_t e = 0; e < episodes; ++e) {
            *log = CompositeLog<N>{};  // hard reset: an episode may never consult sigma_I
            Rng rng = Rng::stream(seed, e);
            const auto traj = run_episode(prob, x0, composite, adv, rng, max_steps);
            if (!traj.stopped) ++truncated;
            switches += log->events.size();
            bool left = false;  // any position strictly before exit outside B_delta(apex)
            for (std::size_t n = 0; n + 1 < traj.steps.size(); ++n)
                if (norm(traj.steps[n].position - apex) >= delta) left = true;
            if (left) ++hits;
        }
        ExitVerdict v;
        v.experiment = "notch-exit";
        v.sigma_I = composite.name;
        v.sigma_II = adv.name;
        v.bound = res.theta_bar;
        v.episodes = episodes;
        v.empirical = double(hits) / double(episodes);
        v.sigma = std::max(std::sqrt(v.empirical * (1.0 - v.empirical) / double(episodes)),
                           1.0 / double(episodes));
        v.truncation_rate = double(truncated) / double(episodes);
        v.verdict = v.truncation_rate < 1e-4
                        ? one_sided_verdict(v.empirical, v.bound, v.sigma)
                        : "inconclusive";
        res.verdicts.push_back(std::move(v));
        res.mean_switches += double(switches) / double(episodes * adversaries.size());
    }
    return res;
}

// default adversary set for the bound experiments: the quantifier over all
// sigma_II cannot be enumerated, so the suite documents exactly these
template <std::size_t N>
std::vector<Strategy<N>> adversarial_grid() {
    std::vector<Strategy<N>> g;
    g.push_back(push_outward<N>());
    auto c1 = constant_strategy<N>(unit_vec<N>(0));
    c1.name = "const+e1";
    g.push_back(std::move(c1));
    auto c2 = constant_strategy<N>(-1.0 * unit_vec<N>(0));
    c2.name = "const-e1";
    g.push_back(std::move(c2));
    return g;
}

}  // namespace fpgame
