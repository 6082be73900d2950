#pragma once

// monotone fixed-point solver for the eps-Dirichlet problem
//   u = 1_D A_eps u + 1_{D^c} F
// on a uniform lattice. The averaging operator is precomputed as one stencil
// per (interior point, direction): quadrature nodes landing in D contribute
// multilinear interpolation weights, all other nodes are folded into a fixed
// scalar computed from F once. Weights are positive and sum to one exactly
// (float rounding is absorbed into the exterior part), so the discrete
// operator inherits order preservation and the maximum principle verbatim.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "fpgame/lattice.hpp"
#include "fpgame/operators.hpp"

namespace fpgame {

template <std::size_t N>
struct DirichletProblem {
    Domain<N> domain;
    BoundaryDatum<N> datum;
    double eps = 0.0625;
    Scheme<N> scheme;
};

// lighter quadrature than the analysis default: the solver applies the rule
// millions of times and its certificates (monotonicity, contraction, maximum
// principle) hold for any fixed positive rule. far_radius must stay >= the
// domain diameter so that every panel past it carries exactly the mass the
// contraction bound counts on.
template <std::size_t N>
Scheme<N> make_solver_scheme(double p, double s, int grid_size = 16, int panel_order = 3,
                             int polar_order = 3, double far_radius = 8.0) {
    Scheme<N> sch;
    sch.cone = calibrate_cone(int(N), p);
    sch.kernel = make_kernel(int(N), s);
    sch.grid = direction_grid<N>(grid_size);
    sch.panel_order = panel_order;
    sch.polar_order = polar_order;
    sch.azimuth_order = polar_order;
    sch.far_radius = far_radius;
    return sch;
}

// the discrete averaging operator S on a concrete lattice
template <std::size_t N>
class DppLattice {
  public:
    DppLattice(const DirichletProblem<N>& prob, double h)
        : prob_(prob), grid_(make_lattice<N>(prob.domain.lo, prob.domain.hi, h)) {
        if (!(h <= prob.eps / 4.0 + 1e-12))
            throw std::invalid_argument("DppLattice: need h <= eps/4 to resolve jumps");
        if (prob_.scheme.far_radius < prob.domain.diameter)
            throw std::invalid_argument("DppLattice: far_radius below the domain diameter");
        build();
    }

    const Lattice<N>& grid() const { return grid_; }
    const std::vector<std::uint32_t>& interior() const { return interior_; }

    // full-lattice vector with the datum at every node (the iteration seed
    // overwrites interior entries)
    std::vector<double> datum_values() const {
        std::vector<double> v(grid_.size());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = prob_.datum(grid_.point(i));
        return v;
    }

    struct SweepStats {
        double change = 0.0;     // sup |delta| over interior nodes
        double min_delta = 0.0;  // most negative pointwise update
        double max_delta = 0.0;
        void record(double delta) {
            change = std::max(change, std::abs(delta));
            min_delta = std::min(min_delta, delta);
            max_delta = std::max(max_delta, delta);
        }
    };

    // one Jacobi sweep: out = S u on interior nodes (exterior copied through)
    SweepStats apply(const std::vector<double>& u, std::vector<double>& out) const {
        out = u;
        SweepStats st;
        for (std::size_t ii = 0; ii < interior_.size(); ++ii) {
            const std::uint32_t i = interior_[ii];
            const double v = row_value(ii, u.data());
            st.record(v - u[i]);
            out[i] = v;
        }
        return st;
    }

    // in-place sweep in lattice order: same fixed point and the same sup-norm
    // contraction certificate (each output is a convex combination with at
    // least the exterior mass on fixed values), usually fewer sweeps
    SweepStats apply_inplace(std::vector<double>& u) const {
        SweepStats st;
        for (std::size_t ii = 0; ii < interior_.size(); ++ii) {
            const std::uint32_t i = interior_[ii];
            const double v = row_value(ii, u.data());
            st.record(v - u[i]);
            u[i] = v;
        }
        return st;
    }

    const DirichletProblem<N>& problem() const { return prob_; }

  private:
    static constexpr std::size_t corners = 1u << N;
    struct Entry {
        std::int32_t base;
        float c[corners];
    };

    // A_eps value at interior slot ii given full-lattice values u
    double row_value(std::size_t ii, const double* u) const {
        const std::size_t M = prob_.scheme.grid.size();
        double best = -std::numeric_limits<double>::infinity();
        double worst = std::numeric_limits<double>::infinity();
        const std::size_t slot0 = ii * M;
        for (std::size_t d = 0; d < M; ++d) {
            double acc = ext_[slot0 + d];
            const std::size_t e1 = offsets_[slot0 + d + 1];
            for (std::size_t e = offsets_[slot0 + d]; e < e1; ++e) {
                const Entry& en = entries_[e];
                const double* ub = u + en.base;
                double a = 0.0;
                for (std::size_t m = 0; m < corners; ++m)
                    a += double(en.c[m]) * ub[corner_off_[m]];
                acc += a;
            }
            best = std::max(best, acc);
            worst = std::min(worst, acc);
        }
        return 0.5 * (best + worst);
    }

    void build() {
        for (std::size_t i = 0, n = grid_.size(); i < n; ++i)
            if (prob_.domain.inside(grid_.point(i)))
                interior_.push_back(std::uint32_t(i));

        const ConeQuadrature<N> rule = prob_.scheme.far_rule(prob_.eps);
        const double mass = rule.total_weight();
        const std::size_t M = prob_.scheme.grid.size();
        const std::size_t K = rule.nodes.size();

        // per-direction rotated node offsets, flattened
        std::vector<Vec<N>> off(M * K);
        for (std::size_t d = 0; d < M; ++d) {
            const auto rot = rotation_between<N>(unit_vec<N>(0), prob_.scheme.grid[d]);
            for (std::size_t k = 0; k < K; ++k) off[d * K + k] = rot.apply(rule.nodes[k]);
        }

        corner_off_ = grid_.corner_offsets();
        offsets_.assign(interior_.size() * M + 1, 0);
        ext_.assign(interior_.size() * M, 0.0);

        // pass 1: count nodes landing in D
        for (std::size_t ii = 0; ii < interior_.size(); ++ii) {
            const Vec<N> x = grid_.point(interior_[ii]);
            for (std::size_t d = 0; d < M; ++d) {
                std::size_t cnt = 0;
                for (std::size_t k = 0; k < K; ++k)
                    if (prob_.domain.inside(x + off[d * K + k])) ++cnt;
                offsets_[ii * M + d + 1] = cnt;
            }
        }
        for (std::size_t s = 1; s < offsets_.size(); ++s) offsets_[s] += offsets_[s - 1];
        entries_.resize(offsets_.back());

        // pass 2: fill interpolation entries and fold everything else into a
        // scalar; rescale that scalar so each (point, direction) row sums to
        // one exactly despite the float weights
        std::array<double, corners> bw;
        for (std::size_t ii = 0; ii < interior_.size(); ++ii) {
            const Vec<N> x = grid_.point(interior_[ii]);
            for (std::size_t d = 0; d < M; ++d) {
                const std::size_t slot = ii * M + d;
                std::size_t e = offsets_[slot];
                double ext_raw = 0.0, ext_w = 0.0, float_sum = 0.0;
                for (std::size_t k = 0; k < K; ++k) {
                    const Vec<N> y = x + off[d * K + k];
                    const double w = rule.weights[k] / mass;
                    if (prob_.domain.inside(y)) {
                        Entry& en = entries_[e++];
                        std::size_t base;
                        grid_.cell(y, base, bw);
                        en.base = std::int32_t(base);
                        for (std::size_t m = 0; m < corners; ++m) {
                            en.c[m] = float(w * bw[m]);
                            float_sum += double(en.c[m]);
                        }
                    } else {
                        ext_raw += w * prob_.datum(y);
                        ext_w += w;
                    }
                }
                if (ext_w <= 0.0)
                    throw std::logic_error("DppLattice: row without exterior mass");
                ext_[slot] = ext_raw / ext_w * (1.0 - float_sum);
            }
        }
    }

    DirichletProblem<N> prob_;
    Lattice<N> grid_;
    std::vector<std::uint32_t> interior_;
    std::vector<std::size_t> offsets_;
    std::vector<Entry> entries_;
    std::vector<double> ext_;
    std::array<std::size_t, corners> corner_off_{};
};

template <std::size_t N>
struct DppSolution {
    Lattice<N> grid;
    std::vector<double> values;  // full lattice, exterior nodes carry the datum
    std::vector<std::uint32_t> interior;
    std::function<bool(const Vec<N>&)> inside;
    std::function<double(const Vec<N>&)> datum;

    double residual = 0.0;
    double q = 0.0;
    double stop_threshold = 0.0;
    double contraction_estimate = 0.0;
    std::size_t iterations = 0;
    std::size_t geometric_bound = 0;
    bool converged = false;
    bool monotone_nondecreasing = true;
    bool monotone_nonincreasing = true;

    // u inside D by interpolation, F outside
    double value_at(const Vec<N>& x) const {
        if (!inside(x)) return datum(x);
        std::size_t base;
        std::array<double, (1u << N)> w;
        grid.cell(x, base, w);
        const auto off = grid.corner_offsets();
        double v = 0.0;
        for (std::size_t m = 0; m < (1u << N); ++m) v += w[m] * values[base + off[m]];
        return v;
    }

    double min_interior() const {
        double v = std::numeric_limits<double>::infinity();
        for (auto i : interior) v = std::min(v, values[i]);
        return v;
    }
    double max_interior() const {
        double v = -std::numeric_limits<double>::infinity();
        for (auto i : interior) v = std::max(v, values[i]);
        return v;
    }
};

struct SolveOptions {
    double tol = -1.0;         // < 0 means 1e-6 * osc F
    std::size_t max_iter = 0;  // 0 means geometric bound + 64
    bool start_from_sup = false;
    bool in_place = false;  // lattice-order in-place sweeps instead of Jacobi
    const std::vector<double>* warm_start = nullptr;  // full-lattice seed
};

// iterate v <- S v from a constant start (inf F by default, sup F for the
// uniqueness probe) until the sup-change drops below tol (1-q)/q, which
// certifies a true error below tol by the geometric tail sum
template <std::size_t N>
DppSolution<N> solve_dpp(const DppLattice<N>& op, const SolveOptions& opt) {
    const DirichletProblem<N>& prob = op.problem();
    const double s = prob.scheme.kernel.order;
    const double osc = prob.datum.osc();
    const double tol = opt.tol < 0.0 ? 1e-6 * osc : opt.tol;

    DppSolution<N> sol;
    sol.grid = op.grid();
    sol.interior = op.interior();
    sol.inside = prob.domain.inside;
    sol.datum = prob.datum.eval;
    sol.q = 1.0 - std::pow(prob.eps / prob.domain.diameter, 2.0 * s);
    // floor at the float-weight noise level so constant data stop immediately
    const double scale = std::max({1.0, std::abs(prob.datum.lo), std::abs(prob.datum.hi)});
    sol.stop_threshold = std::max(tol * (1.0 - sol.q) / sol.q, 0x1p-46 * scale);
    sol.geometric_bound =
        osc > 0.0 && sol.stop_threshold < osc
            ? std::size_t(std::ceil(std::log(sol.stop_threshold / osc) / std::log(sol.q))) + 1
            : 1;
    const std::size_t max_iter = opt.max_iter ? opt.max_iter : sol.geometric_bound + 64;

    std::vector<double> u = op.datum_values();
    if (opt.warm_start) {
        if (opt.warm_start->size() != u.size())
            throw std::invalid_argument("solve_dpp: warm start size mismatch");
        u = *opt.warm_start;
    } else {
        const double start = opt.start_from_sup ? prob.datum.hi : prob.datum.lo;
        for (auto i : sol.interior) u[i] = start;
    }

    std::vector<double> next;
    const double mono_tol = 1e-12 * scale;
    double prev_change = -1.0;
    while (sol.iterations < max_iter) {
        typename DppLattice<N>::SweepStats st;
        if (opt.in_place) {
            st = op.apply_inplace(u);
        } else {
            st = op.apply(u, next);
            u.swap(next);
        }
        ++sol.iterations;
        if (st.min_delta < -mono_tol) sol.monotone_nondecreasing = false;
        if (st.max_delta > mono_tol) sol.monotone_nonincreasing = false;
        if (sol.iterations > 5 && prev_change > 0.0)
            sol.contraction_estimate =
                std::max(sol.contraction_estimate, st.change / prev_change);
        prev_change = st.change;
        if (st.change <= sol.stop_threshold) {
            sol.converged = true;
            break;
        }
    }
    sol.residual = op.apply(u, next).change;  // ||u - S u|| for the returned iterate
    sol.values = std::move(u);
    return sol;
}

template <std::size_t N>
DppSolution<N> solve_dpp(const DppLattice<N>& op, double tol = -1.0, std::size_t max_iter = 0,
                         bool start_from_sup = false) {
    SolveOptions opt;
    opt.tol = tol;
    opt.max_iter = max_iter;
    opt.start_from_sup = start_from_sup;
    return solve_dpp(op, opt);
}

template <std::size_t N>
DppSolution<N> solve_dpp(const DirichletProblem<N>& prob, double h, double tol = -1.0,
                         std::size_t max_iter = 0, bool start_from_sup = false) {
    return solve_dpp(DppLattice<N>(prob, h), tol, max_iter, start_from_sup);
}

// reference form of S for property tests: evaluates the cone averages of an
// arbitrary globally defined field at every interior node (slow path)
template <std::size_t N, class F>
LatticeField<N> apply_S(const DirichletProblem<N>& prob, F&& field, double h) {
    const Lattice<N> grid = make_lattice<N>(prob.domain.lo, prob.domain.hi, h);
    auto mixed = [&](const Vec<N>& y) {
        return prob.domain.inside(y) ? field(y) : prob.datum(y);
    };
    LatticeField<N> out{grid, std::vector<double>(grid.size())};
    const ConeAverager<N> avg(prob.scheme, prob.eps);
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        const Vec<N> x = grid.point(i);
        out.values[i] = prob.domain.inside(x)
                            ? a_epsilon_with(avg, mixed, x, prob.scheme).value
                            : prob.datum(x);
    }
    return out;
}

// solutions for ordered data stay ordered
template <std::size_t N>
bool monotonicity_check(const DirichletProblem<N>& prob, const BoundaryDatum<N>& datum_above,
                        double h, double tol) {
    DirichletProblem<N> above = prob;
    above.datum = datum_above;
    const auto lo = solve_dpp(prob, h);
    const auto hi = solve_dpp(above, h);
    for (std::size_t k = 0; k < lo.interior.size(); ++k) {
        const auto i = lo.interior[k];
        if (lo.values[i] > hi.values[i] + tol) return false;
    }
    return true;
}

struct ConvergenceRow {
    double eps_coarse = 0.0;
    double eps_fine = 0.0;
    double sup_diff = 0.0;
    std::size_t iterations = 0;  // of the finer solve
    double residual = 0.0;
};

// solve along an eps ladder at h = eps/4 and measure sup distances between
// consecutive solutions on the shared (coarser) interior nodes. The verdict
// is the Cauchy trend only; no limit value is asserted.
template <std::size_t N>
std::vector<ConvergenceRow> convergence_study(const Domain<N>& domain,
                                              const BoundaryDatum<N>& datum,
                                              const Scheme<N>& scheme,
                                              const std::vector<double>& eps_list,
                                              double tol_factor = 1e-4) {
    std::vector<ConvergenceRow> rows;
    DppSolution<N> prev;
    double prev_eps = 0.0;
    bool have_prev = false;
    for (double eps : eps_list) {
        DirichletProblem<N> prob{domain, datum, eps, scheme};
        const DppLattice<N> op(prob, eps / 4.0);
        SolveOptions opt;
        opt.tol = tol_factor * datum.osc();
        opt.in_place = true;  // the study needs the fixed point, not the
                              // monotone Jacobi trajectory
        std::vector<double> seed;
        if (have_prev) {
            seed = op.datum_values();
            for (auto i : op.interior()) seed[i] = prev.value_at(op.grid().point(i));
            opt.warm_start = &seed;
        }
        const auto sol = solve_dpp(op, opt);
        if (have_prev) {
            ConvergenceRow row;
            row.eps_coarse = prev_eps;
            row.eps_fine = eps;
            row.iterations = sol.iterations;
            row.residual = sol.residual;
            // compare on the coarser solution's interior nodes; both lattices
            // tile the same box so the nodes are shared when spacings nest
            for (auto i : prev.interior) {
                const Vec<N> x = prev.grid.point(i);
                row.sup_diff = std::max(row.sup_diff,
                                        std::abs(prev.values[i] - sol.value_at(x)));
            }
            rows.push_back(row);
        }
        prev = sol;
        prev_eps = eps;
        have_prev = true;
    }
    return rows;
}

}  // namespace fpgame
