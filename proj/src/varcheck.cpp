#include "amenent/varcheck.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "amenent/inequality.hpp" // splitmix64

namespace amenent {

InvariantPolytope build_polytope(const SystemSpec& system, std::uint64_t cap) {
    if (!system.group().effective_is_finite())
        throw PreconditionError("the invariant polytope requires a finite effective group");
    FiniteSubset sites = full_effective_group(system.group());
    double space = std::pow(static_cast<double>(system.alphabet_size()),
                            static_cast<double>(sites.size()));
    if (space > static_cast<double>(cap))
        throw CapExceededError("configuration space exceeds the polytope cap");
    InvariantPolytope out;
    out.orbits = config_orbits(system);
    out.group_order = system.group().effective_order();
    out.config_count = 1;
    for (std::size_t i = 0; i < sites.size(); ++i)
        out.config_count *= static_cast<std::size_t>(system.alphabet_size());
    return out;
}

namespace {

// mu(cell_i) = sum_o coeff[i][o] * r_o, with r the orbit masses.
struct Objective {
    std::vector<std::vector<double>> p_coeff;
    std::vector<std::vector<double>> q_coeff;
    std::size_t orbit_count = 0;
    double group_order = 1.0;

    double cell_sum(const std::vector<std::vector<double>>& coeff,
                    const std::vector<double>& r, std::vector<double>& cells) const {
        cells.assign(coeff.size(), 0.0);
        double h = 0.0;
        for (std::size_t i = 0; i < coeff.size(); ++i) {
            double v = 0.0;
            for (std::size_t o = 0; o < orbit_count; ++o) v += coeff[i][o] * r[o];
            cells[i] = v;
            if (v > 0.0) h -= v * std::log(v);
        }
        return h;
    }

    double eval(const std::vector<double>& r) const {
        std::vector<double> cells;
        double hp = cell_sum(p_coeff, r, cells);
        double hq = cell_sum(q_coeff, r, cells);
        return (hp - hq) / group_order;
    }

    std::vector<double> gradient(const std::vector<double>& r) const {
        std::vector<double> pc, qc;
        cell_sum(p_coeff, r, pc);
        cell_sum(q_coeff, r, qc);
        std::vector<double> g(orbit_count, 0.0);
        for (std::size_t o = 0; o < orbit_count; ++o) {
            double v = 0.0;
            for (std::size_t i = 0; i < p_coeff.size(); ++i)
                if (p_coeff[i][o] != 0.0) v -= p_coeff[i][o] * std::log(pc[i]);
            for (std::size_t j = 0; j < q_coeff.size(); ++j)
                if (q_coeff[j][o] != 0.0) v += q_coeff[j][o] * std::log(qc[j]);
            g[o] = v / group_order;
        }
        return g;
    }
};

// membership counts of orbit configurations in the cells of U^{G_eff},
// divided by the orbit size
std::vector<std::vector<double>> power_cell_coeff(const SystemSpec& system,
                                                  const InvariantPolytope& poly, const Cover& U) {
    FiniteSubset all_eff = full_effective_group(system.group());
    FiniteSubset all_full = lift_effective(system.group(), all_eff);
    Cover power = cover_power(system, U, all_full);

    std::map<SymbolRow, int> cell_of;
    for (std::size_t c = 0; c < power.cells.size(); ++c)
        for (const auto& row : power.cells[c]) cell_of[row] = static_cast<int>(c);

    std::vector<int> idx = restriction_index(all_eff, power.window);
    const int a = system.alphabet_size();
    std::vector<std::vector<double>> coeff(power.cells.size(),
                                           std::vector<double>(poly.orbit_count(), 0.0));
    for (std::size_t o = 0; o < poly.orbit_count(); ++o) {
        double inv = 1.0 / static_cast<double>(poly.orbits[o].size());
        for (std::size_t cfg : poly.orbits[o]) {
            SymbolRow full = config_row_at(cfg, a, all_eff.size());
            auto it = cell_of.find(restrict_row(full, idx));
            if (it == cell_of.end())
                throw Error("power partition does not cover the configuration space");
            coeff[static_cast<std::size_t>(it->second)][o] += inv;
        }
    }
    return coeff;
}

Objective build_objective(const SystemSpec& system, const InvariantPolytope& poly, const Cover& P,
                          const Cover& Q) {
    Objective obj;
    obj.p_coeff = power_cell_coeff(system, poly, P);
    obj.q_coeff = power_cell_coeff(system, poly, Q);
    obj.orbit_count = poly.orbit_count();
    obj.group_order = static_cast<double>(poly.group_order);
    return obj;
}

// Euclidean projection onto the standard simplex (sort-based threshold).
void project_simplex(std::vector<double>& y) {
    std::vector<double> u = y;
    std::sort(u.begin(), u.end(), std::greater<double>());
    double cum = 0.0, theta = 0.0;
    int rho = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        cum += u[i];
        double t = (cum - 1.0) / static_cast<double>(i + 1);
        if (u[i] - t > 0.0) {
            rho = static_cast<int>(i + 1);
            theta = t;
        }
    }
    (void)rho;
    for (auto& v : y) v = std::max(0.0, v - theta);
}

void clamp_interior(std::vector<double>& r) {
    double sum = 0.0;
    for (auto& v : r) {
        v = std::max(v, 1e-12);
        sum += v;
    }
    for (auto& v : r) v /= sum;
}

struct AscentResult {
    double value;
    std::vector<double> point;
};

AscentResult ascend(const Objective& obj, std::vector<double> r, int max_iters, double step_tol) {
    project_simplex(r);
    double f = obj.eval(r);
    for (int it = 0; it < max_iters; ++it) {
        std::vector<double> interior = r;
        clamp_interior(interior);
        std::vector<double> g = obj.gradient(interior);
        double t = 1.0;
        bool moved = false;
        for (int bt = 0; bt < 40; ++bt, t *= 0.5) {
            std::vector<double> cand(r.size());
            for (std::size_t o = 0; o < r.size(); ++o) cand[o] = r[o] + t * g[o];
            project_simplex(cand);
            double step_sq = 0.0, dir = 0.0;
            for (std::size_t o = 0; o < r.size(); ++o) {
                double d = cand[o] - r[o];
                step_sq += d * d;
                dir += g[o] * d;
            }
            if (step_sq < step_tol * step_tol) break;
            double fc = obj.eval(cand);
            if (fc >= f + 1e-4 * dir || (dir <= 0.0 && fc > f)) {
                r = std::move(cand);
                f = fc;
                moved = true;
                break;
            }
        }
        if (!moved) break;
    }
    return AscentResult{f, std::move(r)};
}

std::vector<double> random_simplex_point(std::uint64_t seed, std::size_t n) {
    std::vector<double> r(n);
    std::uint64_t s = seed;
    double sum = 0.0;
    for (auto& v : r) {
        s = splitmix64(s);
        double u = (static_cast<double>(s >> 11) + 1.0) / 9007199254740993.0; // (0,1)
        v = -std::log(u);
        sum += v;
    }
    for (auto& v : r) v /= sum;
    return r;
}

} // namespace

MaximizeResult maximize_entropy_difference(const SystemSpec& system, const Cover& P,
                                           const Cover& Q, const OptimizerConfig& config) {
    if (!refines(system, P, Q))
        throw PreconditionError("maximize_entropy_difference requires P finer than Q");
    InvariantPolytope poly = build_polytope(system);
    Objective obj = build_objective(system, poly, P, Q);
    std::size_t n = poly.orbit_count();

    MaximizeResult out;
    out.value = -std::numeric_limits<double>::infinity();
    for (int restart = 0; restart < std::max(1, config.restarts); ++restart) {
        std::vector<double> start;
        if (restart == 0) {
            start.assign(n, 0.0);
            for (std::size_t o = 0; o < n; ++o)
                start[o] = static_cast<double>(poly.orbits[o].size()) /
                           static_cast<double>(poly.config_count);
        } else {
            start = random_simplex_point(
                splitmix64(config.seed + 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(restart)),
                n);
        }
        AscentResult res = ascend(obj, std::move(start), config.max_iters, config.step_tol);
        if (res.value > out.value) {
            out.value = res.value;
            out.orbit_mass = res.point;
        }
        ++out.restarts_used;
    }

    // gradient vs central finite differences at 10 random interior points
    double residual = 0.0;
    for (int p = 0; p < 10; ++p) {
        std::vector<double> r = random_simplex_point(
            splitmix64(config.seed ^ (0xC2B2AE3D27D4EB4Full + static_cast<std::uint64_t>(p))), n);
        for (auto& v : r) v = 0.5 * v + 0.5 / static_cast<double>(n); // keep well interior
        std::vector<double> g = obj.gradient(r);
        const double h = 1e-5;
        for (std::size_t o = 0; o < n; ++o) {
            std::vector<double> hi = r, lo = r;
            hi[o] += h;
            lo[o] -= h;
            double fd = (obj.eval(hi) - obj.eval(lo)) / (2.0 * h);
            double denom = std::max({1.0, std::abs(g[o]), std::abs(fd)});
            residual = std::max(residual, std::abs(g[o] - fd) / denom);
        }
    }
    out.grad_check_residual = residual;

    out.config_probability.assign(poly.config_count, 0.0);
    double mass = 0.0;
    for (std::size_t o = 0; o < n; ++o) {
        double per = out.orbit_mass[o] / static_cast<double>(poly.orbits[o].size());
        for (std::size_t cfg : poly.orbits[o]) out.config_probability[cfg] = per;
        mass += out.orbit_mass[o];
    }
    out.simplex_residual = std::abs(mass - 1.0);
    out.invariance_residual = 0.0; // invariance is structural in orbit coordinates
    return out;
}

double grid_oracle(const SystemSpec& system, const Cover& P, const Cover& Q, int resolution) {
    if (resolution < 1) throw PreconditionError("grid resolution must be >= 1");
    InvariantPolytope poly = build_polytope(system);
    if (poly.dimension() > 4)
        throw PreconditionError("grid oracle supports reduced dimension <= 4");
    Objective obj = build_objective(system, poly, P, Q);
    std::size_t n = poly.orbit_count();
    std::vector<double> r(n, 0.0);
    double best = -std::numeric_limits<double>::infinity();
    // enumerate all compositions of `resolution` into n parts
    auto rec = [&](auto&& self, std::size_t level, int remaining) -> void {
        if (level + 1 == n) {
            r[level] = static_cast<double>(remaining) / static_cast<double>(resolution);
            best = std::max(best, obj.eval(r));
            return;
        }
        for (int c = 0; c <= remaining; ++c) {
            r[level] = static_cast<double>(c) / static_cast<double>(resolution);
            self(self, level + 1, remaining - c);
        }
    };
    if (n == 1) {
        r[0] = 1.0;
        return obj.eval(r);
    }
    rec(rec, 0, resolution);
    return best;
}

VarPrincipleReport varprinciple_report(const SystemSpec& system, const Cover& P, const Cover& Q,
                                       const OptimizerConfig& config) {
    VarPrincipleReport out;
    out.tolerance = config.tolerance;
    FiniteSubset all = lift_effective(system.group(), full_effective_group(system.group()));
    Cover pg = cover_power(system, P, all);
    Cover qg = cover_power(system, Q, all);
    CountingResult counting = counting_entropy(system, pg, qg);
    out.counting_n = counting.n_value;
    out.counting_value =
        counting.log_value / static_cast<double>(system.group().effective_order());
    out.optimizer = maximize_entropy_difference(system, P, Q, config);
    out.optimizer_value = out.optimizer.value;
    out.gap = out.counting_value - out.optimizer_value;
    if (out.gap < -1e-6)
        throw Error("optimizer exceeded the counting value beyond float tolerance");
    out.pass = out.gap <= config.tolerance;
    return out;
}

TailTable tail_table(const SystemSpec& system, int k_max, int m_max, int n_max,
                     const EnumerationCaps& caps) {
    TailTable out;
    out.k_max = k_max;
    out.m_max = m_max;
    out.n_max = n_max;
    std::vector<Cover> box_partition;
    for (int j = 1; j <= std::max(k_max, m_max); ++j) {
        FiniteSubset window = project_effective(system.group(), folner_box(system.group(), j));
        box_partition.push_back(partition_by_window(system, window, caps));
    }
    out.entries.assign(static_cast<std::size_t>(k_max), {});
    out.sup_per_k.assign(static_cast<std::size_t>(k_max), 0.0);
    out.inf_sup = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= k_max; ++k) {
        double sup = -std::numeric_limits<double>::infinity();
        for (int m = 1; m <= m_max; ++m) {
            TailEntry entry;
            entry.k = k;
            entry.m = m;
            try {
                ConvergenceTable t =
                    topo_cond_sequence(system, box_partition[static_cast<std::size_t>(m - 1)],
                                       box_partition[static_cast<std::size_t>(k - 1)], n_max, caps);
                if (t.rows.empty() || t.truncated) {
                    entry.missing = true;
                } else {
                    entry.value = t.rows.back().value;
                    entry.n_value = t.rows.back().n_value;
                }
            } catch (const CapExceededError&) {
                entry.missing = true;
            }
            if (!entry.missing) sup = std::max(sup, entry.value);
            out.entries[static_cast<std::size_t>(k - 1)].push_back(entry);
        }
        out.sup_per_k[static_cast<std::size_t>(k - 1)] = sup;
        out.inf_sup = std::min(out.inf_sup, sup);
    }
    return out;
}

ThetaReport theta_k(const SystemSpec& system, const MeasureSpec& mu, int k, int n_max,
                    int h_partition_k, const EnumerationCaps& caps) {
    ThetaReport out;
    out.k = k;
    out.h_partition_k = h_partition_k > 0 ? h_partition_k : k + 2;
    out.exact = system.group().effective_is_finite();

    auto estimate = [&](int j) {
        FiniteSubset window = project_effective(system.group(), folner_box(system.group(), j));
        Cover pj = partition_by_window(system, window, caps);
        EntropyTable t = dyn_entropy_table(system, mu, pj, n_max, caps);
        if (t.rows.empty()) throw CapExceededError("entropy table is empty under the caps");
        // finite effective groups attain the limit; otherwise the increment
        // row is the fast rate estimate
        return out.exact ? t.rows.back().normalized : t.increment_estimate;
    };
    out.h_estimate = estimate(out.h_partition_k);
    out.h_k_estimate = estimate(k);
    out.theta = out.h_estimate - out.h_k_estimate;
    if (out.theta < 0 && out.theta > -1e-12) out.theta = 0.0;
    return out;
}

} // namespace amenent
