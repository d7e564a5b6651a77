// amenent: entropy workbench for subshifts over Z^d x finite-abelian groups.
// Exit codes: 0 success, 1 check/assertion failure, 2 usage/validation error.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "amenent/api.hpp"

namespace {

using namespace amenent;

struct GlobalArgs {
    std::string out;
    std::string format = "json";
    std::string log_base = "e";
    double tol = 1e-9;
    std::uint64_t seed = 0;
    std::uint64_t pattern_cap = std::uint64_t{1} << 24;
    int cell_cap = 24;
};

void add_common(CLI::App* cmd, GlobalArgs& g) {
    cmd->add_option("--out", g.out, "Write the report to this file");
    cmd->add_option("--format", g.format, "Output format: json|csv|human")
        ->check(CLI::IsMember({"json", "csv", "human"}));
    cmd->add_option("--log-base", g.log_base, "Logarithm base: e|2")
        ->check(CLI::IsMember({"e", "2"}));
    cmd->add_option("--tol", g.tol, "Float comparison tolerance");
    cmd->add_option("--seed", g.seed, "Master seed for randomized runs");
    cmd->add_option("--pattern-cap", g.pattern_cap, "Cap on window language size");
    cmd->add_option("--cell-cap", g.cell_cap, "Cap on cover cells in set-cover search");
}

api::CommonOptions common_options(const GlobalArgs& g) {
    api::CommonOptions opts;
    opts.caps.pattern_cap = g.pattern_cap;
    opts.caps.cover_cell_cap = g.cell_cap;
    opts.log_base = g.log_base == "2" ? LogBase::two : LogBase::natural;
    opts.tol = g.tol;
    opts.seed = g.seed;
    if (const char* env = std::getenv("AMENENT_THREADS"))
        opts.threads = std::max(1, std::atoi(env));
    return opts;
}

int finish(Report report, const GlobalArgs& g, double wall_ms) {
    OutputFormat format = format_from_string(g.format);
    if (!g.out.empty()) {
        // the out-file is the reproducible artifact; wall time goes to stderr
        std::ofstream out(g.out);
        if (!out) {
            std::cerr << "error: cannot write " << g.out << "\n";
            return 2;
        }
        out << emit(report, format);
        std::cerr << "wall_time_ms " << wall_ms << "\n";
    } else {
        report.payload["wall_time_ms"] = wall_ms;
        std::cout << emit(report, format);
    }
    return report.exit_code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"entropy workbench for subshifts over Z^d x finite-abelian groups"};
    app.require_subcommand(1);

    GlobalArgs g;

    // counting
    auto* counting_cmd = app.add_subcommand("counting", "Conditional counting entropy sequences");
    std::string sys_path, coverU_path, coverW_path;
    int nmax = 6, plateau = 3, schedule_steps = 12;
    bool relative = false;
    counting_cmd->add_option("--system", sys_path, "System config JSON")->required();
    counting_cmd->add_option("--coverU", coverU_path, "Cover U JSON")->required();
    counting_cmd->add_option("--coverW", coverW_path, "Cover W JSON")->required();
    counting_cmd->add_option("--nmax", nmax, "Folner index bound");
    counting_cmd->add_flag("--relative", relative, "Also compute the relative sequence");
    counting_cmd->add_option("--plateau", plateau, "Stabilization plateau length");
    counting_cmd->add_option("--schedule-steps", schedule_steps, "Conditioning schedule length");
    add_common(counting_cmd, g);

    // measure-entropy
    auto* me_cmd = app.add_subcommand("measure-entropy", "Shannon/dynamical entropy tables");
    std::string measure_path, p_path, q_path, me_mode = "plain";
    me_cmd->add_option("--system", sys_path, "System config JSON")->required();
    me_cmd->add_option("--measure", measure_path, "Measure config JSON")->required();
    me_cmd->add_option("--P", p_path, "Partition P JSON")->required();
    me_cmd->add_option("--Q", q_path, "Partition Q JSON");
    me_cmd->add_option("--nmax", nmax, "Folner index bound");
    me_cmd->add_option("--mode", me_mode, "plain|conditional|pinsker")
        ->check(CLI::IsMember({"plain", "conditional", "pinsker"}));
    me_cmd->add_option("--schedule-steps", schedule_steps, "Conditioning schedule length");
    add_common(me_cmd, g);

    // check
    auto* check_cmd = app.add_subcommand("check", "Inequality checks for entropy set functions");
    std::string property, oracle_name, f_path, family_path, translates_path;
    int window_n = 4, shearer_k = 1, max_set_size = 3;
    bool exhaustive_covers = false;
    check_cmd->add_option("--property", property, "subadd|strong-subadd|shearer|invariance")
        ->required()
        ->check(CLI::IsMember({"subadd", "strong-subadd", "shearer", "invariance"}));
    check_cmd->add_option("--oracle", oracle_name, "shannon|cond-shannon|counting|cond-counting")
        ->required()
        ->check(CLI::IsMember({"shannon", "cond-shannon", "counting", "cond-counting"}));
    check_cmd->add_option("--system", sys_path, "System config JSON")->required();
    check_cmd->add_option("--measure", measure_path, "Measure config JSON (shannon oracles)");
    check_cmd->add_option("--P", p_path, "First partition/cover JSON")->required();
    check_cmd->add_option("--Q", q_path, "Second partition/cover JSON (conditional oracles)");
    check_cmd->add_option("--window-n", window_n, "Exhaustive families use subsets of folner_box(n)");
    check_cmd->add_option("--F", f_path, "Shearer: the covered set (subset JSON)");
    check_cmd->add_option("--family", family_path, "Shearer: cover family (array of subsets)");
    check_cmd->add_option("--k", shearer_k, "Shearer: covering multiplicity");
    check_cmd->add_flag("--exhaustive", exhaustive_covers, "Shearer: enumerate all k-covers");
    check_cmd->add_option("--max-set-size", max_set_size, "Shearer: cover-set size bound");
    check_cmd->add_option("--translates", translates_path, "Invariance: translate list (subset JSON)");
    add_common(check_cmd, g);

    // example82
    auto* ex_cmd = app.add_subcommand("example82", "Exact strong-subadditivity failure on Z_3");
    bool trivial_z = false;
    ex_cmd->add_flag("--trivial-z", trivial_z, "Run the Z_3 x Z variant (trivial Z coordinate)");
    add_common(ex_cmd, g);

    // search-shearer
    auto* search_cmd = app.add_subcommand("search-shearer",
                                          "Randomized search for a conditional Shearer violation");
    long long trials = 1000;
    ShearerSearchConfig search_cfg;
    search_cmd->add_option("--trials", trials, "Number of trials");
    search_cmd->add_option("--max-group-order", search_cfg.max_group_order, "Group order bound");
    search_cmd->add_option("--max-alphabet", search_cfg.max_alphabet, "Alphabet size bound");
    search_cmd->add_option("--max-window", search_cfg.max_window, "Partition window bound");
    search_cmd->add_option("--max-f", search_cfg.max_f, "Covered set size bound");
    add_common(search_cmd, g);

    // varp
    auto* varp_cmd = app.add_subcommand("varp", "Conditional variational principle check");
    OptimizerConfig opt_cfg;
    bool use_grid = false;
    std::string oracle_kind;
    varp_cmd->add_option("--system", sys_path, "System config JSON")->required();
    varp_cmd->add_option("--P", p_path, "Partition P JSON")->required();
    varp_cmd->add_option("--Q", q_path, "Partition Q JSON")->required();
    varp_cmd->add_option("--restarts", opt_cfg.restarts, "Optimizer restarts");
    varp_cmd->add_option("--oracle", oracle_kind, "Set to 'grid' to run the grid oracle")
        ->check(CLI::IsMember({"grid"}));
    varp_cmd->add_option("--resolution", opt_cfg.grid_resolution, "Grid oracle resolution");
    varp_cmd->add_option("--gap-tol", opt_cfg.tolerance, "Pass threshold for the gap");
    add_common(varp_cmd, g);

    // tail
    auto* tail_cmd = app.add_subcommand("tail", "Inf-sup tail table over box partitions");
    int kmax = 3, mmax = 5, tail_nmax = 6;
    tail_cmd->add_option("--system", sys_path, "System config JSON")->required();
    tail_cmd->add_option("--kmax", kmax, "Conditioning partition bound");
    tail_cmd->add_option("--mmax", mmax, "Refining partition bound");
    tail_cmd->add_option("--nmax", tail_nmax, "Folner index bound");
    add_common(tail_cmd, g);

    // tile
    auto* tile_cmd = app.add_subcommand("tile", "Exact tiling of a Folner box");
    std::string group_path, tiles_path;
    int tile_n = 1;
    tile_cmd->add_option("--group", group_path, "Group spec JSON")->required();
    tile_cmd->add_option("--n", tile_n, "Folner box index")->required();
    tile_cmd->add_option("--tiles", tiles_path, "Tiles JSON (array of subsets)")->required();
    add_common(tile_cmd, g);

    // core
    auto* core_cmd = app.add_subcommand("core", "B-core and invariance defect");
    std::string fsub_path, bsub_path;
    core_cmd->add_option("--group", group_path, "Group spec JSON")->required();
    core_cmd->add_option("--F", fsub_path, "Subset F JSON")->required();
    core_cmd->add_option("--B", bsub_path, "Subset B JSON")->required();
    add_common(core_cmd, g);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2; // usage errors exit 2 (help stays 0)
    }

    auto start = std::chrono::steady_clock::now();
    try {
        api::CommonOptions opts = common_options(g);
        Report report;
        if (*counting_cmd) {
            SystemSpec system = system_from_json(load_json_file(sys_path));
            Cover U = cover_from_json(load_json_file(coverU_path), system, opts.caps);
            Cover W = cover_from_json(load_json_file(coverW_path), system, opts.caps);
            report = api::counting(system, U, W, nmax, relative, plateau, schedule_steps, opts);
        } else if (*me_cmd) {
            SystemSpec system = system_from_json(load_json_file(sys_path));
            MeasureSpec mu = measure_from_json(load_json_file(measure_path), system);
            Cover P = cover_from_json(load_json_file(p_path), system, opts.caps);
            api::MeasureMode mode = me_mode == "plain"         ? api::MeasureMode::plain
                                    : me_mode == "conditional" ? api::MeasureMode::conditional
                                                               : api::MeasureMode::pinsker;
            if (mode != api::MeasureMode::plain) {
                if (q_path.empty()) throw ConfigError("--Q is required for mode " + me_mode);
                Cover Q = cover_from_json(load_json_file(q_path), system, opts.caps);
                report = api::measure_entropy(system, mu, P, &Q, nmax, mode, schedule_steps, opts);
            } else {
                report = api::measure_entropy(system, mu, P, nullptr, nmax, mode, schedule_steps,
                                              opts);
            }
        } else if (*check_cmd) {
            SystemSpec system = system_from_json(load_json_file(sys_path));
            std::optional<MeasureSpec> mu;
            if (!measure_path.empty())
                mu = measure_from_json(load_json_file(measure_path), system);
            Cover first = cover_from_json(load_json_file(p_path), system, opts.caps);
            std::optional<Cover> second;
            if (!q_path.empty()) second = cover_from_json(load_json_file(q_path), system, opts.caps);
            api::CheckRequest req;
            req.property = property;
            req.oracle = oracle_name;
            req.window_n = window_n;
            req.k = shearer_k;
            req.exhaustive_covers = exhaustive_covers;
            req.max_set_size = max_set_size;
            if (!f_path.empty())
                req.F = subset_from_json(load_json_file(f_path), system.group());
            if (!family_path.empty())
                for (const auto& e : load_json_file(family_path))
                    req.family.push_back(subset_from_json(e, system.group()));
            if (!translates_path.empty())
                for (const auto& e :
                     subset_from_json(load_json_file(translates_path), system.group()).elements)
                    req.translates.push_back(e);
            else if (property == "invariance")
                throw ConfigError("invariance check requires --translates");
            report = api::check(system, mu ? &*mu : nullptr, first, second ? &*second : nullptr,
                                req, opts);
        } else if (*ex_cmd) {
            report = api::example82_report(trivial_z, opts);
        } else if (*search_cmd) {
            search_cfg.tol = g.tol;
            search_cfg.threads = opts.threads;
            report = api::search_shearer(g.seed, trials, search_cfg);
        } else if (*varp_cmd) {
            SystemSpec system = system_from_json(load_json_file(sys_path));
            Cover P = cover_from_json(load_json_file(p_path), system, opts.caps);
            Cover Q = cover_from_json(load_json_file(q_path), system, opts.caps);
            opt_cfg.seed = g.seed;
            use_grid = oracle_kind == "grid";
            report = api::varp(system, P, Q, opt_cfg, use_grid, opts);
        } else if (*tail_cmd) {
            SystemSpec system = system_from_json(load_json_file(sys_path));
            report = api::tail(system, kmax, mmax, tail_nmax, opts);
        } else if (*tile_cmd) {
            GroupSpec spec = group_from_json(load_json_file(group_path));
            std::vector<FiniteSubset> tiles;
            for (const auto& t : load_json_file(tiles_path))
                tiles.push_back(subset_from_json(t, spec));
            report = api::tile(spec, tile_n, tiles);
        } else if (*core_cmd) {
            GroupSpec spec = group_from_json(load_json_file(group_path));
            FiniteSubset F = subset_from_json(load_json_file(fsub_path), spec);
            FiniteSubset B = subset_from_json(load_json_file(bsub_path), spec);
            report = api::core(spec, F, B);
        }
        auto elapsed = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - start)
                           .count();
        return finish(std::move(report), g, elapsed);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const CapExceededError& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return 2;
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
