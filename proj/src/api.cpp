#include "amenent/api.hpp"

#include <cmath>

namespace amenent::api {

namespace {

ordered_json convergence_table_json(const ConvergenceTable& t, double scale) {
    ordered_json rows = ordered_json::array();
    for (const auto& r : t.rows) {
        ordered_json row;
        row["n"] = r.n;
        row["window_size"] = r.window_size;
        row["N"] = r.n_value;
        row["value"] = round12(r.value * scale);
        row["exact"] = r.exact;
        rows.push_back(row);
    }
    ordered_json j;
    j["rows"] = rows;
    j["running_inf"] = round12(t.rows.empty() ? 0.0 : t.running_inf * scale);
    j["truncated"] = t.truncated;
    return j;
}

CsvBlock convergence_table_block(const std::string& name, const ConvergenceTable& t,
                                 double scale) {
    CsvBlock block{name, {"n", "window_size", "N", "value", "exact"}, {}};
    for (const auto& r : t.rows)
        block.rows.push_back({r.n, r.window_size, r.n_value, round12(r.value * scale),
                              r.exact ? 1 : 0});
    return block;
}

ordered_json entropy_table_json(const EntropyTable& t, double scale) {
    ordered_json rows = ordered_json::array();
    for (const auto& r : t.rows) {
        ordered_json row;
        row["n"] = r.n;
        row["window_size"] = r.window_size;
        row["H"] = round12(r.h_value * scale);
        row["normalized"] = round12(r.normalized * scale);
        row["increment"] = round12(r.increment * scale);
        rows.push_back(row);
    }
    ordered_json j;
    j["rows"] = rows;
    j["running_inf"] = round12(t.rows.empty() ? 0.0 : t.running_inf * scale);
    j["increment_estimate"] = round12(t.increment_estimate * scale);
    j["certified_upper_bound"] = t.certified;
    j["truncated"] = t.truncated;
    return j;
}

CsvBlock entropy_table_block(const std::string& name, const EntropyTable& t, double scale) {
    CsvBlock block{name, {"n", "window_size", "H", "normalized", "increment"}, {}};
    for (const auto& r : t.rows)
        block.rows.push_back({r.n, r.window_size, round12(r.h_value * scale),
                              round12(r.normalized * scale), round12(r.increment * scale)});
    return block;
}

std::string log_base_name(LogBase b) { return b == LogBase::two ? "2" : "e"; }

void echo_caps(ordered_json& config, const CommonOptions& opts) {
    config["pattern_cap"] = opts.caps.pattern_cap;
    config["cell_cap"] = opts.caps.cover_cell_cap;
}

} // namespace

ordered_json violation_to_json(const ViolationRecord& v) {
    ordered_json j;
    j["inequality"] = v.inequality;
    ordered_json subsets = ordered_json::array();
    for (const auto& s : v.subsets) subsets.push_back(subset_to_json(s));
    j["subsets"] = subsets;
    j["left"] = round12(v.left);
    j["right"] = round12(v.right);
    j["magnitude"] = round12(v.magnitude);
    j["exact"] = v.exact;
    return j;
}

ordered_json check_report_to_json(const CheckReport& r) {
    ordered_json j;
    j["property"] = r.property;
    j["oracle"] = r.oracle;
    j["tol"] = r.tol;
    j["instances"] = r.instances;
    ordered_json viol = ordered_json::array();
    for (const auto& v : r.violations) viol.push_back(violation_to_json(v));
    j["violations"] = viol;
    ordered_json susp = ordered_json::array();
    for (const auto& v : r.suspects) susp.push_back(violation_to_json(v));
    j["numerically_suspect"] = susp;
    return j;
}

Report counting(const SystemSpec& system, const Cover& U, const Cover& W, int n_max,
                bool relative, int plateau, int schedule_steps, const CommonOptions& opts) {
    ordered_json config;
    config["subcommand"] = "counting";
    config["nmax"] = n_max;
    config["relative"] = relative;
    config["plateau"] = plateau;
    config["log_base"] = log_base_name(opts.log_base);
    echo_caps(config, opts);
    Report report = make_report(std::move(config));
    double scale = log_scale(opts.log_base);

    ConvergenceTable cond = topo_cond_sequence(system, U, W, n_max, opts.caps);
    report.payload["result"]["conditional"] = convergence_table_json(cond, scale);
    report.tables.push_back(convergence_table_block("conditional", cond, scale));
    if (relative) {
        auto pair_rows = counting_pinsker_pair(system, U, W, n_max, schedule_steps, plateau,
                                               opts.caps);
        ordered_json rows = ordered_json::array();
        CsvBlock block{"relative",
                       {"n", "window_size", "cond_N", "rel_N", "cond_value", "rel_value", "gap",
                        "rel_exact"},
                       {}};
        for (const auto& r : pair_rows) {
            ordered_json row;
            row["n"] = r.n;
            row["window_size"] = r.window_size;
            row["cond_N"] = r.cond_n;
            row["rel_N"] = r.rel_n;
            row["cond_value"] = round12(r.cond_value * scale);
            row["rel_value"] = round12(r.rel_value * scale);
            row["gap"] = round12(r.gap * scale);
            row["rel_exact"] = r.rel_exact;
            rows.push_back(row);
            block.rows.push_back({r.n, r.window_size, r.cond_n, r.rel_n,
                                  round12(r.cond_value * scale), round12(r.rel_value * scale),
                                  round12(r.gap * scale), r.rel_exact ? 1 : 0});
        }
        report.payload["result"]["relative_pair"] = rows;
        report.tables.push_back(std::move(block));
    }
    return report;
}

Report measure_entropy(const SystemSpec& system, const MeasureSpec& mu, const Cover& P,
                       const Cover* Q, int n_max, MeasureMode mode, int schedule_steps,
                       const CommonOptions& opts) {
    ordered_json config;
    config["subcommand"] = "measure-entropy";
    config["nmax"] = n_max;
    config["mode"] = mode == MeasureMode::plain      ? "plain"
                     : mode == MeasureMode::conditional ? "conditional"
                                                        : "pinsker";
    config["log_base"] = log_base_name(opts.log_base);
    config["tol"] = opts.tol;
    echo_caps(config, opts);
    Report report = make_report(std::move(config));
    double scale = log_scale(opts.log_base);

    if (mode == MeasureMode::plain) {
        EntropyTable t = dyn_entropy_table(system, mu, P, n_max, opts.caps);
        report.payload["result"]["dynamical"] = entropy_table_json(t, scale);
        report.tables.push_back(entropy_table_block("dynamical", t, scale));
        return report;
    }
    if (!Q) throw PreconditionError("conditional modes require a second partition");
    if (mode == MeasureMode::conditional) {
        EntropyTable t = cond_dyn_table(system, mu, P, *Q, n_max, opts.caps);
        report.payload["result"]["conditional"] = entropy_table_json(t, scale);
        report.tables.push_back(entropy_table_block("conditional", t, scale));
        return report;
    }
    auto rows = pinsker_gap_table(system, mu, P, *Q, n_max, schedule_steps, opts.tol, opts.caps);
    ordered_json jrows = ordered_json::array();
    CsvBlock block{"pinsker",
                   {"n", "window_size", "cond_value", "rel_value", "gap", "rel_exact"},
                   {}};
    for (const auto& r : rows) {
        ordered_json row;
        row["n"] = r.n;
        row["window_size"] = r.window_size;
        row["cond_value"] = round12(r.cond_value * scale);
        row["rel_value"] = round12(r.rel_value * scale);
        row["gap"] = round12(r.gap * scale);
        row["rel_exact"] = r.rel_exact;
        jrows.push_back(row);
        block.rows.push_back({r.n, r.window_size, round12(r.cond_value * scale),
                              round12(r.rel_value * scale), round12(r.gap * scale),
                              r.rel_exact ? 1 : 0});
    }
    report.payload["result"]["pinsker"] = jrows;
    report.payload["result"]["final_gap"] =
        round12(rows.empty() ? 0.0 : std::abs(rows.back().gap) * scale);
    report.tables.push_back(std::move(block));
    return report;
}

Report check(const SystemSpec& system, const MeasureSpec* mu, const Cover& first,
             const Cover* second, const CheckRequest& request, const CommonOptions& opts) {
    ordered_json config;
    config["subcommand"] = "check";
    config["property"] = request.property;
    config["oracle"] = request.oracle;
    config["tol"] = opts.tol;
    config["window_n"] = request.window_n;
    echo_caps(config, opts);
    Report report = make_report(std::move(config));

    SetFunctionOracle oracle = [&] {
        if (request.oracle == "shannon") {
            if (!mu) throw PreconditionError("shannon oracle requires a measure");
            return SetFunctionOracle::shannon_power(system, *mu, first, opts.caps);
        }
        if (request.oracle == "cond-shannon") {
            if (!mu || !second)
                throw PreconditionError("cond-shannon oracle requires a measure and Q");
            return SetFunctionOracle::cond_shannon_power(system, *mu, first, *second, opts.caps);
        }
        if (request.oracle == "counting")
            return SetFunctionOracle::counting_power(system, first, opts.caps);
        if (request.oracle == "cond-counting") {
            if (!second) throw PreconditionError("cond-counting oracle requires W");
            return SetFunctionOracle::cond_counting_power(system, first, *second, opts.caps);
        }
        throw ConfigError("unknown oracle '" + request.oracle + "'");
    }();

    CheckReport result;
    if (request.property == "subadd" || request.property == "strong-subadd") {
        auto pairs = exhaustive_pairs(folner_box(system.group(), request.window_n));
        result = request.property == "subadd"
                     ? check_subadditivity(oracle, pairs, opts.tol)
                     : check_strong_subadditivity(oracle, pairs, opts.tol);
    } else if (request.property == "shearer") {
        if (!request.F) throw PreconditionError("shearer check requires the set F");
        result = request.exhaustive_covers
                     ? check_shearer_exhaustive(oracle, *request.F, request.max_set_size,
                                                request.k, opts.tol)
                     : check_shearer(oracle, *request.F, request.family, request.k, opts.tol);
    } else if (request.property == "invariance") {
        auto family = all_subsets(folner_box(system.group(), request.window_n));
        std::vector<FiniteSubset> nonempty(family.begin() + 1, family.end());
        result = check_invariance(oracle, nonempty, request.translates, opts.tol);
    } else {
        throw ConfigError("unknown property '" + request.property + "'");
    }

    report.payload["result"] = check_report_to_json(result);
    CsvBlock block{"violations", {"inequality", "left", "right", "magnitude", "exact"}, {}};
    for (const auto& v : result.violations)
        block.rows.push_back({v.inequality, round12(v.left), round12(v.right),
                              round12(v.magnitude), v.exact ? 1 : 0});
    report.tables.push_back(std::move(block));
    return report;
}

Report example82_report(bool trivial_z, const CommonOptions& opts) {
    ordered_json config;
    config["subcommand"] = "example82";
    config["trivial_z"] = trivial_z;
    Report report = make_report(std::move(config));
    (void)opts;

    Example82Report ex = example82(trivial_z);
    ordered_json r;
    r["N"] = {{"QE_RE", ex.n_e}, {"QDEF_RDEF", ex.n_def}, {"QDE_RDE", ex.n_de},
              {"QEF_REF", ex.n_ef}};
    r["H"] = {{"QE_RE", round12(ex.h_e)},
              {"QDEF_RDEF", round12(ex.h_def)},
              {"QDE_RDE", round12(ex.h_de)},
              {"QEF_REF", round12(ex.h_ef)}};
    r["shannon_violation"] = violation_to_json(ex.shannon_violation);
    r["counting_violation"] = violation_to_json(ex.counting_violation);
    r["pass"] = ex.pass;
    r["failures"] = ex.failures;
    report.payload["result"] = std::move(r);
    report.exit_code = ex.pass ? 0 : 1;

    CsvBlock block{"example82", {"pair", "N", "H"}, {}};
    block.rows.push_back({"QE_RE", ex.n_e, round12(ex.h_e)});
    block.rows.push_back({"QDEF_RDEF", ex.n_def, round12(ex.h_def)});
    block.rows.push_back({"QDE_RDE", ex.n_de, round12(ex.h_de)});
    block.rows.push_back({"QEF_REF", ex.n_ef, round12(ex.h_ef)});
    report.tables.push_back(std::move(block));
    return report;
}

Report search_shearer(std::uint64_t seed, long long trials, const ShearerSearchConfig& config) {
    ordered_json cfg;
    cfg["subcommand"] = "search-shearer";
    cfg["seed"] = seed;
    cfg["trials"] = trials;
    cfg["max_group_order"] = config.max_group_order;
    cfg["max_alphabet"] = config.max_alphabet;
    cfg["max_window"] = config.max_window;
    cfg["max_f"] = config.max_f;
    cfg["max_family"] = config.max_family;
    cfg["max_denominator"] = config.max_denominator;
    cfg["max_config_space"] = config.max_config_space;
    cfg["tol"] = config.tol;
    Report report = make_report(std::move(cfg));

    SearchReport sr = search_shearer_conditional(seed, trials, config);
    ordered_json r;
    r["seed"] = sr.seed;
    r["trials"] = sr.trials;
    r["checked"] = sr.checked;
    r["skipped"] = sr.skipped;
    auto record_json = [](const ShearerTrialRecord& rec) {
        ordered_json j;
        j["trial"] = rec.trial;
        j["margin"] = round12(rec.margin);
        j["instance"] = ordered_json::parse(rec.instance);
        return j;
    };
    ordered_json viols = ordered_json::array();
    for (const auto& v : sr.violations) viols.push_back(record_json(v));
    r["violations"] = viols;
    ordered_json top = ordered_json::array();
    for (const auto& t : sr.top) top.push_back(record_json(t));
    r["top_margins"] = top;
    r["best_margin"] = sr.top.empty() ? ordered_json() : ordered_json(round12(sr.top.front().margin));
    report.payload["result"] = std::move(r);

    CsvBlock block{"top_margins", {"trial", "margin"}, {}};
    for (const auto& t : sr.top) block.rows.push_back({t.trial, round12(t.margin)});
    report.tables.push_back(std::move(block));
    return report;
}

Report varp(const SystemSpec& system, const Cover& P, const Cover& Q,
            const OptimizerConfig& config, bool run_grid_oracle, const CommonOptions& opts) {
    ordered_json cfg;
    cfg["subcommand"] = "varp";
    cfg["restarts"] = config.restarts;
    cfg["seed"] = config.seed;
    cfg["tolerance"] = config.tolerance;
    cfg["grid_oracle"] = run_grid_oracle;
    cfg["resolution"] = config.grid_resolution;
    cfg["log_base"] = log_base_name(opts.log_base);
    Report report = make_report(std::move(cfg));
    double scale = log_scale(opts.log_base);

    VarPrincipleReport vr = varprinciple_report(system, P, Q, config);
    ordered_json r;
    r["counting_N"] = vr.counting_n;
    r["counting_value"] = round12(vr.counting_value * scale);
    r["optimizer_value"] = round12(vr.optimizer_value * scale);
    r["gap"] = round12(vr.gap * scale);
    r["pass"] = vr.pass;
    r["restarts_used"] = vr.optimizer.restarts_used;
    r["grad_check_residual"] = round12(vr.optimizer.grad_check_residual);
    r["invariance_residual"] = round12(vr.optimizer.invariance_residual);
    r["simplex_residual"] = round12(vr.optimizer.simplex_residual);
    ordered_json maximizer = ordered_json::array();
    for (double p : vr.optimizer.config_probability) maximizer.push_back(round12(p));
    r["maximizer"] = maximizer;
    if (run_grid_oracle) {
        double g = grid_oracle(system, P, Q, config.grid_resolution);
        r["grid_oracle_value"] = round12(g * scale);
        r["optimizer_vs_grid"] = round12(std::abs(vr.optimizer_value - g) * scale);
    }
    report.payload["result"] = std::move(r);
    report.exit_code = vr.pass ? 0 : 1;
    return report;
}

Report tail(const SystemSpec& system, int k_max, int m_max, int n_max,
            const CommonOptions& opts) {
    ordered_json cfg;
    cfg["subcommand"] = "tail";
    cfg["kmax"] = k_max;
    cfg["mmax"] = m_max;
    cfg["nmax"] = n_max;
    cfg["log_base"] = log_base_name(opts.log_base);
    echo_caps(cfg, opts);
    Report report = make_report(std::move(cfg));
    double scale = log_scale(opts.log_base);

    TailTable t = tail_table(system, k_max, m_max, n_max, opts.caps);
    ordered_json entries = ordered_json::array();
    CsvBlock block{"tail", {"k", "m", "value", "N", "missing"}, {}};
    for (const auto& row : t.entries)
        for (const auto& e : row) {
            ordered_json je;
            je["k"] = e.k;
            je["m"] = e.m;
            je["value"] = round12(e.value * scale);
            je["N"] = e.n_value;
            je["missing"] = e.missing;
            entries.push_back(je);
            block.rows.push_back({e.k, e.m, round12(e.value * scale), e.n_value,
                                  e.missing ? 1 : 0});
        }
    ordered_json r;
    r["entries"] = entries;
    ordered_json sups = ordered_json::array();
    for (double s : t.sup_per_k) sups.push_back(round12(s * scale));
    r["sup_per_k"] = sups;
    r["inf_sup_estimate"] = round12(t.inf_sup * scale);
    r["note"] = "finite truncation of the inf-sup tail quantity; an estimate, not a certificate";
    report.payload["result"] = std::move(r);
    report.tables.push_back(std::move(block));
    return report;
}

Report tile(const GroupSpec& group, int n, const std::vector<FiniteSubset>& tiles) {
    ordered_json cfg;
    cfg["subcommand"] = "tile";
    cfg["n"] = n;
    Report report = make_report(std::move(cfg));
    TilingDecomposition d = tile_box(group, folner_box(group, n), tiles);
    ordered_json r;
    ordered_json jt = ordered_json::array();
    for (const auto& t : d.tiles) jt.push_back(subset_to_json(t));
    r["tiles"] = jt;
    ordered_json pieces = ordered_json::array();
    CsvBlock block{"pieces", {"tile", "translate"}, {}};
    for (const auto& [idx, g] : d.pieces) {
        ordered_json p;
        p["tile"] = idx;
        p["translate"] = g.coords;
        pieces.push_back(p);
        block.rows.push_back({idx, ordered_json(g.coords).dump()});
    }
    r["pieces"] = pieces;
    report.payload["result"] = std::move(r);
    report.tables.push_back(std::move(block));
    return report;
}

Report core(const GroupSpec& group, const FiniteSubset& F, const FiniteSubset& B) {
    ordered_json cfg;
    cfg["subcommand"] = "core";
    Report report = make_report(std::move(cfg));
    ordered_json r;
    r["b_core"] = subset_to_json(b_core(group, F, B));
    r["invariance_defect"] = round12(invariance_defect(group, F, B));
    report.payload["result"] = std::move(r);
    return report;
}

} // namespace amenent::api
