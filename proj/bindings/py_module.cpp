#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "amenent/api.hpp"

namespace py = pybind11;
using namespace amenent;

namespace {

// Reports cross the boundary as JSON text; the python package parses them.
std::string payload_str(const Report& report) { return emit(report, OutputFormat::json); }

api::CommonOptions options_from(double tol, const std::string& log_base) {
    api::CommonOptions opts;
    opts.tol = tol;
    opts.log_base = log_base == "2" ? LogBase::two : LogBase::natural;
    return opts;
}

SystemSpec parse_system(const std::string& text) {
    return system_from_json(ordered_json::parse(text));
}

} // namespace

PYBIND11_MODULE(_amenent, m) {
    m.doc() = "entropy workbench for subshifts over Z^d x finite-abelian groups";
    m.attr("__version__") = AMENENT_VERSION;

    py::register_exception<ConfigError>(m, "ConfigError");
    py::register_exception<CapExceededError>(m, "CapExceededError");
    py::register_exception<InfeasibleError>(m, "InfeasibleError");
    py::register_exception<PreconditionError>(m, "PreconditionError");

    m.def("example82",
          [](bool trivial_z) {
              return payload_str(api::example82_report(trivial_z, api::CommonOptions{}));
          },
          py::arg("trivial_z") = false,
          "Exact reproduction of the Z_3 strong-subadditivity failure; JSON report");

    m.def("counting",
          [](const std::string& system_json, const std::string& cover_u_json,
             const std::string& cover_w_json, int n_max, bool relative, int plateau,
             const std::string& log_base) {
              SystemSpec system = parse_system(system_json);
              api::CommonOptions opts = options_from(1e-9, log_base);
              Cover u = cover_from_json(ordered_json::parse(cover_u_json), system, opts.caps);
              Cover w = cover_from_json(ordered_json::parse(cover_w_json), system, opts.caps);
              return payload_str(api::counting(system, u, w, n_max, relative, plateau, 12, opts));
          },
          py::arg("system"), py::arg("cover_u"), py::arg("cover_w"), py::arg("n_max") = 6,
          py::arg("relative") = false, py::arg("plateau") = 3, py::arg("log_base") = "e",
          "Conditional (and optionally relative) counting entropy sequences; JSON report");

    m.def("measure_entropy",
          [](const std::string& system_json, const std::string& measure_json,
             const std::string& p_json, const std::string& q_json, int n_max,
             const std::string& mode, double tol, const std::string& log_base) {
              SystemSpec system = parse_system(system_json);
              api::CommonOptions opts = options_from(tol, log_base);
              MeasureSpec mu = measure_from_json(ordered_json::parse(measure_json), system);
              Cover p = cover_from_json(ordered_json::parse(p_json), system, opts.caps);
              api::MeasureMode mmode = mode == "plain"         ? api::MeasureMode::plain
                                       : mode == "conditional" ? api::MeasureMode::conditional
                                                               : api::MeasureMode::pinsker;
              if (mmode == api::MeasureMode::plain)
                  return payload_str(
                      api::measure_entropy(system, mu, p, nullptr, n_max, mmode, 12, opts));
              Cover q = cover_from_json(ordered_json::parse(q_json), system, opts.caps);
              return payload_str(api::measure_entropy(system, mu, p, &q, n_max, mmode, 12, opts));
          },
          py::arg("system"), py::arg("measure"), py::arg("p"), py::arg("q") = "",
          py::arg("n_max") = 6, py::arg("mode") = "plain", py::arg("tol") = 1e-9,
          py::arg("log_base") = "e", "Shannon/dynamical entropy tables; JSON report");

    m.def("search_shearer",
          [](std::uint64_t seed, long long trials, int threads) {
              ShearerSearchConfig cfg;
              cfg.threads = threads;
              return payload_str(api::search_shearer(seed, trials, cfg));
          },
          py::arg("seed"), py::arg("trials"), py::arg("threads") = 1,
          "Seeded randomized search for a conditional Shearer violation; JSON report");

    m.def("varp",
          [](const std::string& system_json, const std::string& p_json,
             const std::string& q_json, int restarts, std::uint64_t seed, bool grid,
             int resolution) {
              SystemSpec system = parse_system(system_json);
              api::CommonOptions opts;
              Cover p = cover_from_json(ordered_json::parse(p_json), system, opts.caps);
              Cover q = cover_from_json(ordered_json::parse(q_json), system, opts.caps);
              OptimizerConfig cfg;
              cfg.restarts = restarts;
              cfg.seed = seed;
              cfg.grid_resolution = resolution;
              return payload_str(api::varp(system, p, q, cfg, grid, opts));
          },
          py::arg("system"), py::arg("p"), py::arg("q"), py::arg("restarts") = 20,
          py::arg("seed") = 0, py::arg("grid") = false, py::arg("resolution") = 200,
          "Conditional variational principle check; JSON report");

    m.def("tail",
          [](const std::string& system_json, int k_max, int m_max, int n_max) {
              SystemSpec system = parse_system(system_json);
              return payload_str(api::tail(system, k_max, m_max, n_max, api::CommonOptions{}));
          },
          py::arg("system"), py::arg("k_max") = 3, py::arg("m_max") = 5, py::arg("n_max") = 6,
          "Inf-sup tail table over box partitions; JSON report");

    m.def("tile",
          [](const std::string& group_json, int n, const std::string& tiles_json) {
              GroupSpec spec = group_from_json(ordered_json::parse(group_json));
              std::vector<FiniteSubset> tiles;
              for (const auto& t : ordered_json::parse(tiles_json))
                  tiles.push_back(subset_from_json(t, spec));
              return payload_str(api::tile(spec, n, tiles));
          },
          py::arg("group"), py::arg("n"), py::arg("tiles"),
          "Exact tiling of the Folner box [0,n); JSON report");

    m.def("b_core",
          [](const std::string& group_json, const std::string& f_json,
             const std::string& b_json) {
              GroupSpec spec = group_from_json(ordered_json::parse(group_json));
              FiniteSubset f = subset_from_json(ordered_json::parse(f_json), spec);
              FiniteSubset b = subset_from_json(ordered_json::parse(b_json), spec);
              std::vector<std::vector<long long>> out;
              for (const auto& e : b_core(spec, f, b).elements) out.push_back(e.coords);
              return out;
          },
          py::arg("group"), py::arg("f"), py::arg("b"),
          "Elements g of F with B + g contained in F");

    m.def("invariance_defect",
          [](const std::string& group_json, const std::string& f_json,
             const std::string& b_json) {
              GroupSpec spec = group_from_json(ordered_json::parse(group_json));
              FiniteSubset f = subset_from_json(ordered_json::parse(f_json), spec);
              FiniteSubset b = subset_from_json(ordered_json::parse(b_json), spec);
              return invariance_defect(spec, f, b);
          },
          py::arg("group"), py::arg("f"), py::arg("b"), "|BF symdiff F| / |F|");

    m.def("folner_box",
          [](const std::string& group_json, int n) {
              GroupSpec spec = group_from_json(ordered_json::parse(group_json));
              std::vector<std::vector<long long>> out;
              for (const auto& e : folner_box(spec, n).elements) out.push_back(e.coords);
              return out;
          },
          py::arg("group"), py::arg("n"), "The box [0,n)^d x (entire finite part)");
}
