#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <sstream>

#include "hyperlab/combinatorics.hpp"
#include "hyperlab/connectivity.hpp"
#include "hyperlab/error.hpp"
#include "hyperlab/experiments.hpp"
#include "hyperlab/model.hpp"
#include "hyperlab/statistics.hpp"

namespace py = pybind11;
using namespace hyperlab;

namespace {

Params make_params(std::uint32_t n, std::uint32_t k, std::uint32_t j) {
    Params p{n, k, j};
    p.validate();
    return p;
}

VertexSet to_set(const std::vector<Vertex>& v) { return VertexSet(v); }
std::vector<Vertex> to_list(const VertexSet& s) { return {s.begin(), s.end()}; }

void bind_combinatorics(py::module_& m) {
    m.def("binom", &binom, py::arg("n"), py::arg("r"));
    m.def("rank_set", [](const std::vector<Vertex>& s, std::uint32_t n) { return rank_set(to_set(s), n).rank; },
          py::arg("members"), py::arg("n"), "Colex rank of a strictly increasing vertex list.");
    m.def("unrank_set", [](Rank rank, std::uint32_t r, std::uint32_t n) { return to_list(unrank_set({rank, r, n})); },
          py::arg("rank"), py::arg("r"), py::arg("n"));
    m.def("sub_sets", [](const std::vector<Vertex>& s, std::size_t r) {
              std::vector<std::vector<Vertex>> out;
              for (const auto& x : sub_sets(to_set(s), r)) out.push_back(to_list(x));
              return out;
          },
          py::arg("members"), py::arg("r"));
}

void bind_model(py::module_& m) {
    py::class_<Params>(m, "Params")
        .def(py::init(&make_params), py::arg("n"), py::arg("k"), py::arg("j"))
        .def_readonly("n", &Params::n)
        .def_readonly("k", &Params::k)
        .def_readonly("j", &Params::j)
        .def_property_readonly("edge_universe", &Params::edge_universe)
        .def_property_readonly("jset_universe", &Params::jset_universe)
        .def("__repr__", [](const Params& p) {
            return "Params(n=" + std::to_string(p.n) + ", k=" + std::to_string(p.k) + ", j=" + std::to_string(p.j) + ")";
        });

    py::class_<Hypergraph>(m, "Hypergraph")
        .def(py::init([](const Params& p, std::vector<Rank> ranks) { return Hypergraph(p, std::move(ranks)); }),
             py::arg("params"), py::arg("edge_ranks") = std::vector<Rank>{})
        .def_property_readonly("params", &Hypergraph::params)
        .def_property_readonly("edge_ranks", [](const Hypergraph& h) {
            return std::vector<Rank>(h.edge_ranks().begin(), h.edge_ranks().end());
        })
        .def("edges", [](const Hypergraph& h) {
            std::vector<std::vector<Vertex>> out;
            for (const auto& e : h.edges()) out.push_back(to_list(e));
            return out;
        })
        .def("__len__", &Hypergraph::edge_count)
        .def("to_text", [](const Hypergraph& h) {
            std::ostringstream os;
            write_hypergraph(os, h);
            return os.str();
        })
        .def_static("from_text", [](const std::string& text) {
            std::istringstream is(text);
            return read_hypergraph(is);
        });

    py::class_<EdgeStream>(m, "EdgeStream")
        .def(py::init<Params, std::uint64_t>(), py::arg("params"), py::arg("seed"))
        .def("next", [](EdgeStream& s) -> py::object {
            auto e = s.next_edge();
            if (!e) return py::none();
            return py::cast(to_list(*e));
        }, "Next edge as a vertex list, or None once exhausted.")
        .def_property_readonly("emitted", &EdgeStream::emitted);

    m.def("sample_binomial", [](const Params& p, double prob, std::uint64_t seed) {
        return sample_binomial(p, Probability(prob), seed);
    }, py::arg("params"), py::arg("p"), py::arg("seed"));
    m.def("sample_uniform", &sample_uniform, py::arg("params"), py::arg("m"), py::arg("seed"));
}

void bind_connectivity(py::module_& m) {
    py::class_<ComponentTracker>(m, "ComponentTracker")
        .def(py::init<Params, std::uint64_t>(), py::arg("params"), py::arg("memcap") = kDefaultMemcap)
        .def("insert_edge", [](ComponentTracker& t, const std::vector<Vertex>& e) { t.insert_edge(to_set(e)); })
        .def("is_j_connected", &ComponentTracker::is_j_connected)
        .def("isolated_count", &ComponentTracker::isolated_count)
        .def("covered_count", &ComponentTracker::covered_count)
        .def("component_count", &ComponentTracker::component_count)
        .def("largest_component_size", &ComponentTracker::largest_component_size)
        .def("degree_histogram", &ComponentTracker::degree_histogram)
        .def("component_partition", [](ComponentTracker& t) { return t.component_partition().blocks; });

    m.def("j_size", &j_size, py::arg("hypergraph"));
    m.def("bfs_j_components", [](const Hypergraph& h) { return bfs_j_components(h).blocks; }, py::arg("hypergraph"));
}

void bind_statistics(py::module_& m) {
    m.def("p_from_c", [](const Params& p, std::uint32_t s, double c) { return p_from_c(p, {s, c}).value(); },
          py::arg("params"), py::arg("s"), py::arg("c"));
    m.def("p_threshold", [](const Params& p) { return p_threshold(p).value(); }, py::arg("params"));
    m.def("exact_expected_ds", [](const Params& p, double prob, std::uint32_t s) {
        return exact_expected_ds(p, Probability(prob), s);
    }, py::arg("params"), py::arg("p"), py::arg("s"));
    m.def("limiting_lambda", &limiting_lambda, py::arg("j"), py::arg("s"), py::arg("c"));
    m.def("poisson_pmf", &poisson_pmf, py::arg("lam"), py::arg("i"));
    m.def("tv_distance", [](std::vector<double> a, double tail_a, std::vector<double> b, double tail_b) {
        return tv_distance(Pmf(std::move(a), tail_a), Pmf(std::move(b), tail_b));
    }, py::arg("a"), py::arg("tail_a"), py::arg("b"), py::arg("tail_b"));
}

void bind_experiments(py::module_& m) {
    py::class_<HittingRecord>(m, "HittingRecord")
        .def_readonly("tau_i", &HittingRecord::tau_i)
        .def_readonly("tau_c", &HittingRecord::tau_c)
        .def_readonly("seed", &HittingRecord::seed);
    py::class_<CoincidenceEstimate>(m, "CoincidenceEstimate")
        .def_readonly("trials", &CoincidenceEstimate::trials)
        .def_readonly("coincidences", &CoincidenceEstimate::coincidences)
        .def_readonly("point", &CoincidenceEstimate::point)
        .def_readonly("ci_low", &CoincidenceEstimate::ci_low)
        .def_readonly("ci_high", &CoincidenceEstimate::ci_high);
    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("c", &SweepRow::c)
        .def_readonly("trials", &SweepRow::trials)
        .def_readonly("frac_no_isolated", &SweepRow::frac_no_isolated)
        .def_readonly("frac_connected", &SweepRow::frac_connected);

    m.def("run_hitting_trial", [](const Params& p, std::uint64_t seed) { return run_hitting_trial(p, seed); },
          py::arg("params"), py::arg("seed"));
    m.def("estimate_coincidence", [](const Params& p, std::uint64_t trials, std::uint64_t seed, unsigned threads) {
        py::gil_scoped_release release;
        return estimate_coincidence(p, trials, seed, threads);
    }, py::arg("params"), py::arg("trials"), py::arg("base_seed"), py::arg("threads") = 1);
    m.def("sample_degree_counts", [](const Params& p, std::uint32_t s, double c, std::uint64_t trials,
                                     std::uint64_t seed) {
        const auto rep = sample_degree_counts(p, {s, c}, trials, seed);
        py::dict d;
        d["p"] = rep.p;
        d["observations"] = rep.observations;
        d["mean"] = rep.mean;
        d["std_error"] = rep.std_error;
        d["exact_expectation"] = rep.exact_expectation;
        d["limit_lambda"] = rep.limit_lambda;
        d["tv_to_poisson"] = rep.tv_to_poisson;
        return d;
    }, py::arg("params"), py::arg("s"), py::arg("c"), py::arg("trials"), py::arg("base_seed"));
    m.def("threshold_sweep", [](const Params& p, const std::vector<double>& cs, std::uint64_t trials,
                                std::uint64_t seed, const std::string& model) {
        if (model != "binomial" && model != "uniform") throw InvalidInput("model must be 'binomial' or 'uniform'");
        return threshold_sweep(p, cs, trials, seed, model == "uniform" ? SweepModel::uniform : SweepModel::binomial);
    }, py::arg("params"), py::arg("c_values"), py::arg("trials"), py::arg("base_seed"), py::arg("model") = "binomial");
    m.def("enumerate_well_constructed", [](std::uint32_t k, std::uint32_t j, std::uint32_t max_jsize) {
        std::vector<std::tuple<std::uint32_t, std::uint64_t, std::string>> rows;
        for (const auto& r : enumerate_well_constructed(k, j, max_jsize)) rows.emplace_back(r.jsize, r.count, r.bound_string());
        return rows;
    }, py::arg("k"), py::arg("j"), py::arg("max_jsize"));
    m.def("supercritical_component", [](const Params& p, double eps, std::uint64_t seed) {
        const auto r = supercritical_component(p, eps, seed);
        py::dict d;
        d["p_star"] = r.p_star;
        d["largest_jsize"] = r.largest_jsize;
        d["coverage_min"] = r.coverage_min;
        d["coverage_max"] = r.coverage_max;
        d["coverage_mean"] = r.coverage_mean;
        return d;
    }, py::arg("params"), py::arg("epsilon"), py::arg("seed"));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Random k-uniform hypergraphs and high-order (j-set) connectivity.";

    py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
    py::register_exception<ResourceError>(m, "ResourceError", PyExc_MemoryError);
    py::register_exception<OverflowError>(m, "OverflowError", PyExc_OverflowError);

    bind_combinatorics(m);
    bind_model(m);
    bind_connectivity(m);
    bind_statistics(m);
    bind_experiments(m);
}
