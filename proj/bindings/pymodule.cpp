#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "subtrees/bounds.hpp"
#include "subtrees/gcount.hpp"
#include "subtrees/montecarlo.hpp"
#include "subtrees/subtree_count.hpp"
#include "subtrees/tree.hpp"

namespace py = pybind11;
using namespace subtrees;

namespace {

using Edges = std::vector<std::pair<int, int>>;

LabelledTree to_tree(int n, const Edges& edges) { return LabelledTree::from_edges(n, edges); }

Edges to_edges(const LabelledTree& t) {
    Edges out;
    for (int u = 1; u <= t.n; ++u)
        for (int v : t.adj[u])
            if (u < v) out.emplace_back(u, v);
    return out;
}

// arbitrary-size integers cross the boundary as native Python ints
py::object to_py_int(const mpz_class& z) {
    return py::module_::import("builtins").attr("int")(z.get_str());
}

py::tuple to_py_interval(const Enclosure& e) { return py::make_tuple(e.lo_d(), e.hi_d()); }

py::dict row_to_dict(const BoundsRow& row) {
    py::dict d;
    d["K"] = row.K;
    d["lower"] = to_py_interval(row.lower);
    d["upper1"] = to_py_interval(row.upper1);
    d["upper2"] = to_py_interval(row.upper2);
    d["conj_upper"] = to_py_interval(row.conj_upper);
    d["r_frac"] = to_py_interval(row.r_frac);
    d["multiplier"] = to_py_interval(row.multiplier);
    return d;
}

}  // namespace

PYBIND11_MODULE(_subtrees, m) {
    m.doc() = "subtree counts of random labelled trees: exact kernels, certified "
              "bounds, and Monte Carlo estimation";

    // --- trees ---------------------------------------------------------------
    m.def("random_tree_edges",
          [](int n, std::uint64_t seed) { return to_edges(random_tree(n, seed)); },
          py::arg("n"), py::arg("seed"),
          "edge list of the uniform random labelled tree for this seed");
    m.def("prufer_encode",
          [](int n, const Edges& edges) { return prufer_encode(to_tree(n, edges)).code; },
          py::arg("n"), py::arg("edges"));
    m.def("prufer_decode",
          [](const std::vector<int>& code) {
              PruferCode pc;
              pc.code = code;
              return to_edges(prufer_decode(pc));
          },
          py::arg("code"));
    m.def("degree_histogram",
          [](int n, const Edges& edges) {
              std::map<int, int> h = degree_histogram(to_tree(n, edges));
              return std::map<int, int>(h.begin(), h.end());
          },
          py::arg("n"), py::arg("edges"));

    // --- subtree counting ------------------------------------------------------
    m.def("rooted_count",
          [](int n, const Edges& edges, int v) { return to_py_int(rooted_count(to_tree(n, edges), v)); },
          py::arg("n"), py::arg("edges"), py::arg("v"),
          "subtrees containing v, plus one for the empty tree");
    m.def("total_count",
          [](int n, const Edges& edges) { return to_py_int(total_count(to_tree(n, edges))); },
          py::arg("n"), py::arg("edges"));
    m.def("brute_force_count",
          [](int n, const Edges& edges) { return to_py_int(brute_force_count(to_tree(n, edges))); },
          py::arg("n"), py::arg("edges"));
    m.def("log_total_count",
          [](int n, const Edges& edges, int prec) {
              return log_total_count(to_tree(n, edges), prec).to_double();
          },
          py::arg("n"), py::arg("edges"), py::arg("prec") = 96);

    // --- rooted-tree census ------------------------------------------------------
    m.def("gcount_table",
          [](int K) {
              GCountTable t = compute_tables(K);
              py::dict out;
              for (int k = 1; k <= K; ++k) {
                  py::dict row;
                  for (const auto& [g, x] : t.at(k)) row[py::int_(g)] = to_py_int(x);
                  out[py::int_(k)] = row;
              }
              return out;
          },
          py::arg("K"), "x(k,g) rows for k = 1..K as nested dicts");
    m.def("multiplier",
          [](int K, int k) { return to_py_interval(multiplier(compute_tables(K), k)); },
          py::arg("K"), py::arg("k"));
    m.def("log_g_moment",
          [](int K, int k) { return to_py_interval(log_g_moment(compute_tables(K), k)); },
          py::arg("K"), py::arg("k"));

    // --- certified bounds -------------------------------------------------------
    m.def("h_fraction", [](int K) { return to_py_interval(h_fraction(K)); }, py::arg("K"));
    m.def("f_density", [](int K, int k) { return to_py_interval(f_closed(K, k)); },
          py::arg("K"), py::arg("k"));
    m.def("identity_check", &identity_check, py::arg("b"));
    m.def("bounds_rows",
          [](int K, int khat) {
              GCountTable t = compute_tables(K);
              std::vector<py::dict> out;
              for (const BoundsRow& row : bounds_rows(t, K, khat)) out.push_back(row_to_dict(row));
              return out;
          },
          py::arg("K"), py::arg("khat") = 10000,
          "certified bound rows for K' = 1..K, endpoints as (lo, hi) pairs");
    m.def("trivial_constants", [] {
        TrivialConstants c = trivial_constants();
        py::dict d;
        d["two_pow_inv_e"] = to_py_interval(c.two_pow_inv_e);
        d["beta_L"] = to_py_interval(c.beta_L);
        d["beta_C"] = to_py_interval(c.beta_C);
        d["beta_R"] = to_py_interval(c.beta_R);
        d["beta"] = to_py_interval(c.beta);
        d["alpha"] = to_py_interval(c.alpha);
        return d;
    });

    // --- simulation ----------------------------------------------------------------
    m.def("run_simulation",
          [](int n, int reps, std::uint64_t seed, int bootstrap, int threads) {
              SimulationSummary s = run_simulation(n, reps, seed, bootstrap, threads);
              py::dict d;
              d["n"] = s.n;
              d["reps"] = s.reps;
              d["seed"] = s.master_seed;
              d["mean_root"] = s.mean_root;
              d["p5"] = s.p5;
              d["p50"] = s.p50;
              d["p95"] = s.p95;
              return d;
          },
          py::arg("n"), py::arg("reps"), py::arg("seed"), py::arg("bootstrap") = 100000,
          py::arg("threads") = 0);
    m.def("trim_partition",
          [](int n, const Edges& edges, int K) {
              TrimCensus c = trim_partition(to_tree(n, edges), K);
              py::dict d;
              d["class_counts"] = std::vector<std::int64_t>(c.class_counts.begin() + 1,
                                                            c.class_counts.end());
              d["remainder"] = c.remainder;
              return d;
          },
          py::arg("n"), py::arg("edges"), py::arg("K"),
          "vertex census of the trimming partition; class_counts[i] is size i+1");
}
