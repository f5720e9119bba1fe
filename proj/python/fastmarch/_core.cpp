#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "fmm/experiments.hpp"
#include "fmm/local_solver.hpp"
#include "fmm/marcher.hpp"
#include "fmm/speed_catalog.hpp"
#include "fmm/verify.hpp"

namespace py = pybind11;
using namespace fmm;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

GridSpec square_spec(const Array& a, const char* what) {
    if (a.ndim() != 2 || a.shape(0) != a.shape(1) || a.shape(0) < 3) {
        throw py::value_error(std::string(what) + " must be a square (n+1, n+1) array with n >= 2");
    }
    return GridSpec(static_cast<int>(a.shape(0)) - 1);
}

std::vector<double> to_vector(const Array& a) {
    return std::vector<double>(a.data(), a.data() + a.size());
}

SpeedField to_field(const Array& speed) {
    return SpeedField(square_spec(speed, "speed"), to_vector(speed));
}

GridFunction to_grid(const Array& t, const GridSpec& spec, const char* what) {
    if (!(square_spec(t, what) == spec)) {
        throw py::value_error(std::string(what) + " does not match the speed grid");
    }
    return GridFunction(spec, to_vector(t));
}

BoundarySet to_sources(const GridSpec& spec, const std::vector<std::pair<int, int>>& pts) {
    std::vector<GridIndex> v;
    v.reserve(pts.size());
    for (const auto& [i, j] : pts) v.push_back({i, j});
    return BoundarySet(spec, std::move(v));
}

Array to_array(const GridFunction& t) {
    const auto n1 = static_cast<py::ssize_t>(t.spec().n() + 1);
    Array out({n1, n1});
    std::copy(t.values().begin(), t.values().end(), out.mutable_data());
    return out;
}

py::dict metrics_dict(const RunMetrics& m) {
    py::dict d;
    d["pops"] = m.pops;
    d["stale_skips"] = m.stale_skips;
    d["insertions"] = m.insertions;
    d["reinsertions"] = m.reinsertions;
    d["bucket_traversals"] = m.bucket_traversals;
    d["comparisons"] = m.comparisons;
    d["cycles"] = m.cycles;
    d["max_point_insertions"] = m.max_point_insertions;
    d["work"] = m.work();
    return d;
}

py::dict report_dict(const ErrorReport& r) {
    py::dict d;
    d["n"] = r.n;
    d["buckets"] = r.buckets;
    d["f_ratio"] = r.f_ratio;
    d["max_rel_err"] = r.max_rel_err;
    d["error_bound"] = r.error_bound;
    d["monotone_ok"] = r.monotone_ok;
    d["violation"] = r.violation;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Fast marching for the 2-D eikonal equation with exact and untidy queues.";

    py::register_exception<OracleDivergenceError>(m, "OracleDivergenceError", PyExc_RuntimeError);
    py::register_exception<ErrorBoundViolation>(m, "ErrorBoundViolation", PyExc_RuntimeError);
    py::register_exception<BucketWindowError>(m, "BucketWindowError", PyExc_RuntimeError);
    py::register_exception<ComparisonHypothesisError>(m, "ComparisonHypothesisError",
                                                      PyExc_ValueError);

    m.def("solve_local",
          [](double a, double b, double h, double f) { return solve_local({a, b, h, f}); },
          py::arg("a"), py::arg("b"), py::arg("h"), py::arg("f"),
          "Upwind update from the smaller horizontal (a) and vertical (b) neighbour values.");
    m.def("hopf_lax",
          [](double a, double b, double h, double f, int resolution) {
              return hopf_lax({a, b, h, f}, resolution);
          },
          py::arg("a"), py::arg("b"), py::arg("h"), py::arg("f"), py::arg("resolution") = 4096);

    m.def("speed_field",
          [](const std::string& name, int n, const std::map<std::string, double>& params) {
              SpeedParams p(params.begin(), params.end());
              const auto f = SpeedModel(name, std::move(p)).build(GridSpec(n));
              return to_array(GridFunction(f.spec(), std::vector<double>(f.samples().begin(),
                                                                         f.samples().end())));
          },
          py::arg("name"), py::arg("n"), py::arg("params") = std::map<std::string, double>{},
          "Sample a catalog speed model on the (n+1)^2 lattice.");

    m.def("march",
          [](const Array& speed, const std::vector<std::pair<int, int>>& sources,
             const std::string& queue, std::optional<int> buckets, std::optional<double> f_min) {
              const auto f = to_field(speed);
              const auto src = to_sources(f.spec(), sources);
              MarchResult r = [&] {
                  if (parse_queue_kind(queue) == QueueKind::Exact) {
                      if (buckets || f_min) {
                          throw py::value_error("buckets and f_min apply only to the untidy queue");
                      }
                      py::gil_scoped_release release;
                      return march_exact(f, src);
                  }
                  if (!buckets) throw py::value_error("the untidy queue needs buckets");
                  py::gil_scoped_release release;
                  return march_untidy(f, src, UntidyParams{*buckets, f_min});
              }();
              return py::make_tuple(to_array(r.t), metrics_dict(r.metrics));
          },
          py::arg("speed"), py::arg("sources"), py::arg("queue") = "exact",
          py::arg("buckets") = py::none(), py::arg("f_min") = py::none(),
          "Fast marching solve. Returns (T, metrics).");

    m.def("sweep_oracle",
          [](const Array& speed, const std::vector<std::pair<int, int>>& sources, double tol) {
              const auto f = to_field(speed);
              const auto src = to_sources(f.spec(), sources);
              py::gil_scoped_release release;
              auto t = sweep_oracle(f, src, tol);
              py::gil_scoped_acquire acquire;
              return to_array(t);
          },
          py::arg("speed"), py::arg("sources"), py::arg("tol") = 1e-13);

    m.def("residual_range",
          [](const Array& t, const Array& speed, const std::vector<std::pair<int, int>>& sources) {
              const auto f = to_field(speed);
              const auto r =
                  residual_range(to_grid(t, f.spec(), "T"), f, to_sources(f.spec(), sources));
              return py::make_tuple(r.min, r.max);
          },
          py::arg("t"), py::arg("speed"), py::arg("sources"));

    m.def("check_comparison",
          [](const Array& s, const Array& t, const Array& speed,
             const std::vector<std::pair<int, int>>& sources) {
              const auto f = to_field(speed);
              return check_comparison(to_grid(s, f.spec(), "S"), to_grid(t, f.spec(), "T"), f,
                                      to_sources(f.spec(), sources));
          },
          py::arg("s"), py::arg("t"), py::arg("speed"), py::arg("sources"));

    m.def("error_report",
          [](const Array& speed, const std::vector<std::pair<int, int>>& sources, int buckets,
             std::optional<double> f_min, std::optional<double> f_max, bool raise_on_violation) {
              const auto f = to_field(speed);
              const auto src = to_sources(f.spec(), sources);
              const ErrorBoundParams p{buckets, f_min, f_max};
              return report_dict(raise_on_violation ? check_error_bound(f, src, p)
                                                    : measure_error_bound(f, src, p));
          },
          py::arg("speed"), py::arg("sources"), py::arg("buckets"), py::arg("f_min") = py::none(),
          py::arg("f_max") = py::none(), py::arg("raise_on_violation") = true,
          "Compare untidy against exact marching and the sqrt(2)*ratio/buckets bound.");

    m.def("fig1",
          [](int n, std::vector<double> ratios, std::vector<int> buckets) {
              Fig1Config cfg;
              cfg.n = n;
              cfg.ratios = std::move(ratios);
              cfg.buckets = std::move(buckets);
              py::list out;
              for (const auto& row : run_fig1(cfg)) {
                  py::dict d;
                  d["r"] = row.r;
                  d["n_B"] = row.buckets;
                  d["n"] = row.n;
                  d["max_rel_err"] = row.max_rel_err;
                  d["bound"] = row.bound;
                  out.append(d);
              }
              return out;
          },
          py::arg("n") = 100, py::arg("ratios") = Fig1Config{}.ratios,
          py::arg("buckets") = Fig1Config{}.buckets);

    m.def("fig2",
          [](std::vector<int> sizes, std::optional<int> buckets, std::uint64_t seed) {
              Fig2Config cfg;
              cfg.sizes = std::move(sizes);
              cfg.buckets = buckets;
              cfg.seed = seed;
              py::list out;
              for (const auto& row : run_fig2(cfg)) {
                  py::dict d = metrics_dict(row.metrics);
                  d["n"] = row.n;
                  d["N"] = row.interior_points;
                  d["queue_kind"] = std::string(to_string(row.queue));
                  d["n_B"] = row.buckets;
                  out.append(d);
              }
              return out;
          },
          py::arg("sizes") = Fig2Config{}.sizes, py::arg("buckets") = py::none(),
          py::arg("seed") = 1);
}
