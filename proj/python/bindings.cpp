#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "exchgraph/degrees.hpp"
#include "exchgraph/error.hpp"
#include "exchgraph/gf2.hpp"
#include "exchgraph/hub.hpp"
#include "exchgraph/motifs.hpp"
#include "exchgraph/serialize.hpp"

namespace py = pybind11;
using namespace exchgraph;

namespace {

// Specs cross the boundary as JSON text; the Python wrapper handles dicts.
template <class T>
T parse(const std::string& text, const char* what) {
    return parse_as<T>(json::parse(text), what);
}

py::array_t<std::uint8_t> to_array(const BitMatrix& x) {
    py::array_t<std::uint8_t> a({x.rows(), x.cols()});
    auto v = a.mutable_unchecked<2>();
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) v(i, j) = x.get(i, j);
    return a;
}

BitMatrix from_array(const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 2) throw InvalidParameter("matrix must be two-dimensional");
    const auto v = a.unchecked<2>();
    BitMatrix x(v.shape(0), v.shape(1));
    for (py::ssize_t i = 0; i < v.shape(0); ++i)
        for (py::ssize_t j = 0; j < v.shape(1); ++j)
            if (v(i, j)) x.set(i, j, true);
    return x;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exchangeable random graph ensembles";

    py::register_exception<InvalidParameter>(m, "InvalidParameter", PyExc_ValueError);
    py::register_exception<NoThresholdError>(m, "NoThresholdError", PyExc_RuntimeError);

    m.def("sample_graph", [](const std::string& cfg, long replica) {
        const auto c = parse<EnsembleConfig>(cfg, "ensemble");
        validate(c);
        return to_array(sample_graph(c, replica).matrix);
    });
    m.def("moment", [](const std::string& spec, long n, long i) {
        return mixing::moment(parse<MixingSpec>(spec, "mixing"), n, i);
    });
    m.def("xi", [](const std::string& spec, long n, long i) { return mixing::xi(parse<MixingSpec>(spec, "mixing"), n, i); });
    m.def("out_pmf", [](const std::string& spec, long n, long kmax) {
        return degrees::out_pmf_table(parse<MixingSpec>(spec, "mixing"), n, kmax);
    });
    m.def("in_pmf", [](const std::string& spec, long n, long rows, long kmax) {
        return degrees::in_pmf_table(parse<MixingSpec>(spec, "mixing"), n, rows, kmax);
    });
    m.def("limit_pmf", [](const std::string& law, long kmax) {
        return degrees::limit_pmf_table(parse<LimitLaw>(law, "limit"), kmax);
    });
    m.def("count_motifs", [](const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& a,
                             const std::vector<int>& ks) { return json(motifs::count_motifs(from_array(a), ks)).dump(); });
    m.def("mean_motifs", [](const std::string& spec, long n, long rows) {
        return json(motifs::mean_motifs(parse<MixingSpec>(spec, "mixing"), n, rows)).dump();
    });
    m.def("var_motifs", [](const std::string& spec, long n) {
        return json(motifs::var_motifs(parse<MixingSpec>(spec, "mixing"), n)).dump();
    });
    m.def("hub_statistic", [](const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& a) {
        return hub_statistic(from_array(a));
    });
    m.def("hub_limit_cdf", &hub_limit_cdf);
    m.def("gf2_rank", [](const py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>& a) {
        return json(gf2::rank_gf2(from_array(a))).dump();
    });
    m.def("expected_solutions", [](const std::string& spec, long n, long rows) {
        return json(gf2::expected_solutions(parse<MixingSpec>(spec, "mixing"), n, rows)).dump();
    });
    m.def("rate_sup", [](const std::string& seed, double gamma) {
        return json(gf2::rate_sup(parse<Seed>(seed, "seed"), gamma)).dump();
    });
    m.def("gamma_critical", [](const std::string& seed) {
        return json(gf2::gamma_critical(parse<Seed>(seed, "seed"))).dump();
    });
}
