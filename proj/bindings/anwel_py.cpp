#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "anwel/counts.hpp"
#include "anwel/report_io.hpp"
#include "anwel/strata.hpp"

namespace py = pybind11;

namespace {

anwel::RealForm parse_form(int n, const std::string& form) {
    if (form.empty()) return n % 2 == 1 ? anwel::RealForm::H : anwel::RealForm::Even;
    if (form == "h") return anwel::RealForm::H;
    if (form == "e") return anwel::RealForm::E;
    if (form == "even") return anwel::RealForm::Even;
    throw anwel::BadIndices("form must be h, e or even");
}

anwel::CountOptions make_options(std::uint64_t seed, double epsilon) {
    anwel::CountOptions opts;
    opts.seed = seed;
    opts.epsilon = epsilon;
    return opts;
}

}  // namespace

PYBIND11_MODULE(_anwel, m) {
    m.doc() = "signed counts of real members on the discriminant strata of A_n deformations";

    m.def("delta_invariant", &anwel::delta_invariant, py::arg("n"));
    m.def("milnor_number", &anwel::milnor_number, py::arg("n"));
    m.def("cusp_count_ec", &anwel::cusp_count_ec, py::arg("n"));
    m.def("multiplicity_eg", &anwel::multiplicity_eg, py::arg("n"), py::arg("i"));
    m.def("multiplicity_ec", &anwel::multiplicity_ec, py::arg("k"));

    m.def(
        "count_eg",
        [](int n, int i, const std::string& form, std::uint64_t seed, double epsilon) {
            const anwel::AnFamily family(n, parse_form(n, form));
            return anwel::emit_json(anwel::count_eg(family, i, make_options(seed, epsilon)));
        },
        py::arg("n"), py::arg("i"), py::arg("form") = "", py::arg("seed") = 0,
        py::arg("epsilon") = 1e-3,
        "Signed count over one random equigeneric slice; returns the report as JSON.");

    m.def(
        "count_ec",
        [](int k, std::uint64_t seed, double epsilon) {
            return anwel::emit_json(anwel::count_ec(k, make_options(seed, epsilon)));
        },
        py::arg("k"), py::arg("seed") = 0, py::arg("epsilon") = 1e-3,
        "Signed count over one random equiclassical slice of A_2k; JSON report.");

    m.def(
        "count_discr",
        [](int n, const std::string& form, std::uint64_t seed, double epsilon) {
            const anwel::AnFamily family(n, parse_form(n, form));
            return anwel::emit_json(anwel::count_discr(family, make_options(seed, epsilon)));
        },
        py::arg("n"), py::arg("form") = "", py::arg("seed") = 0, py::arg("epsilon") = 1e-3,
        "Signed count of singular members along one random line; JSON report.");

    m.def(
        "invariance",
        [](const std::string& stratum, int n, int i, const std::string& form, int trials,
           std::uint64_t seed, double epsilon) {
            const anwel::Stratum st = anwel::stratum_from_string(stratum);
            if (st == anwel::Stratum::EG && i < 1) i = anwel::delta_invariant(n);
            const anwel::AnFamily family(n, parse_form(n, form));
            anwel::InvarianceParams params;
            params.trials = trials;
            params.epsilon = epsilon;
            params.seed = seed;
            return anwel::emit_json(anwel::invariance_experiment(family, st, i, params));
        },
        py::arg("stratum"), py::arg("n"), py::arg("i") = 0, py::arg("form") = "",
        py::arg("trials") = 20, py::arg("seed") = 0, py::arg("epsilon") = 1e-3,
        "Repeat a sampled count over independent slices; JSON verdict.");

    m.def(
        "table_json",
        [](int n_max, std::uint64_t seed) {
            return anwel::emit_json(anwel::closed_form_table(n_max, seed));
        },
        py::arg("n_max") = 6, py::arg("seed") = 0);

    m.def(
        "table_csv",
        [](int n_max, std::uint64_t seed) {
            return anwel::emit_csv(anwel::closed_form_table(n_max, seed));
        },
        py::arg("n_max") = 6, py::arg("seed") = 0);

    m.def(
        "ec_closed_form",
        [](int k) {
            py::list out;
            for (const anwel::ECWitness& w : anwel::ec_closed_form(k)) {
                py::dict d;
                d["beta"] = w.beta;
                d["Q"] = w.Q.coeffs();
                out.append(std::move(d));
            }
            return out;
        },
        py::arg("k"),
        "All tangent-cone equiclassical witnesses (beta and the coefficients of Q).");
}
