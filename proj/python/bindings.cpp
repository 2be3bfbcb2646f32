#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hnnlab/abelian.hpp"
#include "hnnlab/cli.hpp"
#include "hnnlab/hnn.hpp"
#include "hnnlab/isom.hpp"

namespace py = pybind11;
using namespace hnnlab;

namespace {

Transcription pick(bool as_printed) { return as_printed ? Transcription::AsPrinted : Transcription::Corrected; }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact computations for the HNN lattice Gamma";

    py::register_exception<Error>(m, "HnnLabError");

    m.def(
        "verify",
        [](bool as_printed) {
            py::list out;
            for (const auto& c : verify_presentation(load_gamma(pick(as_printed))).checks) {
                py::dict d;
                d["number"] = c.number;
                d["text"] = c.text;
                d["pass"] = c.pass;
                out.append(d);
            }
            return out;
        },
        py::arg("as_printed") = false);

    m.def(
        "britton",
        [](const std::string& word) {
            const HnnGroup& g = HnnGroup::standard();
            BrittonForm f = g.britton_reduce(g.data().alphabet.parse(word));
            return py::make_tuple(f.to_string(g.data().base_alphabet), f.t_count());
        },
        py::arg("word"));

    m.def(
        "is_trivial", [](const std::string& word) {
            const HnnGroup& g = HnnGroup::standard();
            return g.is_trivial(g.data().alphabet.parse(word));
        },
        py::arg("word"));

    m.def(
        "classify",
        [](const std::string& word) {
            HnnData data = load_gamma();
            return describe(classify(data.assignment.evaluate(data.alphabet.parse(word))));
        },
        py::arg("word"));

    m.def(
        "abelianize",
        [](bool as_printed) {
            Abelianization ab = abelianization(load_gamma(pick(as_printed)).full_presentation());
            std::vector<std::string> tors;
            for (const auto& t : ab.torsion) tors.push_back(to_string(t));
            return py::make_tuple(ab.betti, tors);
        },
        py::arg("as_printed") = false);

    m.def("indices", [] {
        const HnnGroup& g = HnnGroup::standard();
        return py::make_tuple(g.k_table().index(), g.h_table().index());
    });

    m.def("tree_degree", [] { return HnnGroup::standard().tree_degree(); });

    m.def(
        "run",
        [](const std::vector<std::string>& args) {
            auto rep = cli::run(args);
            return py::make_tuple(rep.exit_code, rep.out, rep.result.dump());
        },
        py::arg("args"), "Run a command-line invocation in process: (exit code, stdout, result JSON).");
}
