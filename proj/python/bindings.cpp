#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "trife/cli.hpp"
#include "trife/io.hpp"

namespace py = pybind11;
using namespace trife;

namespace
{

SampleSpec make_spec(std::uint64_t seed, int count, double half_width)
{
    SampleSpec s;
    s.seed = seed;
    s.count = count;
    s.domain = {-half_width, half_width, -half_width, half_width};
    return s;
}

} // namespace

PYBIND11_MODULE(_trife, m)
{
    m.doc() = "Weierstrass-function solutions of a three-function functional equation";

    py::register_exception<Error>(m, "TrifeError");
    py::register_exception<PoleError>(m, "PoleError");

    py::class_<WeierstrassEvaluator, std::shared_ptr<WeierstrassEvaluator>>(m, "Weierstrass")
        .def(py::init([](Complex g2, Complex g3) { return std::make_shared<WeierstrassEvaluator>(WeierstrassParams{g2, g3}); }),
             py::arg("g2"), py::arg("g3"))
        .def("p", &WeierstrassEvaluator::p)
        .def("p_prime", &WeierstrassEvaluator::p_prime)
        .def("zeta", &WeierstrassEvaluator::zeta)
        .def("sigma", &WeierstrassEvaluator::sigma)
        .def("log_sigma", &WeierstrassEvaluator::log_sigma)
        .def_property_readonly("trusted_radius", &WeierstrassEvaluator::trusted_radius)
        .def("addition_residual", [](const WeierstrassEvaluator &ev, Complex x, Complex a) {
            return p_addition_residual(ev, x, a);
        });

    py::class_<SolutionTriple>(m, "SolutionTriple")
        .def_property_readonly("family", [](const SolutionTriple &s) { return std::string(family_name(s.family)); })
        .def("f", &SolutionTriple::f)
        .def("g", &SolutionTriple::g)
        .def("h", &SolutionTriple::h)
        .def("F", &SolutionTriple::F)
        .def("G", &SolutionTriple::G)
        .def("H", &SolutionTriple::H)
        .def("mismatch", [](const SolutionTriple &s, Complex x, Complex y) { return fe_mismatch(s, x, y); });

    m.def("family_from_json", [](const std::string &text) { return family_from_json(Json::parse(text)).build(); },
          "Build a solution triple from a JSON family description.");

    m.def(
        "elliptic_solution",
        [](Complex alpha, Complex beta, std::array<Complex, 3> gamma, Complex a1, Complex a2, Complex g2, Complex g3) {
            EllipticTriadParams p;
            p.alpha = alpha;
            p.beta = beta;
            p.gamma = gamma;
            p.a1 = a1;
            p.a2 = a2;
            p.weier = {g2, g3};
            return make_elliptic_solution(p);
        },
        py::arg("alpha") = Complex{1.0}, py::arg("beta") = Complex{}, py::arg("gamma") = std::array<Complex, 3>{},
        py::arg("a1") = Complex{}, py::arg("a2") = Complex{}, py::arg("g2") = Complex{}, py::arg("g3") = Complex{});

    m.def(
        "entire_solution",
        [](std::array<Complex, 3> alpha, Complex lambda, Complex beta, std::array<Complex, 3> gamma, bool literal) {
            EntireFamilyParams p;
            p.alpha = alpha;
            p.lambda = lambda;
            p.beta = beta;
            p.gamma = gamma;
            return make_entire_solution(p, literal);
        },
        py::arg("alpha"), py::arg("lambda_"), py::arg("beta") = Complex{},
        py::arg("gamma") = std::array<Complex, 3>{}, py::arg("literal") = false);

    m.def(
        "fe14_report",
        [](const SolutionTriple &s, std::uint64_t seed, int count, double half_width, double tol) {
            return to_json(fe14_residual(s, make_spec(seed, count, half_width), tol)).dump();
        },
        py::arg("triple"), py::arg("seed") = 0, py::arg("count") = 200, py::arg("half_width") = 2.0,
        py::arg("tol") = 1e-8);

    m.def(
        "det22_report",
        [](const SolutionTriple &s, std::uint64_t seed, int count, double half_width, double tol) {
            return to_json(det22_residual(s, make_spec(seed, count, half_width), tol)).dump();
        },
        py::arg("triple"), py::arg("seed") = 0, py::arg("count") = 200, py::arg("half_width") = 2.0,
        py::arg("tol") = 1e-7);

    py::class_<PhiChain>(m, "PhiChain")
        .def(py::init([](Complex c0, Complex c1, Complex c2, Complex c3, Complex b3) {
                 return PhiChain::make({c0, c1, c2, c3, b3});
             }),
             py::arg("c0"), py::arg("c1"), py::arg("c2"), py::arg("c3"), py::arg("b3") = Complex{})
        .def_property_readonly("alpha", &PhiChain::alpha)
        .def("u", &PhiChain::u)
        .def("du", &PhiChain::du)
        .def("phi", &PhiChain::phi)
        .def("ode_residual", [](const PhiChain &c, Complex x) { return ode40_residual(c.u(x), c.du(x), c.constants()); });

    m.def(
        "_run_cli",
        [](const std::vector<std::string> &args) {
            std::ostringstream out, err;
            const int code = run_cli(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        "Run the command-line front end in process; returns (exit_code, stdout, stderr).");
}
