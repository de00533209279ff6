#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "htopt/clipping.hpp"
#include "htopt/hardinstance.hpp"
#include "htopt/noise.hpp"
#include "htopt/optimizers.hpp"
#include "htopt/problems.hpp"
#include "htopt/rng.hpp"
#include "htopt/schedules.hpp"
#include "htopt/trace.hpp"

namespace py = pybind11;
using namespace htopt;

PYBIND11_MODULE(_htopt, m) {
  m.doc() = "Heavy-tailed stochastic optimization core";

  py::class_<RandomSource>(m, "RandomSource")
      .def(py::init<std::uint64_t, std::uint64_t>(), py::arg("seed"),
           py::arg("stream") = 0)
      .def("uniform", &RandomSource::uniform)
      .def("normal", &RandomSource::normal)
      .def("bernoulli", &RandomSource::bernoulli)
      .def("split", &RandomSource::split);

  m.def("clip", &clip, py::arg("v"), py::arg("level"));
  m.def("clip_hvp", &clip_hvp, py::arg("hv"), py::arg("gamma"),
        py::arg("lambda_h_bar"));

  py::enum_<TailKind>(m, "TailKind")
      .value("none", TailKind::none)
      .value("two_sided_pareto", TailKind::two_sided_pareto)
      .value("gaussian", TailKind::gaussian)
      .value("bernoulli_zero_chain", TailKind::bernoulli_zero_chain);

  py::class_<TailSpec>(m, "TailSpec")
      .def(py::init<>())
      .def_readwrite("kind", &TailSpec::kind)
      .def_readwrite("tail_index", &TailSpec::tail_index)
      .def_readwrite("scale", &TailSpec::scale)
      .def_readwrite("per_coordinate", &TailSpec::per_coordinate);

  m.def("sample_two_sided_pareto", &sample_two_sided_pareto);
  m.def("pareto_abs_moment", &pareto_abs_moment);
  m.def("sample_noise_vector", &sample_noise_vector);

  py::class_<Oracle>(m, "Oracle")
      .def("dim", &Oracle::dim)
      .def("value", &Oracle::value)
      .def("gradient", &Oracle::gradient)
      .def("lipschitz_l", &Oracle::lipschitz_l)
      .def("f_star", &Oracle::f_star)
      .def("name", &Oracle::name);

  py::class_<QuadraticProblem, Oracle>(m, "QuadraticProblem")
      .def(py::init<std::size_t, TailSpec, TailSpec>(), py::arg("dim"),
           py::arg("gradient_noise"), py::arg("hessian_noise") = TailSpec{});

  py::class_<WellsProblem, Oracle>(m, "WellsProblem")
      .def(py::init<std::size_t, double, TailSpec, TailSpec>(), py::arg("dim"),
           py::arg("tether"), py::arg("gradient_noise"),
           py::arg("hessian_noise") = TailSpec{});

  py::enum_<Method>(m, "Method")
      .value("nsgd", Method::nsgd)
      .value("nsgdm", Method::nsgdm)
      .value("clip_nsgdm", Method::clip_nsgdm)
      .value("nsgdhess", Method::nsgdhess)
      .value("clip_nsgdhess", Method::clip_nsgdhess);

  py::class_<OptimizerParams>(m, "OptimizerParams")
      .def(py::init<>())
      .def_readwrite("method", &OptimizerParams::method)
      .def_readwrite("gamma", &OptimizerParams::gamma)
      .def_readwrite("alpha", &OptimizerParams::alpha)
      .def_readwrite("lambda_", &OptimizerParams::lambda)
      .def_readwrite("lambda_h_bar", &OptimizerParams::lambda_h_bar)
      .def_readwrite("b_init", &OptimizerParams::b_init);

  py::class_<TraceRow>(m, "TraceRow")
      .def_readonly("t", &TraceRow::t)
      .def_readonly("grad_norm_exact", &TraceRow::grad_norm_exact)
      .def_readonly("momentum_norm", &TraceRow::momentum_norm)
      .def_readonly("q_t", &TraceRow::q_t)
      .def_readonly("grad_clip_active", &TraceRow::grad_clip_active)
      .def_readonly("hvp_clip_active", &TraceRow::hvp_clip_active)
      .def_readonly("samples_used", &TraceRow::samples_used);

  py::class_<RunTrace>(m, "RunTrace")
      .def_readonly("rows", &RunTrace::rows)
      .def("min_grad_norm", &RunTrace::min_grad_norm)
      .def("avg_grad_norm", &RunTrace::avg_grad_norm);

  m.def(
      "run",
      [](const OptimizerParams& p, const Oracle& oracle, long T, std::uint64_t seed) {
        return run(p, oracle, T, seed);
      },
      py::arg("params"), py::arg("oracle"), py::arg("T"), py::arg("seed"));
  m.def("trace_to_csv", &trace_to_csv);

  py::class_<ProblemConstants>(m, "ProblemConstants")
      .def(py::init<>())
      .def_readwrite("delta", &ProblemConstants::delta)
      .def_readwrite("l_smooth", &ProblemConstants::l_smooth)
      .def_readwrite("sigma", &ProblemConstants::sigma)
      .def_readwrite("sigma_h", &ProblemConstants::sigma_h)
      .def_readwrite("p", &ProblemConstants::p)
      .def_readwrite("epsilon", &ProblemConstants::epsilon)
      .def_readwrite("T", &ProblemConstants::T)
      .def_readwrite("delta_prob", &ProblemConstants::delta_prob);

  py::class_<Schedule>(m, "Schedule")
      .def_readonly("gamma", &Schedule::gamma)
      .def_readonly("alpha", &Schedule::alpha)
      .def_readonly("b_init", &Schedule::b_init)
      .def_readonly("lambda_", &Schedule::lambda)
      .def_readonly("lambda_h_bar", &Schedule::lambda_h_bar);

  m.def("schedule_thm2", &schedule_thm2);
  m.def("schedule_thm3", &schedule_thm3);
  m.def("schedule_clip_nsgdm_baseline", &schedule_clip_nsgdm_baseline);

  py::class_<ChainFunction>(m, "ChainFunction")
      .def(py::init([](long t_dim, double nu, double beta) {
             return ChainFunction{t_dim, nu, beta};
           }),
           py::arg("t_dim"), py::arg("nu") = 1.0, py::arg("beta") = 1.0)
      .def_readonly("t_dim", &ChainFunction::t_dim)
      .def_readonly("nu", &ChainFunction::nu)
      .def_readonly("beta", &ChainFunction::beta)
      .def("value", &ChainFunction::value)
      .def("gradient", &ChainFunction::gradient)
      .def("value_at_zero", &ChainFunction::value_at_zero)
      .def("lower_bound", &ChainFunction::lower_bound);

  m.def("prog", &prog, py::arg("x"), py::arg("threshold"));
}
