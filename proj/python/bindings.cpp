#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>
#include <optional>
#include <sstream>

#include "sdsq/ansatz.hpp"
#include "sdsq/errors.hpp"
#include "sdsq/model.hpp"
#include "sdsq/pauli.hpp"
#include "sdsq/spectrum.hpp"
#include "sdsq/thermo.hpp"
#include "sdsq/vqe.hpp"
#include "sdsq/wavefn.hpp"

namespace py = pybind11;
using namespace sdsq;

namespace {

using CArray = py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>;

CArray to_numpy(const ComplexMatrix& m) {
  CArray out({m.rows(), m.cols()});
  std::copy(m.entries().begin(), m.entries().end(), out.mutable_data());
  return out;
}

CArray to_numpy(const ComplexVector& v) {
  CArray out(v.size());
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

ComplexMatrix from_numpy(const CArray& a) {
  if (a.ndim() != 2) throw DimensionError("expected a 2-D array");
  const auto rows = static_cast<std::size_t>(a.shape(0)), cols = static_cast<std::size_t>(a.shape(1));
  return ComplexMatrix(rows, cols, std::vector<Complex>(a.data(), a.data() + rows * cols));
}

ComplexVector vector_from_numpy(const CArray& a) {
  if (a.ndim() != 1) throw DimensionError("expected a 1-D array");
  return ComplexVector(a.data(), a.data() + a.size());
}

ModelConfig model(unsigned qubits, std::optional<double> lambda, const std::string& basis) {
  ModelConfig c{lambda.value_or(ModelConfig::default_lambda(qubits)), qubits, parse_basis(basis)};
  c.validate();
  return c;
}

py::object finite_or_none(double x) { return std::isfinite(x) ? py::cast(x) : py::none(); }

py::dict spectrum_dict(const ConstrainedSpectrum& s, unsigned qubits) {
  py::dict d;
  d["method"] = std::string(to_string(s.method));
  d["tol"] = s.tol;
  d["eigenvalues"] = s.eigenvalues;
  d["residuals"] = s.residuals;
  const std::size_t dim = std::size_t{1} << qubits;
  CArray vecs({s.eigenvectors.size(), dim});
  for (std::size_t k = 0; k < s.eigenvectors.size(); ++k)
    std::copy(s.eigenvectors[k].begin(), s.eigenvectors[k].end(), vecs.mutable_data(k, 0));
  d["eigenvectors"] = vecs;
  py::list ranked;
  for (const ConstraintCandidate& c : s.ranked) ranked.append(py::make_tuple(c.eigenvalue, c.residual));
  d["ranked"] = ranked;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Quantum simulation of a Schwarzschild-de Sitter minisuperspace model";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ContractError>(m, "ContractError", base.ptr());
  py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
  py::register_exception<UnsupportedBasisError>(m, "UnsupportedBasisError", base.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());
  py::register_exception<RunError>(m, "RunError", base.ptr());
  auto domain = py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<NoHorizonError>(m, "NoHorizonError", domain.ptr());

  m.def("default_lambda", &ModelConfig::default_lambda, py::arg("qubits"));
  m.def("nariai_mass", &nariai_mass, py::arg("lambda_"));

  m.def(
      "build_operators",
      [](unsigned qubits, std::optional<double> lambda, const std::string& basis) {
        const OperatorPair ops = build_operators(model(qubits, lambda, basis));
        return py::make_tuple(to_numpy(ops.hamiltonian_2bH.matrix()), to_numpy(ops.mass_4M.matrix()));
      },
      py::arg("qubits"), py::arg("lambda_") = py::none(), py::arg("basis") = "oscillator",
      "Returns (2bH, 4M) as dense complex arrays.");

  m.def(
      "commutator_norm",
      [](unsigned qubits, std::optional<double> lambda) {
        return constraint_commutator_norm(build_operators(model(qubits, lambda, "oscillator")));
      },
      py::arg("qubits"), py::arg("lambda_") = py::none());

  m.def(
      "decompose",
      [](const CArray& matrix, double threshold) {
        py::list out;
        for (const PauliTerm& t : decompose(HermitianOperator(from_numpy(matrix)), threshold).terms)
          out.append(py::make_tuple(t.string.label(), t.coefficient));
        return out;
      },
      py::arg("matrix"), py::arg("threshold") = 1e-12, "Pauli expansion as [(label, coefficient), ...].");

  m.def(
      "reconstruct",
      [](const std::vector<std::pair<std::string, double>>& terms) {
        if (terms.empty()) throw ContractError("reconstruct needs at least one term");
        PauliSum sum;
        for (const auto& [label, c] : terms) sum.terms.push_back({PauliString::from_label(label), c});
        sum.qubits = sum.terms.front().string.qubits();
        return to_numpy(reconstruct(sum).matrix());
      },
      py::arg("terms"));

  m.def(
      "run_vqe",
      [](unsigned qubits, std::optional<double> lambda, unsigned depth, const std::string& entanglement,
         const std::vector<std::uint64_t>& seeds) {
        const ModelConfig cfg = model(qubits, lambda, "oscillator");
        const VqeRun run = run_vqe(cfg, AnsatzSpec{qubits, depth, parse_entanglement(entanglement)}, {}, seeds);
        const double exact = eig_hermitian(build_operators(cfg).mass_4M).eigenvalues.front();
        py::dict d;
        d["best_value"] = run.best_value;
        d["exact_min"] = exact;
        d["gap"] = run.best_value - exact;
        d["best_seed"] = run.best_seed;
        d["best_theta"] = run.best_theta;
        d["evaluations"] = run.total_evaluations();
        py::list starts;
        for (const VqeStart& s : run.starts) {
          py::dict sd;
          sd["seed"] = s.seed;
          sd["failed"] = s.failed;
          sd["final_value"] = s.final_value;
          sd["evaluations"] = s.evaluations.size();
          starts.append(sd);
        }
        d["starts"] = starts;
        return d;
      },
      py::arg("qubits"), py::arg("lambda_") = py::none(), py::arg("depth") = 3, py::arg("entanglement") = "full",
      py::arg("seeds") = std::vector<std::uint64_t>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10});

  m.def(
      "ansatz_state",
      [](unsigned qubits, unsigned depth, const std::string& entanglement, const std::vector<double>& theta) {
        return to_numpy(prepare(AnsatzSpec{qubits, depth, parse_entanglement(entanglement)}, theta).amplitudes);
      },
      py::arg("qubits"), py::arg("depth"), py::arg("entanglement"), py::arg("theta"));

  m.def(
      "constrained_spectrum",
      [](unsigned qubits, std::optional<double> lambda, const std::string& method, std::optional<double> tol) {
        const ConstraintMethod cm = parse_constraint_method(method);
        const OperatorPair ops = build_operators(model(qubits, lambda, "oscillator"));
        return spectrum_dict(constrained_spectrum(ops, cm, tol.value_or(default_constraint_tol(cm))), qubits);
      },
      py::arg("qubits"), py::arg("lambda_") = py::none(), py::arg("method") = "filter", py::arg("tol") = py::none());

  m.def(
      "horizons",
      [](double M, double lambda) {
        const thermo::Horizons h = thermo::horizons(M, lambda);
        return py::make_tuple(h.r_bh, h.r_ch, h.r_neg);
      },
      py::arg("M"), py::arg("lambda_"), "Returns (r_bh, r_ch, r_neg).");

  m.def(
      "thermo_point",
      [](double M, double lambda) {
        const thermo::ThermoPoint p = thermo::thermo_point(M, lambda);
        py::dict d;
        d["M"] = p.M;
        d["lambda"] = p.lambda;
        d["ell"] = p.ell;
        d["r_bh"] = p.r_bh;
        d["r_ch"] = p.r_ch;
        d["S_bh"] = p.s_bh;
        d["S_ch"] = p.s_ch;
        d["S_tot"] = p.s_tot;
        d["beta_bh"] = finite_or_none(p.beta_bh);
        d["beta_ch"] = finite_or_none(p.beta_ch);
        d["T_bh"] = finite_or_none(p.t_bh);
        d["T_ch"] = finite_or_none(p.t_ch);
        return d;
      },
      py::arg("M"), py::arg("lambda_"), "Infinite values are returned as None.");

  m.def("partition_function", &thermo::partition_function, py::arg("beta"), py::arg("rel_tol") = 1e-12);

  m.def(
      "sample_wavefunction",
      [](const CArray& psi, unsigned qubits, double lo, double hi, std::size_t samples) {
        const GridAxis axis{lo, hi, samples};
        const FieldGrid f = sample_wavefunction(reshape_state(vector_from_numpy(psi), qubits), axis, axis);
        CArray values({f.u.size(), f.v.size()});
        std::copy(f.values.begin(), f.values.end(), values.mutable_data());
        py::dict d;
        d["u"] = f.u;
        d["v"] = f.v;
        d["values"] = values;
        d["norm"] = grid_norm(f);
        return d;
      },
      py::arg("psi"), py::arg("qubits"), py::arg("lo") = -8.0, py::arg("hi") = 8.0, py::arg("samples") = 161);

  m.def(
      "wkb",
      [](double a, double b, double mass, double lambda, const std::string& variant) {
        const WkbSample s = wkb(a, b, mass, lambda, parse_wkb_variant(variant));
        const char* region = s.region == WkbRegion::allowed     ? "allowed"
                             : s.region == WkbRegion::forbidden ? "forbidden"
                                                                : "turning_point";
        return py::make_tuple(s.value, region);
      },
      py::arg("a"), py::arg("b"), py::arg("m"), py::arg("lambda_"), py::arg("variant") = "printed",
      "Returns (value, region).");
}
