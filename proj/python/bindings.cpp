#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>
#include <string>

#include "mgp/classification.hpp"
#include "mgp/config.hpp"
#include "mgp/errors.hpp"
#include "mgp/hyper_opt.hpp"
#include "mgp/model_io.hpp"
#include "mgp/predict.hpp"
#include "mgp/regression.hpp"
#include "mgp/special_functions.hpp"
#include "mgp/toy_data.hpp"
#include "mgp/trunc_gauss.hpp"

namespace py = pybind11;
using nlohmann::json;

namespace {

// JSON strings cross the boundary; the Python wrapper does the dict
// conversion with the standard json module.
mgp::LoadedModel fit_json(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                          const std::string& config, std::vector<std::string> names) {
  const mgp::RunConfig rc = mgp::run_config_from_json(json::parse(config));
  if (names.empty()) {
    for (Eigen::Index d = 0; d < x.cols(); ++d) names.push_back("x" + std::to_string(d + 1));
  }
  if (static_cast<Eigen::Index>(names.size()) != x.cols()) {
    throw mgp::DataError("got " + std::to_string(names.size()) + " feature names for " +
                         std::to_string(x.cols()) + " columns");
  }
  const auto specs = mgp::resolve_kernels(rc.kernels, names);
  mgp::LoadedModel out;
  out.model = rc.task == mgp::Task::kRegression
                  ? mgp::fit(x, y, specs, mgp::hyperparams(rc), rc.fit)
                  : mgp::fit_classifier(x, y, specs, mgp::hyperparams(rc), rc.fit);
  out.meta = {names, rc.target};
  return out;
}

py::dict toy_json(const std::string& config) {
  const mgp::ToyConfig tc = mgp::toy_config_from_json(json::parse(config));
  const mgp::ToyDataset d = mgp::generate_toy(tc);
  py::dict out;
  out["x_train"] = d.x_train;
  out["y_train"] = d.y_train;
  out["f_train"] = d.f_train;
  out["x_test"] = d.x_test;
  out["y_test"] = d.y_test;
  out["f_test"] = d.f_test;
  out["components"] = d.components;
  out["active"] = d.active;
  out["lengthscales"] = mgp::toy_lengthscales(tc);
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Multiple Gaussian process regression and classification";

  py::register_exception<mgp::ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<mgp::DataError>(m, "DataError", PyExc_ValueError);
  py::register_exception<mgp::DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<mgp::NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

  m.def("log_bessel_k", &mgp::log_bessel_k, py::arg("order"), py::arg("z"));
  m.def("dlogk_dorder", &mgp::dlogK_dorder, py::arg("order"), py::arg("z"));
  m.def("std_normal_cdf", &mgp::std_normal_cdf, py::arg("a"));

  m.def(
      "gig_moments",
      [](double omega, double chi, double phi) {
        const mgp::GigMoments g = mgp::moments({omega, chi, phi});
        py::dict out;
        out["mean"] = g.mean ? py::object(py::float_(*g.mean)) : py::object(py::none());
        out["mean_inv"] =
            g.mean_inv ? py::object(py::float_(*g.mean_inv)) : py::object(py::none());
        out["mean_log"] = g.mean_log;
        return out;
      },
      py::arg("omega"), py::arg("chi"), py::arg("phi"));

  m.def(
      "trunc_moments",
      [](double mu, double var, bool positive) {
        const mgp::TruncatedMoments t = mgp::trunc_moments(
            {mu, var, positive ? mgp::TruncationSide::kPositive : mgp::TruncationSide::kNegative});
        return py::make_tuple(t.mean, t.var);
      },
      py::arg("mu"), py::arg("var"), py::arg("positive") = true);

  m.def(
      "solve_hyper",
      [](const std::string& which, double omega, double chi, double phi, double sum_mean,
         double sum_mean_inv, double sum_mean_log, int count, const std::string& preset) {
        mgp::HyperParam w;
        if (which == "omega") {
          w = mgp::HyperParam::kOmega;
        } else if (which == "chi") {
          w = mgp::HyperParam::kChi;
        } else if (which == "phi") {
          w = mgp::HyperParam::kPhi;
        } else {
          throw mgp::ConfigError("unknown parameter '" + which + "'");
        }
        const mgp::SolveResult r =
            mgp::solve_hyper(w, {omega, chi, phi}, {sum_mean, sum_mean_inv, sum_mean_log, count},
                             mgp::parse_preset(preset));
        py::dict out;
        out["value"] = r.value;
        out["residual"] = r.residual;
        out["converged"] = r.converged;
        out["boundary"] = r.boundary;
        out["multiple_roots"] = r.multiple_roots;
        return out;
      },
      py::arg("which"), py::arg("omega"), py::arg("chi"), py::arg("phi"), py::arg("sum_mean"),
      py::arg("sum_mean_inv"), py::arg("sum_mean_log"), py::arg("count"),
      py::arg("preset") = "free");

  m.def("_generate_toy", &toy_json, py::arg("config_json"));

  py::class_<mgp::LoadedModel>(m, "Model")
      .def_property_readonly("task",
                             [](const mgp::LoadedModel& lm) {
                               return std::string(mgp::task_name(lm.model.task));
                             })
      .def_property_readonly("feature_names",
                             [](const mgp::LoadedModel& lm) { return lm.meta.feature_names; })
      .def_property_readonly("weights",
                             [](const mgp::LoadedModel& lm) {
                               return Eigen::VectorXd(lm.model.normalized_weights());
                             })
      .def_property_readonly("gamma_mean",
                             [](const mgp::LoadedModel& lm) { return lm.model.state.gamma_mean; })
      .def_property_readonly("elbo", [](const mgp::LoadedModel& lm) { return lm.model.state.elbo; })
      .def_property_readonly("tau", [](const mgp::LoadedModel& lm) { return lm.model.hyper.tau; })
      .def_property_readonly("converged",
                             [](const mgp::LoadedModel& lm) { return lm.model.report.converged; })
      .def("_report_json",
           [](const mgp::LoadedModel& lm) { return mgp::fit_report_json(lm.model).dump(); })
      .def(
          "predict",
          [](const mgp::LoadedModel& lm, const Eigen::MatrixXd& x) {
            const mgp::PredictiveDistribution pd = mgp::predictive(lm.model, x);
            return py::make_tuple(pd.mean, pd.latent_var, pd.noise_var);
          },
          py::arg("x"))
      .def(
          "predict_proba",
          [](const mgp::LoadedModel& lm, const Eigen::MatrixXd& x) {
            if (lm.model.task != mgp::Task::kBinaryClassification) {
              throw mgp::ConfigError("predict_proba needs a classification model");
            }
            return Eigen::VectorXd(mgp::predict_class_prob(lm.model, x));
          },
          py::arg("x"))
      .def(
          "save", [](const mgp::LoadedModel& lm, const std::string& path) {
            mgp::save_model(path, lm.model, lm.meta);
          },
          py::arg("path"));

  m.def("_fit", &fit_json, py::arg("x"), py::arg("y"), py::arg("config_json"),
        py::arg("feature_names") = std::vector<std::string>{});
  m.def("load", &mgp::load_model, py::arg("path"));
}
