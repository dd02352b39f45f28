#include "mgp/model_io.hpp"

#include <fstream>

#include "mgp/errors.hpp"
#include "mgp/regression.hpp"

namespace mgp {

using nlohmann::json;

namespace {

json vec(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

Eigen::VectorXd to_vec(const json& j) {
  const auto v = j.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

json mat(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) rows.push_back(vec(m.row(r).transpose()));
  return rows;
}

Eigen::MatrixXd to_mat(const json& j, Eigen::Index cols) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(j.size()), cols);
  for (std::size_t r = 0; r < j.size(); ++r) {
    const Eigen::VectorXd row = to_vec(j[r]);
    if (row.size() != cols) throw DataError("model file: ragged input matrix");
    m.row(static_cast<Eigen::Index>(r)) = row.transpose();
  }
  return m;
}

json gig(const GigParams& p) { return {{"omega", p.omega}, {"chi", p.chi}, {"phi", p.phi}}; }

GigParams to_gig(const json& j) {
  return {j.at("omega").get<double>(), j.at("chi").get<double>(), j.at("phi").get<double>()};
}

}  // namespace

json model_to_json(const FittedModel& m, const ModelMeta& meta) {
  const GramSet& g = m.grams;
  json kernels = json::array();
  for (const auto& s : g.specs()) {
    kernels.push_back({{"family", kernel_family_name(s.family)},
                       {"lengthscale", s.lengthscale},
                       {"amplitude", s.amplitude},
                       {"columns", s.columns}});
  }
  json mu = json::array();
  for (const auto& b : m.state.qf.mu_blocks) mu.push_back(vec(b));
  json post = json::array();
  for (const auto& p : m.state.gamma_post) post.push_back(gig(p));
  json updates = json::array();
  for (const auto& u : m.report.updates) {
    updates.push_back({{"kind", update_kind_name(u.kind)}, {"elbo", u.elbo}});
  }

  json j = {
      {"format", "mgp-model"},
      {"version", kModelFormatVersion},
      {"task", task_name(m.task)},
      {"feature_names", meta.feature_names},
      {"target", meta.target},
      {"kernels", kernels},
      {"jitter", g.jitters()},
      {"inputs", mat(g.inputs())},
      {"observed", vec(m.observed)},
      {"hyper",
       {{"preset", preset_name(m.hyper.preset)}, {"prior", gig(m.hyper.prior)}, {"tau", m.hyper.tau}}},
      {"q_gamma",
       {{"mode", m.state.gamma_mode == GammaMode::kFixed ? "fixed" : "variational"},
        {"posterior", post},
        {"mean", vec(m.state.gamma_mean)},
        {"mean_inv", vec(m.state.gamma_mean_inv)},
        {"mean_log", vec(m.state.gamma_mean_log)}}},
      {"q_f",
       {{"targets", vec(m.state.qf.targets)},
        {"gamma_mean", vec(m.state.qf.gamma_mean)},
        {"tau", m.state.qf.tau},
        {"mu_blocks", mu}}},
      {"elbo", m.state.elbo},
      {"report",
       {{"elbo_trace", m.report.elbo_trace},
        {"updates", updates},
        {"iterations", m.report.iterations},
        {"converged", m.report.converged},
        {"tau_clamped", m.report.tau_clamped},
        {"warnings", m.report.warnings}}},
  };
  if (m.task == Task::kBinaryClassification) {
    j["q_y"] = {{"nu", vec(m.q_y.nu)},
                {"lambda", m.q_y.lambda},
                {"post_mean", vec(m.q_y.post_mean)},
                {"post_var", vec(m.q_y.post_var)},
                {"log_mass", vec(m.q_y.log_mass)}};
  }
  return j;
}

LoadedModel model_from_json(const json& j) {
  LoadedModel out;
  try {
    if (j.at("format") != "mgp-model") throw DataError("not an mgp model file");
    const int version = j.at("version").get<int>();
    if (version != kModelFormatVersion) {
      throw DataError("model format version " + std::to_string(version) + " is not supported");
    }
    FittedModel& m = out.model;
    m.task = parse_task(j.at("task").get<std::string>());
    out.meta.feature_names = j.at("feature_names").get<std::vector<std::string>>();
    out.meta.target = j.at("target").get<std::string>();

    std::vector<KernelSpec> specs;
    for (const auto& k : j.at("kernels")) {
      specs.push_back({parse_kernel_family(k.at("family").get<std::string>()),
                       k.at("lengthscale").get<double>(), k.at("amplitude").get<double>(),
                       k.at("columns").get<std::vector<int>>()});
    }
    const auto jitter = j.at("jitter").get<std::vector<double>>();
    const Eigen::Index cols = static_cast<Eigen::Index>(out.meta.feature_names.size());
    const Eigen::MatrixXd inputs = to_mat(j.at("inputs"), cols);
    m.grams = restore_gram_set(specs, inputs, jitter);
    m.observed = to_vec(j.at("observed"));

    const json& h = j.at("hyper");
    m.hyper.preset = parse_preset(h.at("preset").get<std::string>());
    m.hyper.prior = to_gig(h.at("prior"));
    m.hyper.tau = h.at("tau").get<double>();

    const json& qg = j.at("q_gamma");
    VariationalState& s = m.state;
    s.gamma_mode = qg.at("mode") == "fixed" ? GammaMode::kFixed : GammaMode::kVariational;
    for (const auto& p : qg.at("posterior")) s.gamma_post.push_back(to_gig(p));
    s.gamma_mean = to_vec(qg.at("mean"));
    s.gamma_mean_inv = to_vec(qg.at("mean_inv"));
    s.gamma_mean_log = to_vec(qg.at("mean_log"));
    s.elbo = j.at("elbo").get<double>();

    const json& qf = j.at("q_f");
    // q(f) is rebuilt from the <gamma> it was last computed with.
    const Eigen::VectorXd current_gamma = s.gamma_mean;
    s.gamma_mean = to_vec(qf.at("gamma_mean"));
    update_q_f(s, m.grams, to_vec(qf.at("targets")), qf.at("tau").get<double>());
    s.gamma_mean = current_gamma;

    const json& r = j.at("report");
    m.report.elbo_trace = r.at("elbo_trace").get<std::vector<double>>();
    m.report.iterations = r.at("iterations").get<int>();
    m.report.converged = r.at("converged").get<bool>();
    m.report.tau_clamped = r.at("tau_clamped").get<bool>();
    m.report.warnings = r.at("warnings").get<std::vector<std::string>>();

    if (m.task == Task::kBinaryClassification && j.contains("q_y")) {
      const json& q = j.at("q_y");
      m.q_y.nu = to_vec(q.at("nu"));
      m.q_y.lambda = q.at("lambda").get<double>();
      m.q_y.post_mean = to_vec(q.at("post_mean"));
      m.q_y.post_var = to_vec(q.at("post_var"));
      m.q_y.log_mass = to_vec(q.at("log_mass"));
    }
  } catch (const json::exception& e) {
    throw DataError(std::string("model file: ") + e.what());
  } catch (const ConfigError& e) {
    throw DataError(std::string("model file: ") + e.what());
  }
  return out;
}

void save_model(const std::string& path, const FittedModel& model, const ModelMeta& meta) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path);
  out << model_to_json(model, meta).dump(1) << '\n';
}

LoadedModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw DataError(path + ": " + e.what());
  }
  return model_from_json(j);
}

json fit_report_json(const FittedModel& m) {
  const LearnableMask mask = learnable(m.hyper.preset);
  json pinned = json::object();
  if (!mask.omega) pinned["omega"] = m.hyper.prior.omega;
  if (!mask.chi) pinned["chi"] = m.hyper.prior.chi;
  if (!mask.phi) pinned["phi"] = m.hyper.prior.phi;
  return {{"task", task_name(m.task)},
          {"preset", preset_name(m.hyper.preset)},
          {"iterations", m.report.iterations},
          {"converged", m.report.converged},
          {"elbo", m.state.elbo},
          {"elbo_trace", m.report.elbo_trace},
          {"hyper",
           {{"omega", m.hyper.prior.omega},
            {"chi", m.hyper.prior.chi},
            {"phi", m.hyper.prior.phi},
            {"tau", m.hyper.tau}}},
          {"pinned", pinned},
          {"gamma_mean", vec(m.state.gamma_mean)},
          {"weights", vec(m.normalized_weights())},
          {"tau_clamped", m.report.tau_clamped},
          {"warnings", m.report.warnings}};
}

}  // namespace mgp
