#include "mgp/config.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <string_view>

#include "mgp/errors.hpp"

namespace mgp {

using nlohmann::json;

namespace {

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path + ": expected an object");
}

void check_keys(const json& j, const std::string& path,
                std::initializer_list<std::string_view> allowed) {
  require_object(j, path);
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError(path + ": unknown key '" + key + "'");
    }
  }
}

template <typename T>
T get(const json& j, const std::string& key, const std::string& path, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(path + "." + key + ": wrong type");
  }
}

double get_number(const json& j, const std::string& key, const std::string& path,
                  double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) throw ConfigError(path + "." + key + ": expected a number");
  return j.at(key).get<double>();
}

int get_int(const json& j, const std::string& key, const std::string& path, int fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number_integer()) {
    throw ConfigError(path + "." + key + ": expected an integer");
  }
  return j.at(key).get<int>();
}

std::uint64_t get_seed(const json& j, const std::string& key, const std::string& path,
                       std::uint64_t fallback) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return v.get<std::uint64_t>();
  throw ConfigError(path + "." + key + ": expected a non-negative integer");
}

template <typename Fn>
auto rethrow_as_config(const std::string& path, Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  } catch (const DomainError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

KernelConfig kernel_from_json(const json& j, const std::string& path) {
  check_keys(j, path, {"family", "lengthscale", "amplitude", "columns"});
  KernelConfig k;
  if (!j.contains("family")) throw ConfigError(path + ": missing 'family'");
  const std::string family = get<std::string>(j, "family", path, "");
  k.family = rethrow_as_config(path + ".family", [&] { return parse_kernel_family(family); });
  k.lengthscale = get_number(j, "lengthscale", path, k.lengthscale);
  k.amplitude = get_number(j, "amplitude", path, k.amplitude);
  k.columns = get<std::vector<std::string>>(j, "columns", path, {});
  if (!(k.lengthscale > 0.0)) throw ConfigError(path + ".lengthscale: must be positive");
  if (!(k.amplitude > 0.0)) throw ConfigError(path + ".amplitude: must be positive");
  return k;
}

json to_json(const KernelConfig& k) {
  json j = {{"family", kernel_family_name(k.family)},
            {"lengthscale", k.lengthscale},
            {"amplitude", k.amplitude}};
  if (!k.columns.empty()) j["columns"] = k.columns;
  return j;
}

std::vector<int> active_from_json(const json& j, const std::string& path) {
  std::vector<int> active;
  if (!j.is_array()) throw ConfigError(path + ": expected an array of kernel numbers");
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw ConfigError(path + ": kernel numbers must be integers");
    active.push_back(v.get<int>() - 1);
  }
  return active;
}

}  // namespace

FitConfig fit_config_from_json(const json& j, const std::string& path, FitConfig base) {
  check_keys(j, path,
             {"tol", "max_iters", "hyper_stride", "learn_tau", "learn_gamma", "tau_max",
              "jitter_start", "jitter_cap"});
  FitConfig c = base;
  c.tol = get_number(j, "tol", path, c.tol);
  c.max_iters = get_int(j, "max_iters", path, c.max_iters);
  c.hyper_stride = get_int(j, "hyper_stride", path, c.hyper_stride);
  c.learn_tau = get<bool>(j, "learn_tau", path, c.learn_tau);
  c.learn_gamma = get<bool>(j, "learn_gamma", path, c.learn_gamma);
  c.tau_max = get_number(j, "tau_max", path, c.tau_max);
  c.jitter.start = get_number(j, "jitter_start", path, c.jitter.start);
  c.jitter.cap = get_number(j, "jitter_cap", path, c.jitter.cap);
  if (!(c.tol > 0.0)) throw ConfigError(path + ".tol: must be positive");
  if (c.max_iters < 0) throw ConfigError(path + ".max_iters: must be >= 0");
  if (c.hyper_stride < 0) throw ConfigError(path + ".hyper_stride: must be >= 0");
  if (!(c.tau_max > 0.0)) throw ConfigError(path + ".tau_max: must be positive");
  if (!(c.jitter.start >= 0.0) || !(c.jitter.cap > 0.0) || c.jitter.start > c.jitter.cap) {
    throw ConfigError(path + ": need 0 <= jitter_start <= jitter_cap");
  }
  return c;
}

json to_json(const FitConfig& c) {
  return {{"tol", c.tol},
          {"max_iters", c.max_iters},
          {"hyper_stride", c.hyper_stride},
          {"learn_tau", c.learn_tau},
          {"learn_gamma", c.learn_gamma},
          {"tau_max", c.tau_max},
          {"jitter_start", c.jitter.start},
          {"jitter_cap", c.jitter.cap}};
}

RunConfig run_config_from_json(const json& j) {
  const std::string path = "config";
  check_keys(j, path, {"task", "kernels", "preset", "hyper", "solver", "target", "features", "seed"});
  RunConfig c;
  const std::string task = get<std::string>(j, "task", path, "regression");
  c.task = rethrow_as_config(path + ".task", [&] { return parse_task(task); });

  if (!j.contains("kernels") || !j.at("kernels").is_array() || j.at("kernels").empty()) {
    throw ConfigError(path + ".kernels: expected a non-empty array");
  }
  for (std::size_t i = 0; i < j.at("kernels").size(); ++i) {
    c.kernels.push_back(
        kernel_from_json(j.at("kernels")[i], path + ".kernels[" + std::to_string(i) + "]"));
  }

  const std::string preset = get<std::string>(j, "preset", path, "free");
  c.preset = rethrow_as_config(path + ".preset", [&] { return parse_preset(preset); });
  c.prior = default_prior(c.preset);
  if (j.contains("hyper")) {
    const json& h = j.at("hyper");
    const std::string hp = path + ".hyper";
    check_keys(h, hp, {"omega", "chi", "phi", "tau"});
    c.prior.omega = get_number(h, "omega", hp, c.prior.omega);
    c.prior.chi = get_number(h, "chi", hp, c.prior.chi);
    c.prior.phi = get_number(h, "phi", hp, c.prior.phi);
    c.tau = get_number(h, "tau", hp, c.tau);
  }
  rethrow_as_config(path + ".hyper", [&] {
    check_preset(c.preset, c.prior);
    return 0;
  });

  FitConfig base;
  base.learn_tau = c.task == Task::kRegression;
  c.fit = j.contains("solver") ? fit_config_from_json(j.at("solver"), path + ".solver", base)
                               : base;
  c.target = get<std::string>(j, "target", path, c.target);
  c.features = get<std::vector<std::string>>(j, "features", path, {});
  c.seed = get_seed(j, "seed", path, 0);
  return c;
}

json to_json(const RunConfig& c) {
  json kernels = json::array();
  for (const auto& k : c.kernels) kernels.push_back(to_json(k));
  json j = {{"task", task_name(c.task)},
            {"kernels", kernels},
            {"preset", preset_name(c.preset)},
            {"hyper",
             {{"omega", c.prior.omega}, {"chi", c.prior.chi}, {"phi", c.prior.phi}, {"tau", c.tau}}},
            {"solver", to_json(c.fit)},
            {"target", c.target},
            {"seed", c.seed}};
  if (!c.features.empty()) j["features"] = c.features;
  return j;
}

ToyConfig toy_config_from_json(const json& j) {
  const std::string path = "toy";
  check_keys(j, path,
             {"n_train", "n_test", "n_kernels", "active", "regime", "lengthscales", "noise_std",
              "input_layout", "unit_variance_kernels", "seed"});
  ToyConfig c;
  c.n_train = get_int(j, "n_train", path, c.n_train);
  c.n_test = get_int(j, "n_test", path, c.n_test);
  c.n_kernels = get_int(j, "n_kernels", path, c.n_kernels);
  if (j.contains("active") && j.contains("regime")) {
    throw ConfigError(path + ": give either 'active' or 'regime', not both");
  }
  if (j.contains("active")) c.active = active_from_json(j.at("active"), path + ".active");
  if (j.contains("regime")) {
    const std::string r = get<std::string>(j, "regime", path, "");
    c.active = rethrow_as_config(path + ".regime",
                                 [&] { return regime_active(parse_regime(r), c.n_kernels); });
  }
  c.lengthscales = get<std::vector<double>>(j, "lengthscales", path, {});
  c.noise_std = get_number(j, "noise_std", path, c.noise_std);
  if (j.contains("input_layout")) {
    const std::string l = get<std::string>(j, "input_layout", path, "");
    c.layout = rethrow_as_config(path + ".input_layout", [&] { return parse_input_layout(l); });
  }
  c.unit_variance_kernels =
      get<bool>(j, "unit_variance_kernels", path, c.unit_variance_kernels);
  c.seed = get_seed(j, "seed", path, 0);
  rethrow_as_config(path, [&] {
    validate_toy(c);
    return 0;
  });
  return c;
}

json to_json(const ToyConfig& c) {
  json active = json::array();
  for (int a : c.active) active.push_back(a + 1);
  json j = {{"n_train", c.n_train},     {"n_test", c.n_test}, {"n_kernels", c.n_kernels},
            {"active", active},         {"noise_std", c.noise_std},
            {"input_layout", input_layout_name(c.layout)},
            {"unit_variance_kernels", c.unit_variance_kernels}, {"seed", c.seed}};
  if (!c.lengthscales.empty()) j["lengthscales"] = c.lengthscales;
  return j;
}

BenchConfig bench_config_from_json(const json& j) {
  const std::string path = "benchmark";
  check_keys(j, path,
             {"regimes", "presets", "realizations", "seed", "threads", "baselines", "toy",
              "solver"});
  BenchConfig c;
  if (j.contains("regimes")) {
    c.regimes.clear();
    for (const auto& r : get<std::vector<std::string>>(j, "regimes", path, {})) {
      c.regimes.push_back(rethrow_as_config(path + ".regimes", [&] { return parse_regime(r); }));
    }
  }
  if (j.contains("presets")) {
    c.presets.clear();
    for (const auto& p : get<std::vector<std::string>>(j, "presets", path, {})) {
      c.presets.push_back(rethrow_as_config(path + ".presets", [&] { return parse_preset(p); }));
    }
  }
  if (c.regimes.empty()) throw ConfigError(path + ".regimes: empty");
  if (c.presets.empty()) throw ConfigError(path + ".presets: empty");
  c.realizations = get_int(j, "realizations", path, c.realizations);
  if (c.realizations <= 0) throw ConfigError(path + ".realizations: must be positive");
  c.seed = get_seed(j, "seed", path, 0);
  c.threads = get_int(j, "threads", path, c.threads);
  if (c.threads < 0) throw ConfigError(path + ".threads: must be >= 0");
  c.baselines = get<bool>(j, "baselines", path, c.baselines);
  if (j.contains("toy")) {
    json toy = j.at("toy");
    require_object(toy, path + ".toy");
    if (toy.contains("active") || toy.contains("regime") || toy.contains("seed")) {
      throw ConfigError(path + ".toy: active set and seed come from the benchmark");
    }
    c.toy = toy_config_from_json(toy);
  }
  if (j.contains("solver")) c.fit = fit_config_from_json(j.at("solver"), path + ".solver");
  return c;
}

json to_json(const BenchConfig& c) {
  json regimes = json::array();
  for (Regime r : c.regimes) regimes.push_back(regime_name(r));
  json presets = json::array();
  for (FamilyPreset p : c.presets) presets.push_back(preset_name(p));
  json toy = to_json(c.toy);
  toy.erase("active");
  toy.erase("seed");
  return {{"regimes", regimes},   {"presets", presets},     {"realizations", c.realizations},
          {"seed", c.seed},       {"threads", c.threads},   {"baselines", c.baselines},
          {"toy", toy},           {"solver", to_json(c.fit)}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

std::vector<KernelSpec> resolve_kernels(const std::vector<KernelConfig>& kernels,
                                        const std::vector<std::string>& feature_names) {
  std::vector<KernelSpec> specs;
  for (std::size_t k = 0; k < kernels.size(); ++k) {
    KernelSpec s{kernels[k].family, kernels[k].lengthscale, kernels[k].amplitude, {}};
    for (const auto& name : kernels[k].columns) {
      const auto it = std::find(feature_names.begin(), feature_names.end(), name);
      if (it == feature_names.end()) {
        throw DataError("kernel " + std::to_string(k + 1) + " reads column '" + name +
                        "', which is not among the feature columns");
      }
      s.columns.push_back(static_cast<int>(it - feature_names.begin()));
    }
    specs.push_back(std::move(s));
  }
  return specs;
}

Hyperparams hyperparams(const RunConfig& c) { return {c.prior, c.tau, c.preset}; }

}  // namespace mgp
