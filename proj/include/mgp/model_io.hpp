#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "mgp/model.hpp"

namespace mgp {

inline constexpr int kModelFormatVersion = 1;

// Column names the model was trained on, kept alongside it so query files
// can be matched by name.
struct ModelMeta {
  std::vector<std::string> feature_names;
  std::string target = "y";
};

struct LoadedModel {
  FittedModel model;
  ModelMeta meta;
};

// Versioned JSON document: task tag, kernel specs, per-kernel jitter,
// training inputs and targets, hyperparameters, q(gamma), tau, the q(f)
// mean blocks and the ELBO trace. Doubles are written in shortest
// round-trip form, so loading rebuilds q(f) bit for bit.
nlohmann::json model_to_json(const FittedModel& model, const ModelMeta& meta);
LoadedModel model_from_json(const nlohmann::json& j);

void save_model(const std::string& path, const FittedModel& model, const ModelMeta& meta);
LoadedModel load_model(const std::string& path);

// Fit summary: ELBO trace, final hyperparameters, normalized weights,
// pinned parameters and warnings.
nlohmann::json fit_report_json(const FittedModel& model);

}  // namespace mgp
