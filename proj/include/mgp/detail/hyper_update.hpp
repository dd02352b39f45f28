#pragma once

#include <functional>

#include "mgp/model.hpp"

namespace mgp::detail {

// One round of ML-II updates on the learnable prior parameters (omega, chi,
// phi in that order); each accepted solve is followed by `after(kind)`.
void update_hypers(Hyperparams& hyper, const VariationalState& state, FitReport& report,
                   const std::function<void(UpdateKind)>& after);

}  // namespace mgp::detail
