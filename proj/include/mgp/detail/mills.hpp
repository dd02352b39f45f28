#pragma once

namespace mgp::detail {

// Tail of the Mills-ratio continued fraction,
//   k / (x + (k+1) / (x + (k+2) / (x + ...))),  x > 0.
// With k = 1 this is hazard(-x) - x.
double mills_tail(double x, int k);

}  // namespace mgp::detail
