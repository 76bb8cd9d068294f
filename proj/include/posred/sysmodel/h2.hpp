#pragma once

#include "posred/sysmodel/state_space.hpp"

namespace posred::sysmodel {

struct H2Options {
  /// Largest full order for which the n x n Gramian is formed.
  Index gramian_size_cap = 5000;
};

/// ||G||^2 = tr(C P C^T), P the controllability Gramian of the full model.
/// Throws SizeCapError above the cap.
double h2_norm_squared(const StateSpaceModel& model, const H2Options& options = {});

/// The reduced-model dependent part of the squared H2 error,
///   f = 1/2 tr(C_r P_r C_r^T - 2 C_r X^T C^T),
/// so that ||G - G_r||^2 = 2 f + ||G||^2. Needs no full-order Gramian.
double h2_cross_objective(const StateSpaceModel& full, const StateSpaceModel& reduced);

/// ||G - G_r||^2 = 2 f + ||G||^2. Tiny negative round-off (down to
/// -1e-8 ||G||^2) is clamped to zero.
double h2_error_squared(const StateSpaceModel& full, const StateSpaceModel& reduced,
                        const H2Options& options = {});

/// Same, reusing a previously computed ||G||^2.
double h2_error_squared(const StateSpaceModel& full, const StateSpaceModel& reduced,
                        double full_norm_squared);

}  // namespace posred::sysmodel
