#pragma once

#include <string>

#include "posred/sysmodel/state_space.hpp"

namespace posred::sysmodel {

// A model directory holds A.mtx, B.mtx, C.mtx and manifest.json
// ({"n", "m", "p", "storage"}). Sparse models are written in coordinate
// form, dense ones in array form.

void save_model(const std::string& dir, const StateSpaceModel& model);
StateSpaceModel load_model(const std::string& dir);

}  // namespace posred::sysmodel
