#pragma once

#include "dirac_core.hpp"
#include "dirac_matrices.hpp"
#include "dirac_numeric.hpp"
#include "dirac_params.hpp"
#include "errors.hpp"
#include "frequency.hpp"
#include "ion_emulator.hpp"
#include "linalg.hpp"
#include "time_series.hpp"
#include "units.hpp"
