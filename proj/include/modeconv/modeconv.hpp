#pragma once

// Electromechanical temporal/spectral mode converter: coupling-schedule
// synthesis, capture-store-release dynamics, and the measurement chain
// (Wigner-Ville analysis, matched-filter quadratures, receiver calibration).

#include "modeconv/constants.hpp"
#include "modeconv/grid.hpp"
#include "modeconv/envelope.hpp"
#include "modeconv/device.hpp"
#include "modeconv/fft.hpp"
#include "modeconv/rng.hpp"
#include "modeconv/schedule.hpp"
#include "modeconv/dynamics.hpp"
#include "modeconv/tf_analysis.hpp"
#include "modeconv/receiver.hpp"
#include "modeconv/tuning.hpp"
#include "modeconv/config.hpp"
#include "modeconv/csv.hpp"
