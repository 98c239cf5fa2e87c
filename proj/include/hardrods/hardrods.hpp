#pragma once

// Umbrella header for the hard-rod parking-fluid library.

#include "hardrods/bigrational.hpp"
#include "hardrods/ensembles.hpp"
#include "hardrods/eos.hpp"
#include "hardrods/extfloat.hpp"
#include "hardrods/grid.hpp"
#include "hardrods/io.hpp"
#include "hardrods/irwin_hall.hpp"
#include "hardrods/paircorr.hpp"
#include "hardrods/rng.hpp"
#include "hardrods/spectral.hpp"
#include "hardrods/version.hpp"
