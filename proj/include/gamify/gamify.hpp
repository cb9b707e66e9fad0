#pragma once

#include "gamify/commands.hpp"
#include "gamify/config.hpp"
#include "gamify/csv.hpp"
#include "gamify/error.hpp"
#include "gamify/models.hpp"
#include "gamify/regression.hpp"
#include "gamify/rng.hpp"
#include "gamify/simulator.hpp"
