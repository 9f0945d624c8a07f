#pragma once

// Convenience header: the whole library.

#include "polariton/config.hpp"
#include "polariton/diagnostics.hpp"
#include "polariton/error.hpp"
#include "polariton/export.hpp"
#include "polariton/grid.hpp"
#include "polariton/init.hpp"
#include "polariton/model.hpp"
#include "polariton/pump.hpp"
#include "polariton/rk4.hpp"
#include "polariton/snapshot.hpp"
#include "polariton/state.hpp"
