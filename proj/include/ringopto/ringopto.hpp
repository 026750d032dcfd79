#pragma once

// Steady-state entanglement of a ring-cavity atom-optomechanical system.

#include "ringopto/errors.hpp"
#include "ringopto/params.hpp"
#include "ringopto/model.hpp"
#include "ringopto/linalg.hpp"
#include "ringopto/entanglement.hpp"
#include "ringopto/sweep.hpp"
#include "ringopto/config.hpp"
