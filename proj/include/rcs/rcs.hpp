#pragma once

#include "rcs/circuit.hpp"
#include "rcs/circuit_text.hpp"
#include "rcs/errors.hpp"
#include "rcs/generate.hpp"
#include "rcs/noise.hpp"
#include "rcs/rng.hpp"
#include "rcs/simulate.hpp"
#include "rcs/spoof.hpp"
#include "rcs/statevector.hpp"
#include "rcs/xeb.hpp"
