// spinbath.hpp - Umbrella header.

#pragma once

#include "spinbath/chsh.hpp"
#include "spinbath/decoherence.hpp"
#include "spinbath/density.hpp"
#include "spinbath/entanglement.hpp"
#include "spinbath/envelope.hpp"
#include "spinbath/oracle.hpp"
#include "spinbath/sampling.hpp"
#include "spinbath/sweep.hpp"
#include "spinbath/types.hpp"
