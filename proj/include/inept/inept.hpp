#pragma once

#include "inept/delivery_sim.hpp"
#include "inept/entanglement.hpp"
#include "inept/errors.hpp"
#include "inept/inept_map.hpp"
#include "inept/nonlocality.hpp"
#include "inept/optimize.hpp"
#include "inept/qlinalg.hpp"
#include "inept/states.hpp"
#include "inept/version.hpp"
