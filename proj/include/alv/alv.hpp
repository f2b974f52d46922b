#pragma once

#include "alv/actuators.hpp"
#include "alv/coefficients.hpp"
#include "alv/controller_csm.hpp"
#include "alv/controller_dsm.hpp"
#include "alv/csv.hpp"
#include "alv/disturbance.hpp"
#include "alv/errors.hpp"
#include "alv/plant.hpp"
#include "alv/polynomial.hpp"
#include "alv/reference.hpp"
#include "alv/rk4.hpp"
#include "alv/scenario_file.hpp"
#include "alv/simulation.hpp"
#include "alv/transfer_function.hpp"
