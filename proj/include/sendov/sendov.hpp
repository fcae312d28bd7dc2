#pragma once

#include "sendov/errors.hpp"
#include "sendov/inextensibility.hpp"
#include "sendov/jet.hpp"
#include "sendov/maximal.hpp"
#include "sendov/metrics.hpp"
#include "sendov/parallel.hpp"
#include "sendov/poly.hpp"
#include "sendov/simplex.hpp"
#include "sendov/tolerances.hpp"
#include "sendov/variation.hpp"
