#pragma once

#include "specfun.hpp"
#include "quadrature.hpp"
#include "hankel.hpp"
#include "model.hpp"
#include "analytic.hpp"
#include "rng.hpp"
#include "montecarlo.hpp"
#include "config.hpp"
#include "report.hpp"
