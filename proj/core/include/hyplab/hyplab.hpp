#pragma once

#include "hyplab/bounds_lab.hpp"
#include "hyplab/complex_core.hpp"
#include "hyplab/degeneration.hpp"
#include "hyplab/errors.hpp"
#include "hyplab/hyperbolic_gamma.hpp"
#include "hyplab/integrals.hpp"
#include "hyplab/parallel.hpp"
#include "hyplab/quadrature.hpp"
