#pragma once

#include "nudirac/types.hpp"
#include "nudirac/errors.hpp"
#include "nudirac/polynomial.hpp"
#include "nudirac/specfun.hpp"
#include "nudirac/potential.hpp"
#include "nudirac/nu_core.hpp"
#include "nudirac/equations.hpp"
#include "nudirac/spectrum.hpp"
#include "nudirac/wavefun.hpp"
#include "nudirac/oracle.hpp"
