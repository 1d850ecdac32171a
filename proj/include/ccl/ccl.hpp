#pragma once

#include "ccl/analysis.hpp"
#include "ccl/bisect.hpp"
#include "ccl/cone.hpp"
#include "ccl/errors.hpp"
#include "ccl/kelvin.hpp"
#include "ccl/matrix.hpp"
#include "ccl/radial.hpp"
#include "ccl/schouten.hpp"
#include "ccl/sigma.hpp"
