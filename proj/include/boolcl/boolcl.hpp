#pragma once

#include "boolcl/boolean.hpp"
#include "boolcl/errors.hpp"
#include "boolcl/experiments.hpp"
#include "boolcl/inversion.hpp"
#include "boolcl/io.hpp"
#include "boolcl/measure.hpp"
#include "boolcl/polynomial.hpp"
#include "boolcl/rational.hpp"
#include "boolcl/rational_fn.hpp"
#include "boolcl/roots.hpp"
#include "boolcl/transform.hpp"
