#pragma once

#include "qconf/scalars/bigfloat.hpp"
#include "qconf/scalars/complex_ap.hpp"
#include "qconf/scalars/field.hpp"
#include "qconf/scalars/polynomial.hpp"
#include "qconf/scalars/ratfunc.hpp"
#include "qconf/scalars/rational.hpp"
