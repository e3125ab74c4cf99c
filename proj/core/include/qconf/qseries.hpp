#pragma once

#include "qconf/qseries/log_poly.hpp"
#include "qconf/qseries/qpoly.hpp"
#include "qconf/qseries/trunc_series.hpp"
