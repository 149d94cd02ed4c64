#pragma once

#include "errors.hpp"
#include "special.hpp"
#include "taylor.hpp"
#include "quadrature.hpp"
#include "proximate_order.hpp"
#include "measure.hpp"
#include "limit_set.hpp"
#include "kernel.hpp"
#include "mellin.hpp"
#include "tauberian.hpp"
#include "report.hpp"
#include "config.hpp"
#include "builtins.hpp"
