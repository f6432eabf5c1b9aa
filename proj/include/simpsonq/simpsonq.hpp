#pragma once

#include "adaptive_integrate.hpp"
#include "bounds.hpp"
#include "campaign.hpp"
#include "compensated_sum.hpp"
#include "errors.hpp"
#include "functions.hpp"
#include "identity.hpp"
#include "interval.hpp"
#include "kernel.hpp"
#include "polynomial.hpp"
#include "quadrature.hpp"
#include "report_io.hpp"
#include "rng.hpp"
