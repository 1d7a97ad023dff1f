// Umbrella header.
#pragma once

#include "telag/copula_te.hpp"
#include "telag/csv.hpp"
#include "telag/errors.hpp"
#include "telag/estimator_core.hpp"
#include "telag/ingest.hpp"
#include "telag/kdtree.hpp"
#include "telag/lag_scan.hpp"
#include "telag/manifest.hpp"
#include "telag/matrix.hpp"
#include "telag/parallel.hpp"
#include "telag/repro.hpp"
#include "telag/rng.hpp"
#include "telag/simulators.hpp"
#include "telag/special_functions.hpp"
#include "telag/time_series.hpp"
#include "telag/version.hpp"
