#ifndef CABINCO2_CABINCO2_HPP
#define CABINCO2_CABINCO2_HPP

#include "cabinco2/units.hpp"
#include "cabinco2/types.hpp"
#include "cabinco2/format.hpp"
#include "cabinco2/csv.hpp"
#include "cabinco2/config.hpp"
#include "cabinco2/constants.hpp"
#include "cabinco2/ingest.hpp"
#include "cabinco2/regression.hpp"
#include "cabinco2/cabin.hpp"
#include "cabinco2/emissions.hpp"
#include "cabinco2/finance.hpp"
#include "cabinco2/study.hpp"
#include "cabinco2/report.hpp"
#include "cabinco2/reconcile.hpp"

#endif  // CABINCO2_CABINCO2_HPP
