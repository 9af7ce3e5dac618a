#pragma once

#include "bfstat/canonical.hpp"
#include "bfstat/compound.hpp"
#include "bfstat/duality.hpp"
#include "bfstat/errors.hpp"
#include "bfstat/even_spaced.hpp"
#include "bfstat/exact.hpp"
#include "bfstat/grand_canonical.hpp"
#include "bfstat/json_io.hpp"
#include "bfstat/microcanonical.hpp"
#include "bfstat/oracle.hpp"
#include "bfstat/qseries.hpp"
#include "bfstat/spectrum.hpp"
