#pragma once

#include "zflim/analysis.hpp"
#include "zflim/continuous.hpp"
#include "zflim/duality_lp.hpp"
#include "zflim/error.hpp"
#include "zflim/legacy.hpp"
#include "zflim/lti.hpp"
#include "zflim/multiplier.hpp"
#include "zflim/parallel.hpp"
#include "zflim/phase_limits.hpp"
#include "zflim/plant_io.hpp"
#include "zflim/rational.hpp"
#include "zflim/simplex.hpp"
#include "zflim/tight.hpp"
#include "zflim/zf_search.hpp"
