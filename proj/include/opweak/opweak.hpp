#pragma once

// Umbrella header: the full verification library.

#include "opweak/absdiff.hpp"
#include "opweak/commutator.hpp"
#include "opweak/constants.hpp"
#include "opweak/davies.hpp"
#include "opweak/eig.hpp"
#include "opweak/harness.hpp"
#include "opweak/io.hpp"
#include "opweak/matrix.hpp"
#include "opweak/norms.hpp"
#include "opweak/report.hpp"
#include "opweak/rng.hpp"
#include "opweak/schur.hpp"
#include "opweak/weaktrunc.hpp"
