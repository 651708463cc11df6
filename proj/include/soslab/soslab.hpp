#pragma once

// Umbrella header.

#include "soslab/errors.hpp"
#include "soslab/exact.hpp"
#include "soslab/graphs.hpp"
#include "soslab/json_io.hpp"
#include "soslab/moments.hpp"
#include "soslab/newton.hpp"
#include "soslab/numerics.hpp"
#include "soslab/poly.hpp"
#include "soslab/rational.hpp"
#include "soslab/rng.hpp"
#include "soslab/schemas.hpp"
#include "soslab/sdp.hpp"
#include "soslab/sos.hpp"
#include "soslab/veronese.hpp"
