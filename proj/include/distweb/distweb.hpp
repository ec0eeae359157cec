#pragma once

#include "distweb/convex.hpp"
#include "distweb/distance.hpp"
#include "distweb/domain.hpp"
#include "distweb/errors.hpp"
#include "distweb/estimate.hpp"
#include "distweb/expr.hpp"
#include "distweb/io.hpp"
#include "distweb/medial.hpp"
#include "distweb/profile.hpp"
#include "distweb/solver.hpp"
#include "distweb/vec2.hpp"
