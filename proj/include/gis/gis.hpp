#pragma once

#include "constructions.hpp"
#include "counting.hpp"
#include "dualpolar.hpp"
#include "error.hpp"
#include "exact_cover.hpp"
#include "field.hpp"
#include "geometry.hpp"
#include "grassmann.hpp"
#include "intriguing.hpp"
#include "io.hpp"
#include "parallel.hpp"
#include "plane_set.hpp"
#include "selftest.hpp"
#include "subspace.hpp"
#include "symplectic_group.hpp"
