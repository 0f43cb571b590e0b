#pragma once

#include "cspace/error.hpp"
#include "cspace/weights.hpp"
#include "cspace/space.hpp"
#include "cspace/cuboid.hpp"
#include "cspace/core.hpp"
#include "cspace/concept.hpp"
#include "cspace/measure.hpp"
#include "cspace/format.hpp"
#include "cspace/io.hpp"
#include "cspace/cli.hpp"
