#ifndef ORBITOOL_ORBITOOL_HPP
#define ORBITOOL_ORBITOOL_HPP

#include "orbitool/cone.hpp"
#include "orbitool/fan.hpp"
#include "orbitool/geometry.hpp"
#include "orbitool/group.hpp"
#include "orbitool/io.hpp"
#include "orbitool/linalg.hpp"
#include "orbitool/numeric.hpp"
#include "orbitool/resolutions.hpp"
#include "orbitool/staircase.hpp"

#endif
