#pragma once

#include "errors.hpp"
#include "arith.hpp"
#include "tower.hpp"
#include "sets.hpp"
#include "value.hpp"
#include "maps.hpp"
#include "integrate.hpp"
#include "global.hpp"
#include "text.hpp"
