#pragma once

#include "cosetsum/errors.hpp"
#include "cosetsum/dyadic.hpp"
#include "cosetsum/scalar.hpp"
#include "cosetsum/mask.hpp"
#include "cosetsum/constructors.hpp"
#include "cosetsum/catalog.hpp"
#include "cosetsum/analysis.hpp"
#include "cosetsum/wavelet_system.hpp"
#include "cosetsum/grid.hpp"
#include "cosetsum/transform.hpp"
#include "cosetsum/json_io.hpp"
#include "cosetsum/pyramid_io.hpp"
