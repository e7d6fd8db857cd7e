#pragma once

#include "ncap/aggregate.hpp"
#include "ncap/error.hpp"
#include "ncap/feature_matrix.hpp"
#include "ncap/geometry.hpp"
#include "ncap/ingest.hpp"
#include "ncap/level.hpp"
#include "ncap/normalize.hpp"
#include "ncap/ranking.hpp"
