#pragma once

// Umbrella header: Schoenberg transformations of squared Euclidean distance
// matrices, classical and weighted multidimensional scaling, the geometry of
// the transformed configurations, and a distance-based discriminant.

#include "schoenberg/csv.hpp"
#include "schoenberg/datasets.hpp"
#include "schoenberg/discriminant.hpp"
#include "schoenberg/distance_geometry.hpp"
#include "schoenberg/distributions.hpp"
#include "schoenberg/eigen.hpp"
#include "schoenberg/errors.hpp"
#include "schoenberg/matrix.hpp"
#include "schoenberg/mds.hpp"
#include "schoenberg/random.hpp"
#include "schoenberg/transform.hpp"
