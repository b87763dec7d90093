#pragma once

#include "lwlab/bodies.hpp"
#include "lwlab/centroid.hpp"
#include "lwlab/frame_search.hpp"
#include "lwlab/hull.hpp"
#include "lwlab/lambda.hpp"
#include "lwlab/moments.hpp"
#include "lwlab/parallel.hpp"
#include "lwlab/planar_exact.hpp"
#include "lwlab/polytope.hpp"
#include "lwlab/projection_body.hpp"
#include "lwlab/quadrature.hpp"
#include "lwlab/random.hpp"
#include "lwlab/report.hpp"
#include "lwlab/sampling.hpp"
#include "lwlab/section.hpp"
#include "lwlab/suites.hpp"
#include "lwlab/types.hpp"
