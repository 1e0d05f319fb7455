#pragma once

#include "bench.hpp"
#include "bounds.hpp"
#include "cover.hpp"
#include "exact.hpp"
#include "generators.hpp"
#include "geometry.hpp"
#include "io.hpp"
#include "sampler.hpp"
