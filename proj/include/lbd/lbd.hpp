#pragma once

// Umbrella header.

#include "lbd/birth_death.hpp"
#include "lbd/config.hpp"
#include "lbd/csv.hpp"
#include "lbd/diagnostics.hpp"
#include "lbd/errors.hpp"
#include "lbd/experiments.hpp"
#include "lbd/families.hpp"
#include "lbd/fisher.hpp"
#include "lbd/langevin.hpp"
#include "lbd/math.hpp"
#include "lbd/parallel.hpp"
#include "lbd/particle_tracker.hpp"
#include "lbd/reparam.hpp"
#include "lbd/rng.hpp"
#include "lbd/sampler.hpp"
#include "lbd/support_space.hpp"
#include "lbd/targets.hpp"
