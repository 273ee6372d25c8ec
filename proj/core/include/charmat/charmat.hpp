#pragma once

#include "charmat/boundary.hpp"
#include "charmat/errors.hpp"
#include "charmat/fiber_family.hpp"
#include "charmat/graph_projection.hpp"
#include "charmat/hilbert.hpp"
#include "charmat/sampling.hpp"
#include "charmat/selfadjoint.hpp"
