#pragma once

#include "filmlab/assembly.hpp"
#include "filmlab/domain.hpp"
#include "filmlab/exact1d.hpp"
#include "filmlab/experiment.hpp"
#include "filmlab/mesh.hpp"
#include "filmlab/numerics.hpp"
#include "filmlab/solver.hpp"
#include "filmlab/thickness.hpp"
#include "filmlab/verify.hpp"
