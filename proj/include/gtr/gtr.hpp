#pragma once

#include "gtr/bloch.hpp"
#include "gtr/datasets.hpp"
#include "gtr/distributions.hpp"
#include "gtr/errors.hpp"
#include "gtr/hilbert.hpp"
#include "gtr/inversion.hpp"
#include "gtr/model.hpp"
#include "gtr/montecarlo.hpp"
#include "gtr/qubit.hpp"
#include "gtr/replicability.hpp"
#include "gtr/rng.hpp"
#include "gtr/unpacking.hpp"
