#pragma once

#include "tula/analysis.hpp"
#include "tula/dynamics.hpp"
#include "tula/errors.hpp"
#include "tula/io.hpp"
#include "tula/quadrature.hpp"
#include "tula/sampler.hpp"
#include "tula/targets.hpp"
#include "tula/transform.hpp"
